// goldmitch: fixed-point Goldschmidt/Mitchell divider front end.
//
// Subcommands: divide, sweep, table1, multsweep, trace. All numeric flags
// accept decimal or 0x-prefixed hexadecimal. The environment variable
// GOLDMITCH_CONFIG may name a file of `key = value` lines (keys are the
// long flag names without the leading dashes); explicit flags win.
//
// Exit codes: 0 success, 1 invalid computation (zero divisor / overflow),
// 2 argument error, 3 assertion-threshold failure.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "goldmitch/cyclesim.hpp"
#include "goldmitch/goldschmidt.hpp"
#include "goldmitch/harness.hpp"

namespace gm = goldmitch;

namespace {

gm::BigInt parse_bigint(const std::string& text) {
  std::string s = text;
  // trim
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty numeric value");
  s = s.substr(b, e - b + 1);
  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  if (i >= s.size()) throw std::invalid_argument("malformed number: " + text);
  gm::BigInt v = 0;
  if (s.size() - i > 2 && s[i] == '0' && (s[i + 1] == 'x' || s[i + 1] == 'X')) {
    for (i += 2; i < s.size(); ++i) {
      const char c = s[i];
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else throw std::invalid_argument("malformed hex number: " + text);
      v = v * 16 + d;
    }
  } else {
    for (; i < s.size(); ++i) {
      const char c = s[i];
      if (c < '0' || c > '9') throw std::invalid_argument("malformed number: " + text);
      v = v * 10 + (c - '0');
    }
  }
  return neg ? gm::BigInt(-v) : v;
}

int parse_int_flag(const std::string& text, const char* what) {
  const gm::BigInt v = parse_bigint(text);
  if (v < 1 || v > 1'000'000) throw std::invalid_argument(std::string(what) + " out of range");
  return static_cast<int>(v);
}

std::uint64_t parse_u64_flag(const std::string& text, const char* what) {
  const gm::BigInt v = parse_bigint(text);
  if (v < 0 || v > gm::BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw std::invalid_argument(std::string(what) + " out of range");
  return v.convert_to<std::uint64_t>();
}

// Non-negative decimal fraction like "0.01" as an exact rational.
gm::Rational parse_fraction(const std::string& text) {
  const auto dot = text.find('.');
  const std::string ip = dot == std::string::npos ? text : text.substr(0, dot);
  const std::string fp = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (ip.empty() && fp.empty()) throw std::invalid_argument("malformed fraction: " + text);
  for (const std::string* part : {&ip, &fp})
    for (char c : *part)
      if (c < '0' || c > '9') throw std::invalid_argument("malformed fraction: " + text);
  gm::Rational v = ip.empty() ? gm::Rational(0) : gm::Rational(gm::BigInt(ip));
  if (!fp.empty())
    v += gm::Rational(gm::BigInt(fp), boost::multiprecision::pow(gm::BigUint(10),
                                                                 static_cast<unsigned>(fp.size())));
  return v;
}

std::map<std::string, std::string> load_env_config() {
  std::map<std::string, std::string> kv;
  const char* path = std::getenv("GOLDMITCH_CONFIG");
  if (!path || !*path) return kv;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(std::string("cannot open config file: ") + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config file line " + std::to_string(lineno) +
                                  ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config file line " + std::to_string(lineno) +
                                  ": empty key or value");
    kv[key] = value;
  }
  return kv;
}

// One config-affecting string flag: explicit flag > config file > default.
struct Layered {
  CLI::Option* opt = nullptr;
  std::string flag_value;

  std::optional<std::string> resolve(const std::map<std::string, std::string>& file,
                                     const std::string& key) const {
    if (opt && opt->count() > 0) return flag_value;
    const auto it = file.find(key);
    if (it != file.end()) return it->second;
    return std::nullopt;
  }
};

struct CfgFlags {
  Layered wd, ws, ext, wq, wf, iters, strat;

  void attach(CLI::App* cmd) {
    wd.opt = cmd->add_option("--width-dividend", wd.flag_value, "Dividend register width (bits)");
    ws.opt = cmd->add_option("--width-divisor", ws.flag_value, "Divisor register width (bits)");
    ext.opt = cmd->add_option("--extension", ext.flag_value,
                              "Internal fraction bits carried by all registers");
    wq.opt = cmd->add_option("--width-quo", wq.flag_value, "Quotient integer width (bits)");
    wf.opt = cmd->add_option("--width-fra", wf.flag_value,
                             "Quotient fraction field width (bits, includes sign position)");
    iters.opt = cmd->add_option("--iterations", iters.flag_value, "Goldschmidt iteration count");
    strat.opt = cmd->add_option("--strategy", strat.flag_value,
                                "exact | mitchell_corrected | mitchell_uncorrected");
  }

  gm::DividerConfig resolve(const std::map<std::string, std::string>& file) const {
    gm::DividerConfig cfg;
    if (auto v = wd.resolve(file, "width-dividend")) cfg.width_dividend = parse_int_flag(*v, "width-dividend");
    if (auto v = ws.resolve(file, "width-divisor")) cfg.width_divisor = parse_int_flag(*v, "width-divisor");
    if (auto v = ext.resolve(file, "extension")) cfg.extension = parse_int_flag(*v, "extension");
    if (auto v = wq.resolve(file, "width-quo")) cfg.width_quo = parse_int_flag(*v, "width-quo");
    if (auto v = wf.resolve(file, "width-fra")) cfg.width_fra = parse_int_flag(*v, "width-fra");
    if (auto v = iters.resolve(file, "iterations")) cfg.iterations = parse_int_flag(*v, "iterations");
    if (auto v = strat.resolve(file, "strategy")) cfg.strategy = gm::strategy_from_string(*v);
    cfg.validate();
    return cfg;
  }
};

struct OutputTarget {
  std::ofstream file;
  std::ostream* os = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    os = &file;
  }
};

std::string percent_string(const gm::Rational& frac) {
  return gm::to_decimal_string(frac * 100, 6) + "%";
}

int run_divide(const std::string& a_text, const std::string& b_text,
               const gm::DividerConfig& cfg, const std::string& out_path) {
  const gm::BigInt a = parse_bigint(a_text);
  const gm::BigInt b = parse_bigint(b_text);
  const gm::SignedInput dividend(a, cfg.width_dividend);
  const gm::SignedInput divisor(b, cfg.width_divisor);
  const gm::SignedQuotient q = gm::divide(dividend, divisor, cfg);
  const gm::Rational exact = gm::exact_quotient(a, b);
  const gm::Rational err = gm::relative_error(q.value(), exact);
  OutputTarget out;
  out.open(out_path);
  std::ostream& os = *out.os;
  std::ostringstream ihex, fhex;
  ihex << std::hex << q.int_part;
  fhex << std::hex << q.frac_part;
  os << "sign:      " << q.sign << "\n"
     << "int_part:  " << q.int_part.str() << " (0x" << ihex.str() << ")\n"
     << "frac_part: " << gm::to_decimal_string(gm::Rational(q.frac_part, gm::BigUint(1) << q.frac_bits))
     << " (raw 0x" << fhex.str() << ", " << q.frac_bits << " bits)\n"
     << "quotient:  " << gm::to_decimal_string(q.value()) << "\n"
     << "exact:     " << gm::to_decimal_string(exact) << "\n"
     << "rel_err:   " << gm::to_decimal_string(err) << " (" << percent_string(err) << ")\n";
  return 0;
}

void print_error_lines(std::ostream& os, const gm::ErrorReport& r) {
  os << "max_err:   " << gm::to_decimal_string(r.max_err) << " (" << percent_string(r.max_err)
     << ")\n"
     << "mean_err:  " << gm::to_decimal_string(r.mean_err) << "\n"
     << "p99_err:   " << gm::to_decimal_string(r.p99_err) << "\n"
     << "worst:     " << r.worst_dividend.str() << " / " << r.worst_divisor.str() << "\n";
}

void print_report_text(std::ostream& os, const gm::ErrorReport& r,
                       std::optional<std::uint64_t> seed, const gm::DividerConfig& cfg) {
  os << "count:     " << r.count << "\n";
  if (seed) os << "seed:      " << *seed << "\n";
  os << "strategy:  " << gm::to_string(cfg.strategy) << "\n";
  print_error_lines(os, r);
}

int run_sweep(std::size_t count, std::uint64_t seed, const gm::DividerConfig& cfg,
              const std::string& format, const std::string& out_path,
              const std::optional<gm::Rational>& assert_max) {
  gm::SweepOptions opts;
  opts.keep_records = format == "csv";
  const gm::ErrorReport report = gm::sweep(cfg, count, seed, opts);
  OutputTarget out;
  out.open(out_path);
  if (format == "json")
    gm::write_json(*out.os, cfg, report, seed);
  else if (format == "csv")
    gm::write_csv(*out.os, report);
  else
    print_report_text(*out.os, report, seed, cfg);
  if (assert_max && report.max_err > *assert_max) {
    std::cerr << "assertion failed: max relative error " << gm::to_decimal_string(report.max_err)
              << " exceeds threshold " << gm::to_decimal_string(*assert_max) << "\n";
    return 3;
  }
  return 0;
}

int run_table1(const gm::DividerConfig& cfg, const std::string& format,
               const std::string& out_path) {
  OutputTarget out;
  out.open(out_path);
  std::ostream& os = *out.os;
  bool all_ok = true;
  const gm::Rational limit(1, 100);
  const std::vector<gm::TestCase> cases = gm::table1_cases();
  std::vector<gm::CaseRecord> rows;
  for (const gm::TestCase& tc : cases) {
    const gm::SignedQuotient q = gm::divide(gm::SignedInput(tc.dividend, cfg.width_dividend),
                                            gm::SignedInput(tc.divisor, cfg.width_divisor), cfg);
    const gm::Rational err = gm::relative_error(q.value(), tc.expected_quotient);
    if (err >= limit) all_ok = false;
    rows.push_back(gm::CaseRecord{tc.dividend, tc.divisor, tc.expected_quotient, q.value(), err});
  }
  if (format == "csv") {
    gm::ErrorReport rep;
    rep.cases = rows;
    gm::write_csv(os, rep);
  } else if (format == "json") {
    os << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << "  {\"dividend\": " << rows[i].dividend.str() << ", \"divisor\": "
         << rows[i].divisor.str() << ", \"exact\": " << gm::to_decimal_string(rows[i].exact)
         << ", \"computed\": " << gm::to_decimal_string(rows[i].computed)
         << ", \"rel_err\": " << gm::to_decimal_string(rows[i].rel_err)
         << ", \"published_rel_err_percent\": " << *cases[i].published_rel_err << "}"
         << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    os << "]\n";
  } else {
    os << std::left << std::setw(12) << "dividend" << std::setw(12) << "divisor"
       << std::setw(16) << "exact" << std::setw(16) << "computed" << std::setw(18)
       << "rel_err" << "reference\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::ostringstream ref;
      ref << std::fixed << std::setprecision(2) << *cases[i].published_rel_err << "%";
      os << std::left << std::setw(12) << rows[i].dividend.str() << std::setw(12)
         << rows[i].divisor.str() << std::setw(16) << gm::to_decimal_string(rows[i].exact, 9)
         << std::setw(16) << gm::to_decimal_string(rows[i].computed, 9) << std::setw(18)
         << percent_string(rows[i].rel_err) << ref.str() << "\n";
    }
  }
  return all_ok ? 0 : 3;
}

int run_multsweep(int width, const std::string& mode, const std::string& format,
                  const std::string& out_path, const std::optional<gm::Rational>& assert_max) {
  const bool keep = format == "csv";
  gm::ErrorReport report;
  if (mode == "uncorrected")
    report = gm::mult_error_sweep(width, gm::MultMode::uncorrected, keep);
  else if (mode == "corrected")
    report = gm::mult_error_sweep(width, gm::MultMode::corrected, keep);
  else if (mode == "direct")
    report = gm::div_error_sweep(width, keep);
  else
    throw std::invalid_argument("multsweep mode must be uncorrected, corrected, or direct");
  const gm::DividerConfig cfg = gm::mult_sweep_config(width);
  OutputTarget out;
  out.open(out_path);
  if (format == "json") {
    gm::write_json(*out.os, cfg, report, std::nullopt);
  } else if (format == "csv") {
    gm::write_csv(*out.os, report);
  } else {
    *out.os << "count:     " << report.count << "\n"
            << "width:     " << width << "\n"
            << "mode:      " << mode << "\n";
    print_error_lines(*out.os, report);
  }
  if (assert_max && report.max_err > *assert_max) {
    std::cerr << "assertion failed: max relative error " << gm::to_decimal_string(report.max_err)
              << " exceeds threshold " << gm::to_decimal_string(*assert_max) << "\n";
    return 3;
  }
  return 0;
}

int run_trace(const std::string& a_text, const std::string& b_text, const gm::DividerConfig& cfg,
              const std::string& out_path) {
  const gm::BigInt a = parse_bigint(a_text);
  const gm::BigInt b = parse_bigint(b_text);
  const gm::CycleResult res = gm::run_cycles(gm::SignedInput(a, cfg.width_dividend),
                                             gm::SignedInput(b, cfg.width_divisor), cfg);
  OutputTarget out;
  out.open(out_path);
  res.trace.to_csv(*out.os);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-width fixed-point Goldschmidt divider with Mitchell "
               "logarithmic multipliers"};
  app.require_subcommand(1);

  std::map<std::string, std::string> filecfg;
  try {
    filecfg = load_env_config();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  auto file_default = [&filecfg](const std::string& key, const std::string& fallback) {
    const auto it = filecfg.find(key);
    return it != filecfg.end() ? it->second : fallback;
  };

  // divide
  CLI::App* divide = app.add_subcommand("divide", "Divide two signed integers");
  std::string div_a, div_b, div_out;
  CfgFlags div_cfg;
  divide->add_option("dividend", div_a, "Signed dividend")->required();
  divide->add_option("divisor", div_b, "Signed divisor")->required();
  div_cfg.attach(divide);
  divide->add_option("--output", div_out, "Write to file instead of stdout");

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "Random-pair error sweep");
  std::string sw_count, sw_seed, sw_fmt, sw_out, sw_assert;
  CLI::Option *sw_count_opt, *sw_seed_opt, *sw_assert_opt;
  CfgFlags sw_cfg;
  sw_count_opt = sweep->add_option("--count", sw_count, "Number of sampled pairs");
  sw_seed_opt = sweep->add_option("--seed", sw_seed, "PRNG seed (splitmix64)");
  sw_cfg.attach(sweep);
  sweep->add_option("--format", sw_fmt, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  sweep->add_option("--output", sw_out, "Write to file instead of stdout");
  sw_assert_opt = sweep->add_option("--assert-max", sw_assert,
                                    "Exit 3 when max relative error exceeds this fraction");

  // table1
  CLI::App* table1 = app.add_subcommand("table1", "Reference 32-bit division examples");
  std::string t1_fmt, t1_out;
  CfgFlags t1_cfg;
  t1_cfg.attach(table1);
  table1->add_option("--format", t1_fmt, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  table1->add_option("--output", t1_out, "Write to file instead of stdout");

  // multsweep
  CLI::App* multsweep =
      app.add_subcommand("multsweep", "Exhaustive approximate-multiplier error sweep");
  std::string ms_width, ms_mode, ms_fmt, ms_out, ms_assert;
  CLI::Option *ms_width_opt, *ms_assert_opt;
  ms_width_opt = multsweep->add_option("--width", ms_width, "Operand width in bits (<= 12)");
  multsweep->add_option("--mode", ms_mode, "uncorrected | corrected | direct")
      ->check(CLI::IsMember({"uncorrected", "corrected", "direct"}));
  multsweep->add_option("--format", ms_fmt, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  multsweep->add_option("--output", ms_out, "Write to file instead of stdout");
  ms_assert_opt = multsweep->add_option("--assert-max", ms_assert,
                                        "Exit 3 when max relative error exceeds this fraction");

  // trace
  CLI::App* trace = app.add_subcommand("trace", "Cycle-accurate trace as CSV");
  std::string tr_a, tr_b, tr_out;
  CfgFlags tr_cfg;
  trace->add_option("dividend", tr_a, "Signed dividend")->required();
  trace->add_option("divisor", tr_b, "Signed divisor")->required();
  tr_cfg.attach(trace);
  trace->add_option("--output", tr_out, "Write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (divide->parsed()) return run_divide(div_a, div_b, div_cfg.resolve(filecfg), div_out);
    if (sweep->parsed()) {
      const std::string count_text =
          sw_count_opt->count() ? sw_count : file_default("count", "10000");
      const std::string seed_text = sw_seed_opt->count() ? sw_seed : file_default("seed", "1");
      const gm::BigInt count_big = parse_bigint(count_text);
      if (count_big < 1 || count_big > 100'000'000)
        throw std::invalid_argument("count out of range");
      std::optional<gm::Rational> assert_max;
      if (sw_assert_opt->count())
        assert_max = parse_fraction(sw_assert);
      else if (filecfg.count("assert-max"))
        assert_max = parse_fraction(filecfg.at("assert-max"));
      return run_sweep(count_big.convert_to<std::size_t>(), parse_u64_flag(seed_text, "seed"),
                       sw_cfg.resolve(filecfg), sw_fmt.empty() ? file_default("format", "text") : sw_fmt,
                       sw_out, assert_max);
    }
    if (table1->parsed())
      return run_table1(t1_cfg.resolve(filecfg),
                        t1_fmt.empty() ? file_default("format", "text") : t1_fmt, t1_out);
    if (multsweep->parsed()) {
      const std::string width_text = ms_width_opt->count() ? ms_width : file_default("width", "8");
      std::optional<gm::Rational> assert_max;
      if (ms_assert_opt->count()) assert_max = parse_fraction(ms_assert);
      return run_multsweep(parse_int_flag(width_text, "width"),
                           ms_mode.empty() ? file_default("mode", "uncorrected") : ms_mode,
                           ms_fmt.empty() ? file_default("format", "text") : ms_fmt, ms_out,
                           assert_max);
    }
    if (trace->parsed()) return run_trace(tr_a, tr_b, tr_cfg.resolve(filecfg), tr_out);
  } catch (const gm::ZeroDivisorError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gm::FxOverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
