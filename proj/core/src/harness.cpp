#include "goldmitch/harness.hpp"

#include <algorithm>
#include <sstream>

#include "goldmitch/goldschmidt.hpp"

namespace goldmitch {

namespace {

BigUint pow2(int n) { return BigUint(1) << n; }

struct Accumulator {
  // Summing exact rationals lets the common denominator grow with every
  // sample (random divisors share few factors), so the mean is accumulated
  // in 128-fraction-bit fixed point instead: floor per sample, which stays
  // deterministic and is far below the 12 digits anything prints.
  static constexpr int kMeanFracBits = 128;

  std::size_t count = 0;
  Rational max_err = 0;
  BigUint sum_scaled = 0;
  BigInt worst_dividend = 0;
  BigInt worst_divisor = 0;
  std::vector<Rational> errs;
  std::vector<CaseRecord> cases;
  bool keep_records = false;

  void add(const BigInt& dividend, const BigInt& divisor, const Rational& exact,
           const Rational& computed) {
    Rational err = relative_error(computed, exact);
    if (count == 0 || err > max_err) {
      max_err = err;
      worst_dividend = dividend;
      worst_divisor = divisor;
    }
    sum_scaled += BigUint(BigUint(numerator(err)) << kMeanFracBits) / BigUint(denominator(err));
    ++count;
    errs.push_back(std::move(err));
    if (keep_records) cases.push_back(CaseRecord{dividend, divisor, exact, computed, errs.back()});
  }

  ErrorReport finish() {
    ErrorReport r;
    r.count = count;
    r.max_err = max_err;
    r.mean_err =
        count ? Rational(sum_scaled, BigUint(BigUint(count) << kMeanFracBits)) : Rational(0);
    if (count) {
      // p99 = smallest error with at least 99% of the samples at or below it.
      std::sort(errs.begin(), errs.end());
      const std::size_t idx = (99 * count + 99) / 100 - 1;  // ceil(0.99 n) - 1
      r.p99_err = errs[std::min(idx, count - 1)];
    }
    r.worst_dividend = worst_dividend;
    r.worst_divisor = worst_divisor;
    r.cases = std::move(cases);
    return r;
  }
};

}  // namespace

BigInt draw_signed(SplitMix64& rng, int width) {
  if (width < 1) throw std::invalid_argument("draw_signed: width must be >= 1");
  BigUint u = 0;
  for (int shift = 0; shift < width; shift += 64) u |= BigUint(rng.next()) << shift;
  u &= pow2(width) - 1;
  BigInt v(u);
  if (u >= pow2(width - 1)) v -= pow2(width);
  return v;
}

Rational exact_quotient(const BigInt& dividend, const BigInt& divisor) {
  if (divisor == 0) throw ZeroDivisorError("exact_quotient: zero divisor");
  // The component constructor wants a positive denominator.
  return divisor < 0 ? Rational(-dividend, -divisor) : Rational(dividend, divisor);
}

Rational relative_error(const Rational& approx, const Rational& exact) {
  if (exact == 0) return abs(approx);
  return abs(approx - exact) / abs(exact);
}

std::vector<TestCase> table1_cases() {
  auto mk = [](long long a, long long b, double computed, double err) {
    return TestCase{BigInt(a), BigInt(b), exact_quotient(BigInt(a), BigInt(b)), computed, err};
  };
  return {
      mk(-17, 35, -0.4868, 0.22),
      mk(53, 11, 4.8253, 0.14),
      mk(345, 4252, 0.0812, 0.10),
      mk(2741, 67, 40.9342, 0.05),
      mk(34242, 5567, 6.1759, 0.40),
      mk(89230293, 432424, 206.7367, 0.18),
      mk(2147483647, 947483647, 2.2685, 0.08),
      mk(2147483647, -47483647, -45.4989, 0.60),
  };
}

ErrorReport sweep(const DividerConfig& cfg, std::size_t count, std::uint64_t seed,
                  const SweepOptions& opts) {
  cfg.validate();
  SplitMix64 rng(seed);
  Accumulator acc;
  acc.keep_records = opts.keep_records;
  const BigUint quo_limit = pow2(cfg.width_quo);
  for (std::size_t i = 0; i < count; ++i) {
    for (;;) {
      BigInt a = draw_signed(rng, cfg.width_dividend);
      BigInt b = draw_signed(rng, cfg.width_divisor);
      if (b == 0) continue;
      Rational exact = exact_quotient(a, b);
      if (abs(exact) >= Rational(quo_limit)) continue;
      try {
        DivisionOutcome out =
            divide_full(SignedInput(a, cfg.width_dividend), SignedInput(b, cfg.width_divisor), cfg);
        Rational computed = opts.measure == SweepOptions::Measure::output
                                ? out.quotient.value()
                                : (out.sign ? -out.a_final.value() : out.a_final.value());
        acc.add(a, b, exact, computed);
      } catch (const FxOverflowError&) {
        continue;  // format overflow is a representability property; redraw
      }
      break;
    }
  }
  return acc.finish();
}

DividerConfig mult_sweep_config(int operand_width) {
  if (operand_width < 1 || operand_width > 12)
    throw std::invalid_argument("operand sweep: operand width must be in [1, 12]");
  DividerConfig cfg;
  cfg.width_dividend = 2 * operand_width;  // products fit the working format
  cfg.width_divisor = 2 * operand_width;
  cfg.extension = 64;
  cfg.width_quo = 2 * operand_width;
  cfg.width_fra = 65;
  return cfg;
}

ErrorReport mult_error_sweep(int operand_width, MultMode mode, bool keep_records) {
  const DividerConfig cfg = mult_sweep_config(operand_width);
  const FxFormat opfmt(operand_width, 0);
  Accumulator acc;
  acc.keep_records = keep_records;
  const long n = (1L << operand_width) - 1;
  for (long a = 1; a <= n; ++a) {
    const FxValue av(BigUint(a), opfmt);
    for (long b = 1; b <= n; ++b) {
      const FxValue bv(BigUint(b), opfmt);
      const FxValue prod = mitchell_multiply(av, bv, mode, cfg);
      acc.add(BigInt(a), BigInt(b), Rational(BigInt(a) * b), prod.value());
    }
  }
  return acc.finish();
}

ErrorReport div_error_sweep(int operand_width, bool keep_records) {
  const DividerConfig cfg = mult_sweep_config(operand_width);
  const FxFormat opfmt(operand_width, 0);
  Accumulator acc;
  acc.keep_records = keep_records;
  const long n = (1L << operand_width) - 1;
  for (long a = 1; a <= n; ++a) {
    const FxValue av(BigUint(a), opfmt);
    for (long b = 1; b <= n; ++b) {
      const FxValue bv(BigUint(b), opfmt);
      const FxValue quot = mitchell_divide_direct(av, bv, cfg);
      acc.add(BigInt(a), BigInt(b), Rational(BigInt(a), BigInt(b)), quot.value());
    }
  }
  return acc.finish();
}

std::string to_decimal_string(const Rational& v, int significant_digits) {
  if (significant_digits < 1) throw std::invalid_argument("to_decimal_string: digits < 1");
  if (v == 0) return "0";
  const bool neg = v < 0;
  const Rational mag = neg ? Rational(-v) : v;
  const BigUint num(numerator(mag));
  const BigUint den(denominator(mag));
  // Decimal exponent e10: number of digits left of the point (can be <= 0
  // for sub-unit values). Scan with exact powers of ten.
  int e10 = 0;
  if (num >= den) {
    BigUint scaled = den;
    while (num >= scaled) {
      scaled *= 10;
      ++e10;
    }
  } else {
    BigUint scaled = num;
    while (scaled < den) {
      scaled *= 10;
      --e10;
    }
    ++e10;
  }
  // Round half up to significant_digits digits: n = floor(mag*10^(d-e10)+1/2).
  const int shift = significant_digits - e10;
  BigUint scaled_num = num;
  BigUint scaled_den = den;
  if (shift >= 0)
    scaled_num *= boost::multiprecision::pow(BigUint(10), shift);
  else
    scaled_den *= boost::multiprecision::pow(BigUint(10), -shift);
  BigUint digits = (2 * scaled_num + scaled_den) / (2 * scaled_den);
  std::string ds = digits.str();
  if (static_cast<int>(ds.size()) > significant_digits) {
    // Rounding carried into a new leading digit (e.g. 999.96 -> 1000.0).
    ds.pop_back();
    ++e10;
  }
  std::string out;
  if (e10 <= 0) {
    out = "0." + std::string(-e10, '0') + ds;
  } else if (e10 >= static_cast<int>(ds.size())) {
    out = ds + std::string(e10 - ds.size(), '0');
  } else {
    out = ds.substr(0, e10) + "." + ds.substr(e10);
  }
  return neg ? "-" + out : out;
}

void write_csv(std::ostream& os, const ErrorReport& report) {
  os << "dividend,divisor,exact,computed,rel_err\n";
  for (const CaseRecord& c : report.cases) {
    os << c.dividend.str() << ',' << c.divisor.str() << ',' << to_decimal_string(c.exact)
       << ',' << to_decimal_string(c.computed) << ',' << to_decimal_string(c.rel_err) << '\n';
  }
}

void write_json(std::ostream& os, const DividerConfig& cfg, const ErrorReport& report,
                std::optional<std::uint64_t> seed) {
  os << "{\n"
     << "  \"config\": {\n"
     << "    \"width_dividend\": " << cfg.width_dividend << ",\n"
     << "    \"width_divisor\": " << cfg.width_divisor << ",\n"
     << "    \"extension\": " << cfg.extension << ",\n"
     << "    \"width_quo\": " << cfg.width_quo << ",\n"
     << "    \"width_fra\": " << cfg.width_fra << ",\n"
     << "    \"iterations\": " << cfg.iterations << ",\n"
     << "    \"strategy\": \"" << to_string(cfg.strategy) << "\",\n"
     << "    \"rng\": \"splitmix64\"\n"
     << "  },\n"
     << "  \"count\": " << report.count << ",\n";
  if (seed)
    os << "  \"seed\": " << *seed << ",\n";
  else
    os << "  \"seed\": null,\n";
  os << "  \"max_rel_err\": " << to_decimal_string(report.max_err) << ",\n"
     << "  \"mean_rel_err\": " << to_decimal_string(report.mean_err) << ",\n"
     << "  \"p99_rel_err\": " << to_decimal_string(report.p99_err) << ",\n"
     << "  \"worst_case\": {\n"
     << "    \"dividend\": " << report.worst_dividend.str() << ",\n"
     << "    \"divisor\": " << report.worst_divisor.str() << "\n"
     << "  }\n"
     << "}\n";
}

}  // namespace goldmitch
