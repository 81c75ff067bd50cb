#ifndef GOLDMITCH_HARNESS_HPP
#define GOLDMITCH_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "goldmitch/fxp.hpp"
#include "goldmitch/mitchell.hpp"

namespace goldmitch {

// splitmix64 (Steele/Lea/Flood lineage, the java.util.SplittableRandom
// finalizer). The algorithm identity is part of the sweep contract: a given
// (config, count, seed) must reproduce bit-identically anywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Independent sub-stream for partitioned sweeps.
  SplitMix64 split() { return SplitMix64(next() ^ 0x9E3779B97F4A7C15ull); }

 private:
  std::uint64_t state_;
};

// Draws a uniform signed two's-complement value of the given width: the low
// `width` bits of next() (64-bit words concatenated low-first for wider
// operands), reinterpreted as signed.
BigInt draw_signed(SplitMix64& rng, int width);

struct TestCase {
  BigInt dividend;
  BigInt divisor;
  Rational expected_quotient;
  std::optional<double> published_quotient;  // reference quotient, if published
  std::optional<double> published_rel_err;   // reference error figure in percent
};

struct CaseRecord {
  BigInt dividend;
  BigInt divisor;
  Rational exact;
  Rational computed;
  Rational rel_err;
};

struct ErrorReport {
  std::size_t count = 0;
  Rational max_err = 0;
  Rational mean_err = 0;
  Rational p99_err = 0;
  BigInt worst_dividend = 0;
  BigInt worst_divisor = 0;
  std::vector<CaseRecord> cases;  // populated only when records are kept
};

// dividend / divisor as an exact rational; integer arithmetic only.
// Throws ZeroDivisorError.
Rational exact_quotient(const BigInt& dividend, const BigInt& divisor);

// |approx - exact| / |exact|, falling back to the absolute error |approx|
// when exact = 0.
Rational relative_error(const Rational& approx, const Rational& exact);

// The eight published 32-bit reference divisions with their reported
// quotients and error percentages.
std::vector<TestCase> table1_cases();

struct SweepOptions {
  bool keep_records = false;
  // output: error of the converted SignedQuotient. internal: error of the
  // pre-conversion numerator a_s (isolates iteration convergence from output
  // truncation).
  enum class Measure { output, internal } measure = Measure::output;
};

// Deterministic random-pair sweep: draws (dividend, divisor) with
// draw_signed, redrawing the pair while divisor = 0, the exact quotient
// overflows width_quo integer bits, or the engine reports format overflow;
// runs divide under cfg and aggregates relative errors.
ErrorReport sweep(const DividerConfig& cfg, std::size_t count, std::uint64_t seed,
                  const SweepOptions& opts = {});

// The internal config used by the exhaustive operand sweeps: integer
// registers wide enough for any product of two operand_width-bit values,
// extension 64 so register truncation is negligible next to the
// approximation error.
DividerConfig mult_sweep_config(int operand_width);

// Exhaustive nonzero operand-pair sweep of the approximate multiplier at
// the given integer operand width (<= 12).
ErrorReport mult_error_sweep(int operand_width, MultMode mode, bool keep_records = false);

// Same exhaustive sweep for the direct log-subtraction divider.
ErrorReport div_error_sweep(int operand_width, bool keep_records = false);

// value as a plain decimal string with the given significant digits
// (round half up); exact integer arithmetic throughout.
std::string to_decimal_string(const Rational& v, int significant_digits = 12);

// Per-case records: dividend,divisor,exact,computed,rel_err with 12
// significant decimal digits.
void write_csv(std::ostream& os, const ErrorReport& report);

// {config, count, seed, max_rel_err, mean_rel_err, p99_rel_err,
//  worst_case:{dividend,divisor}}; pass no seed for exhaustive sweeps.
void write_json(std::ostream& os, const DividerConfig& cfg, const ErrorReport& report,
                std::optional<std::uint64_t> seed);

}  // namespace goldmitch

#endif
