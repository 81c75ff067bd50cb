#ifndef GOLDMITCH_FXP_HPP
#define GOLDMITCH_FXP_HPP

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace goldmitch {

using BigUint = boost::multiprecision::cpp_int;   // used as a non-negative value
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when a value cannot be represented in the requested format
// (construction, narrowing, or the quotient integer part exceeding width_quo).
class FxOverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Thrown on zero divisors ("invalid computation").
class ZeroDivisorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown when an operation's domain excludes the argument (e.g. zero input
// to a leading-one decomposition).
class FxDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Unsigned fixed-point format: int_bits integer bits, frac_bits fraction
// bits. A raw register value r represents r / 2^frac_bits.
struct FxFormat {
  static constexpr int kMaxTotalBits = 256;

  int int_bits;
  int frac_bits;

  FxFormat(int int_bits_, int frac_bits_, int max_total = kMaxTotalBits)
      : int_bits(int_bits_), frac_bits(frac_bits_) {
    if (int_bits < 1) throw std::invalid_argument("FxFormat: int_bits must be >= 1");
    if (frac_bits < 0) throw std::invalid_argument("FxFormat: frac_bits must be >= 0");
    if (int_bits + frac_bits > max_total)
      throw std::invalid_argument("FxFormat: total width " +
                                  std::to_string(int_bits + frac_bits) +
                                  " exceeds maximum " + std::to_string(max_total));
  }

  int total_bits() const { return int_bits + frac_bits; }
  // Weight of the least significant fraction bit.
  Rational ulp() const;
  bool operator==(const FxFormat&) const = default;
};

// An unsigned fixed-point register value: arbitrary-width raw bits tagged
// with their format. Immutable.
class FxValue {
 public:
  FxValue(BigUint raw, FxFormat format);

  static FxValue zero(FxFormat format) { return FxValue(BigUint(0), format); }

  // floor(mantissa * 2^exp2) interpreted into fmt; throws FxOverflowError
  // when the result does not fit. mantissa must be non-negative. This is the
  // single write-back path used by every datapath truncation.
  static FxValue from_scaled(const BigUint& mantissa, int exp2, FxFormat fmt);

  // Exact rational value raw / 2^frac_bits.
  Rational value() const;

  const BigUint& raw() const { return raw_; }
  const FxFormat& format() const { return format_; }
  bool is_zero() const { return raw_ == 0; }

  // Re-interpret into another format with floor truncation of dropped
  // fraction bits; throws FxOverflowError when the integer part does not fit.
  FxValue refit(FxFormat fmt) const { return from_scaled(raw_, -format_.frac_bits, fmt); }

  // Lowercase hex of the raw register bits, no prefix.
  std::string raw_hex() const;

  bool operator==(const FxValue&) const = default;

 private:
  BigUint raw_;
  FxFormat format_;
};

// floor-truncating encode: raw = floor(v * 2^frac_bits); requires v >= 0 and
// v < 2^int_bits.
FxValue encode(const Rational& v, FxFormat fmt);
// Exact inverse interpretation.
Rational decode(const FxValue& v);

// A signed two's-complement input operand of a given register width.
struct SignedInput {
  BigInt value;
  int width;

  SignedInput(BigInt value_, int width_);

  // The register bit pattern (value mod 2^width).
  BigUint raw_bits() const;
  bool operator==(const SignedInput&) const = default;
};

// Sign-magnitude quotient: (-1)^sign * (int_part + frac_part / 2^frac_bits).
struct SignedQuotient {
  int sign;           // 0 or 1
  BigUint int_part;   // < 2^int_bits
  BigUint frac_part;  // < 2^frac_bits
  int int_bits;       // width_quo
  int frac_bits;      // width_fra - 1

  Rational value() const;
  bool operator==(const SignedQuotient&) const = default;
};

enum class MultiplierStrategy { exact, mitchell_corrected, mitchell_uncorrected };

const char* to_string(MultiplierStrategy s);
// Parses the names accepted by the CLI; throws std::invalid_argument.
MultiplierStrategy strategy_from_string(const std::string& name);

// All divider parameters. Defaults mirror the 32-bit configuration used for
// the reference results.
struct DividerConfig {
  int width_dividend = 32;
  int width_divisor = 32;
  int extension = 32;
  int width_quo = 32;
  int width_fra = 33;
  int iterations = 4;
  MultiplierStrategy strategy = MultiplierStrategy::mitchell_corrected;

  // Throws std::invalid_argument when any derived register format is
  // malformed or over the width cap.
  void validate() const;

  // Numerator-side registers: width_dividend integer bits + extension.
  FxFormat dividend_format() const { return FxFormat(width_dividend, extension); }
  // Denominator-side registers (also holds the iteration coefficient).
  FxFormat divisor_format() const { return FxFormat(width_divisor, extension); }
  // Multiplier working format: results are truncated here before register
  // write-back.
  FxFormat working_format() const { return FxFormat(width_dividend + extension, extension); }

  bool operator==(const DividerConfig&) const = default;
};

struct UnsignedPair {
  BigUint dividend_unsigned;
  BigUint divisor_unsigned;
  int sign;  // XOR of the input sign bits
};

// Strips signs off both operands. Total: the most negative two's-complement
// value maps to its exact positive magnitude.
UnsignedPair input_sign_convert(const SignedInput& dividend, const SignedInput& divisor);

// Packs the final iteration value (width_dividend integer bits, extension
// fraction bits) into the output format: integer part truncated/zero-extended
// to width_quo bits, fraction part the top width_fra-1 fraction bits, floor
// truncation. A result that truncates to exactly zero forces sign = 0.
// Throws FxOverflowError when the integer part needs more than width_quo bits.
SignedQuotient output_sign_convert(const FxValue& result, int sign, const DividerConfig& cfg);

}  // namespace goldmitch

#endif
