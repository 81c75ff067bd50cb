#include "goldmitch/fxp.hpp"

#include <sstream>

namespace goldmitch {

namespace {

BigUint pow2(int n) { return BigUint(1) << n; }

}  // namespace

Rational FxFormat::ulp() const { return Rational(1, pow2(frac_bits)); }

FxValue::FxValue(BigUint raw, FxFormat format) : raw_(std::move(raw)), format_(format) {
  if (raw_ < 0) throw std::invalid_argument("FxValue: raw must be non-negative");
  if (raw_ >= pow2(format_.total_bits()))
    throw FxOverflowError("FxValue: raw does not fit " + std::to_string(format_.int_bits) +
                          "." + std::to_string(format_.frac_bits) + " format");
}

FxValue FxValue::from_scaled(const BigUint& mantissa, int exp2, FxFormat fmt) {
  if (mantissa < 0) throw std::invalid_argument("from_scaled: negative mantissa");
  const int s = exp2 + fmt.frac_bits;
  BigUint raw = s >= 0 ? BigUint(mantissa << s) : BigUint(mantissa >> -s);
  if (raw >= pow2(fmt.total_bits()))
    throw FxOverflowError("from_scaled: value exceeds format range");
  return FxValue(std::move(raw), fmt);
}

Rational FxValue::value() const { return Rational(raw_, pow2(format_.frac_bits)); }

std::string FxValue::raw_hex() const {
  std::ostringstream os;
  os << std::hex << raw_;
  return os.str();
}

FxValue encode(const Rational& v, FxFormat fmt) {
  if (v < 0) throw std::invalid_argument("encode: negative value");
  // floor(v * 2^frac) via integer division
  BigUint raw = BigUint(numerator(v) << fmt.frac_bits) / BigUint(denominator(v));
  if (raw >= pow2(fmt.total_bits()))
    throw FxOverflowError("encode: value exceeds format integer range");
  return FxValue(std::move(raw), fmt);
}

Rational decode(const FxValue& v) { return v.value(); }

SignedInput::SignedInput(BigInt value_, int width_) : value(std::move(value_)), width(width_) {
  if (width < 1) throw std::invalid_argument("SignedInput: width must be >= 1");
  if (value < -pow2(width - 1) || value >= pow2(width - 1))
    throw std::invalid_argument("SignedInput: value outside two's-complement range");
}

BigUint SignedInput::raw_bits() const {
  return value < 0 ? BigUint(value + pow2(width)) : BigUint(value);
}

Rational SignedQuotient::value() const {
  Rational mag = Rational(int_part) + Rational(frac_part, pow2(frac_bits));
  return sign ? -mag : mag;
}

const char* to_string(MultiplierStrategy s) {
  switch (s) {
    case MultiplierStrategy::exact: return "exact";
    case MultiplierStrategy::mitchell_corrected: return "mitchell_corrected";
    case MultiplierStrategy::mitchell_uncorrected: return "mitchell_uncorrected";
  }
  return "?";
}

MultiplierStrategy strategy_from_string(const std::string& name) {
  if (name == "exact") return MultiplierStrategy::exact;
  if (name == "mitchell_corrected") return MultiplierStrategy::mitchell_corrected;
  if (name == "mitchell_uncorrected") return MultiplierStrategy::mitchell_uncorrected;
  throw std::invalid_argument("unknown multiplier strategy: " + name);
}

void DividerConfig::validate() const {
  if (width_dividend < 1 || width_divisor < 1)
    throw std::invalid_argument("config: input widths must be >= 1");
  if (extension < 1) throw std::invalid_argument("config: extension must be >= 1");
  if (iterations < 1) throw std::invalid_argument("config: iterations must be >= 1");
  if (width_quo < 1) throw std::invalid_argument("config: width_quo must be >= 1");
  if (width_fra < 1) throw std::invalid_argument("config: width_fra must be >= 1");
  // Constructing the register formats performs the width-cap checks.
  (void)dividend_format();
  (void)divisor_format();
  (void)working_format();
}

UnsignedPair input_sign_convert(const SignedInput& dividend, const SignedInput& divisor) {
  const int sa = dividend.value < 0 ? 1 : 0;
  const int sb = divisor.value < 0 ? 1 : 0;
  return UnsignedPair{BigUint(abs(dividend.value)), BigUint(abs(divisor.value)), sa ^ sb};
}

SignedQuotient output_sign_convert(const FxValue& result, int sign, const DividerConfig& cfg) {
  const int ext = result.format().frac_bits;
  BigUint int_raw = result.raw() >> ext;
  if (int_raw >= pow2(cfg.width_quo))
    throw FxOverflowError("output_sign_convert: integer part exceeds width_quo bits");
  const int out_frac_bits = cfg.width_fra - 1;
  BigUint frac_field = result.raw() & (pow2(ext) - 1);
  BigUint frac_raw = out_frac_bits <= ext ? BigUint(frac_field >> (ext - out_frac_bits))
                                          : BigUint(frac_field << (out_frac_bits - ext));
  if (int_raw == 0 && frac_raw == 0) sign = 0;
  return SignedQuotient{sign, std::move(int_raw), std::move(frac_raw), cfg.width_quo,
                        out_frac_bits};
}

}  // namespace goldmitch
