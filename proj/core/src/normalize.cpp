#include "goldmitch/normalize.hpp"

namespace goldmitch {

ShiftInfo leading_one(const FxValue& v) {
  const int total = v.format().total_bits();
  if (v.is_zero()) return ShiftInfo{std::nullopt, total, 0};
  const int p = static_cast<int>(boost::multiprecision::msb(v.raw()));
  return ShiftInfo{p, total - 1 - p, p + 1};
}

NormalizedPair normalize_pair(const BigUint& dividend_unsigned, const BigUint& divisor_unsigned,
                              const DividerConfig& cfg) {
  if (divisor_unsigned == 0) throw ZeroDivisorError("normalize_pair: zero divisor");
  const int p = static_cast<int>(boost::multiprecision::msb(divisor_unsigned));
  // Land the divisor's leading one on raw fraction bit extension-1 (value in
  // [0.5, 1)).
  const int shift = cfg.extension - 1 - p;
  FxValue divisor_fix = FxValue::from_scaled(divisor_unsigned, shift - cfg.extension,
                                             cfg.divisor_format());
  FxValue dividend_fix = FxValue::from_scaled(dividend_unsigned, shift - cfg.extension,
                                              cfg.dividend_format());
  return NormalizedPair{std::move(dividend_fix), std::move(divisor_fix), shift};
}

KSub count_k_sub(const FxValue& v) {
  if (v.is_zero()) throw FxDomainError("count_k_sub: zero input");
  const ShiftInfo info = leading_one(v);
  const int e = info.shift_length_num - v.format().frac_bits - 1;  // = p - frac_bits
  return e >= 0 ? KSub{e, 0} : KSub{0, -e};
}

}  // namespace goldmitch
