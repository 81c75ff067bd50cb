#ifndef GOLDMITCH_NORMALIZE_HPP
#define GOLDMITCH_NORMALIZE_HPP

#include <optional>

#include "goldmitch/fxp.hpp"

namespace goldmitch {

// Result of the leading-one scan over a register.
//
// shift_length_R counts the zeros passed when scanning from the MSB down to
// (excluding) the leading one: total_bits - 1 - p. shift_length_num is the
// 1-based position of the leading one counted from the LSB:
// total_bits - shift_length_R = p + 1. For a zero register leading_one_index
// is empty, shift_length_R spans the whole register and shift_length_num is 0.
struct ShiftInfo {
  std::optional<int> leading_one_index;  // p with 2^p <= raw < 2^(p+1)
  int shift_length_R;
  int shift_length_num;
};

ShiftInfo leading_one(const FxValue& v);

struct NormalizedPair {
  FxValue dividend_fix;  // width_dividend integer bits, extension fraction bits
  FxValue divisor_fix;   // width_divisor integer bits, extension fraction bits
  int shift;             // applied left-shift amount (negative = right shift)
};

// Shifts the divisor so its value lands in [0.5, 1) — leading one at raw bit
// extension-1 — and shifts the dividend by the identical amount, preserving
// the ratio. The shift is lossless whenever extension >= the divisor's
// occupied width; a wider divisor than extension forces a truncating right
// shift. Throws ZeroDivisorError on a zero divisor.
NormalizedPair normalize_pair(const BigUint& dividend_unsigned, const BigUint& divisor_unsigned,
                              const DividerConfig& cfg);

struct KSub {
  int k;    // 2^k <= value < 2^(k+1) when value >= 1; else 0
  int sub;  // 2^-sub <= value < 2^-sub+1 when value < 1; else 0
};

// Exponent split of a nonzero value: exactly one of k >= 0 / sub >= 1 is
// active per operand magnitude (value in [1,2) has both zero). Computed from
// the leading-one scan: with shift_length_num = p + 1,
//   k = shift_length_num - frac_bits - 1 when non-negative,
//   sub = frac_bits + 1 - shift_length_num otherwise.
// Throws FxDomainError on zero input.
KSub count_k_sub(const FxValue& v);

}  // namespace goldmitch

#endif
