#ifndef GOLDMITCH_MITCHELL_HPP
#define GOLDMITCH_MITCHELL_HPP

#include "goldmitch/fxp.hpp"
#include "goldmitch/normalize.hpp"

namespace goldmitch {

// Logarithmic split of a nonzero operand: value = 2^k * (1 + x) * 2^-sub,
// with x the mantissa fraction truncated to extension bits. x_complement
// holds 1 - x for the carry branch of the correction term.
struct MitchellDecomposition {
  int k;    // >= 0
  int sub;  // >= 0, nonzero only for sub-unit operands
  FxValue x;             // in [0, 1), format (1, extension)
  FxValue x_complement;  // 1 - x, in (0, 1], format (1, extension)
};

enum class MultMode { uncorrected, corrected };

// Throws FxDomainError on zero input; callers short-circuit zero operands.
MitchellDecomposition decompose(const FxValue& v, const DividerConfig& cfg);

// The log-add product without correction:
//   x_N + x_M <  1: 2^(k_N + k_M) * (1 + x_N + x_M)
//   x_N + x_M >= 1: 2^(k_N + k_M + 1) * (x_N + x_M)
// right-shifted by sub_N + sub_M and floor-truncated to the working format.
FxValue approx_product_raw(const MitchellDecomposition& n, const MitchellDecomposition& m,
                           const DividerConfig& cfg);

// The omitted residual, itself approximated one level deep:
//   x_N + x_M <  1: 2^(k_N + k_M) * (x_N (x) x_M)
//   x_N + x_M >= 1: 2^(k_N + k_M) * (x'_N (x) x'_M)
// where (x) is the uncorrected log-add product of the (sub-unit) fractions
// with the exponent branch omitted. A zero fraction short-circuits to zero.
// No sub_N + sub_M shift is applied here; it belongs to the assembled
// product.
FxValue correction_term(const MitchellDecomposition& n, const MitchellDecomposition& m,
                        const DividerConfig& cfg);

// Approximate multiplication. Zero operands yield zero. Uncorrected mode is
// approx_product_raw; corrected mode assembles 2^k_NM * (1 + x_NM) + C with
// k_NM/x_NM the integer/fraction split of k_N + k_M + x_N + x_M, sums the
// two terms exactly, right-shifts by sub_N + sub_M and floor-truncates once
// into the working format.
FxValue mitchell_multiply(const FxValue& a, const FxValue& b, MultMode mode,
                          const DividerConfig& cfg);

// Log-subtract division, provided for error-comparison experiments only:
//   x_N >= x_M: 2^(e) * (1 + x_N - x_M)
//   x_N <  x_M: 2^(e-1) * (2 - (x_M - x_N))
// with e = (k_N - sub_N) - (k_M - sub_M). Throws ZeroDivisorError on zero b.
FxValue mitchell_divide_direct(const FxValue& a, const FxValue& b, const DividerConfig& cfg);

}  // namespace goldmitch

#endif
