#ifndef GOLDMITCH_GOLDSCHMIDT_HPP
#define GOLDMITCH_GOLDSCHMIDT_HPP

#include "goldmitch/fxp.hpp"
#include "goldmitch/mitchell.hpp"
#include "goldmitch/normalize.hpp"

namespace goldmitch {

// One iteration's registers: numerator a_s, denominator b_s, and the last
// coefficient m_s. Immutable; iterate_once returns the next state.
struct GoldschmidtState {
  FxValue a;
  FxValue b;
  FxValue m;
  int s = 0;
};

// m = 2 - b, computed as an exact fixed-point subtraction in b's format.
FxValue iteration_coefficient(const FxValue& b);

// One multiplication step in the working format, truncated there; the
// register write-back narrowing is the caller's.
FxValue strategy_multiply(const FxValue& a, const FxValue& b, MultiplierStrategy strat,
                          const DividerConfig& cfg);

// a' = m'*a, b' = m'*b with m' = 2 - b; the two products are independent.
GoldschmidtState iterate_once(const GoldschmidtState& st, MultiplierStrategy strat,
                              const DividerConfig& cfg);

// Everything divide() knows, for callers that need the pre-conversion
// internals (error measurement, datapath equivalence checks).
struct DivisionOutcome {
  SignedQuotient quotient;
  int sign;
  FxValue a_final;  // pre-output-conversion numerator
  FxValue b_final;  // final denominator
};

// Full pipeline: sign conversion, normalization, cfg.iterations Goldschmidt
// steps with cfg.strategy, output conversion. Throws ZeroDivisorError and
// FxOverflowError (quotient integer part wider than width_quo).
DivisionOutcome divide_full(const SignedInput& dividend, const SignedInput& divisor,
                            const DividerConfig& cfg);
SignedQuotient divide(const SignedInput& dividend, const SignedInput& divisor,
                      const DividerConfig& cfg);

// The quadratic-convergence bound 2^(-2^s) on the exact-strategy relative
// error after s iterations.
Rational error_bound(int s);

}  // namespace goldmitch

#endif
