#include "goldmitch/goldschmidt.hpp"

namespace goldmitch {

FxValue iteration_coefficient(const FxValue& b) {
  const FxFormat fmt = b.format();
  const BigUint two = BigUint(1) << (fmt.frac_bits + 1);
  if (b.raw() >= two) throw FxDomainError("iteration_coefficient: b outside (0, 2)");
  return FxValue(two - b.raw(), fmt);
}

FxValue strategy_multiply(const FxValue& a, const FxValue& b, MultiplierStrategy strat,
                          const DividerConfig& cfg) {
  switch (strat) {
    case MultiplierStrategy::exact: {
      // Full-width product, one floor into the working format.
      const int exp2 = -(a.format().frac_bits + b.format().frac_bits);
      return FxValue::from_scaled(a.raw() * b.raw(), exp2, cfg.working_format());
    }
    case MultiplierStrategy::mitchell_corrected:
      return mitchell_multiply(a, b, MultMode::corrected, cfg);
    case MultiplierStrategy::mitchell_uncorrected:
      return mitchell_multiply(a, b, MultMode::uncorrected, cfg);
  }
  throw std::invalid_argument("strategy_multiply: bad strategy");
}

GoldschmidtState iterate_once(const GoldschmidtState& st, MultiplierStrategy strat,
                              const DividerConfig& cfg) {
  FxValue m = iteration_coefficient(st.b);
  FxValue a = strategy_multiply(m, st.a, strat, cfg).refit(cfg.dividend_format());
  FxValue b = strategy_multiply(m, st.b, strat, cfg).refit(cfg.divisor_format());
  return GoldschmidtState{std::move(a), std::move(b), std::move(m), st.s + 1};
}

DivisionOutcome divide_full(const SignedInput& dividend, const SignedInput& divisor,
                            const DividerConfig& cfg) {
  cfg.validate();
  const UnsignedPair conv = input_sign_convert(dividend, divisor);
  if (conv.divisor_unsigned == 0) throw ZeroDivisorError("divide: zero divisor");
  const NormalizedPair norm = normalize_pair(conv.dividend_unsigned, conv.divisor_unsigned, cfg);
  GoldschmidtState st{norm.dividend_fix, norm.divisor_fix,
                      FxValue::zero(cfg.divisor_format()), 0};
  for (int s = 0; s < cfg.iterations; ++s) st = iterate_once(st, cfg.strategy, cfg);
  SignedQuotient q = output_sign_convert(st.a, conv.sign, cfg);
  return DivisionOutcome{std::move(q), conv.sign, std::move(st.a), std::move(st.b)};
}

SignedQuotient divide(const SignedInput& dividend, const SignedInput& divisor,
                      const DividerConfig& cfg) {
  return divide_full(dividend, divisor, cfg).quotient;
}

Rational error_bound(int s) {
  if (s < 1) throw std::invalid_argument("error_bound: s must be >= 1");
  if (s > 24) throw std::invalid_argument("error_bound: s unreasonably large");
  return Rational(1, BigUint(1) << (1 << s));
}

}  // namespace goldmitch
