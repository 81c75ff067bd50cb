#include <doctest.h>

#include <goldmitch/harness.hpp>
#include <goldmitch/normalize.hpp>

using namespace goldmitch;

TEST_SUITE("normalize") {

TEST_CASE("leading one scan") {
  // raw 11 = 0b1011 in a 32-bit register: 28 zeros above bit 3
  const ShiftInfo a = leading_one(FxValue(BigUint(11), FxFormat(32, 0)));
  REQUIRE(a.leading_one_index.has_value());
  CHECK(*a.leading_one_index == 3);
  CHECK(a.shift_length_R == 28);
  CHECK(a.shift_length_num == 4);

  const ShiftInfo top = leading_one(FxValue(BigUint(1) << 31, FxFormat(32, 0)));
  CHECK(*top.leading_one_index == 31);
  CHECK(top.shift_length_R == 0);
  CHECK(top.shift_length_num == 32);

  const ShiftInfo one = leading_one(FxValue(BigUint(1), FxFormat(32, 0)));
  CHECK(*one.leading_one_index == 0);
  CHECK(one.shift_length_R == 31);
  CHECK(one.shift_length_num == 1);

  const ShiftInfo z = leading_one(FxValue::zero(FxFormat(32, 0)));
  CHECK_FALSE(z.leading_one_index.has_value());
  CHECK(z.shift_length_R == 32);
  CHECK(z.shift_length_num == 0);
}

TEST_CASE("leading one matches a naive scan exhaustively") {
  const FxFormat f(8, 8);
  for (unsigned raw = 1; raw < (1u << 16); ++raw) {
    int p = 15;
    while (!((raw >> p) & 1u)) --p;
    const ShiftInfo info = leading_one(FxValue(BigUint(raw), f));
    REQUIRE(info.leading_one_index.has_value());
    if (*info.leading_one_index != p) {
      CHECK(*info.leading_one_index == p);  // report the failing raw once
      break;
    }
    CHECK(info.shift_length_R == 16 - 1 - p);
    CHECK(info.shift_length_num == p + 1);
  }
}

TEST_CASE("normalize_pair reference values") {
  DividerConfig cfg;
  const NormalizedPair np = normalize_pair(BigUint(53), BigUint(11), cfg);
  CHECK(np.divisor_fix.value() == Rational(11, 16));   // 0.6875
  CHECK(np.dividend_fix.value() == Rational(53, 16));  // 3.3125
  CHECK(np.shift == cfg.extension - 1 - 3);
  CHECK(np.dividend_fix.format() == cfg.dividend_format());
  CHECK(np.divisor_fix.format() == cfg.divisor_format());

  // powers of two land exactly on 0.5
  for (int k = 0; k < 31; ++k) {
    const NormalizedPair p2 = normalize_pair(BigUint(7), BigUint(1) << k, cfg);
    CHECK(p2.divisor_fix.value() == Rational(1, 2));
  }

  CHECK_THROWS_AS(normalize_pair(BigUint(5), BigUint(0), cfg), ZeroDivisorError);
}

TEST_CASE("normalized divisor lies in [1/2, 1)") {
  DividerConfig cfg;
  cfg.width_dividend = cfg.width_divisor = 12;
  cfg.extension = 16;
  for (unsigned b = 1; b < (1u << 12); ++b) {
    const NormalizedPair np = normalize_pair(BigUint(1), BigUint(b), cfg);
    const Rational v = np.divisor_fix.value();
    if (!(v >= Rational(1, 2) && v < 1)) {
      CHECK(v >= Rational(1, 2));
      CHECK(v < 1);
      break;
    }
  }

  DividerConfig def;
  SplitMix64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const BigInt b = abs(draw_signed(rng, 32));
    if (b == 0) continue;
    const NormalizedPair np = normalize_pair(BigUint(3), BigUint(b), def);
    CHECK(np.divisor_fix.value() >= Rational(1, 2));
    CHECK(np.divisor_fix.value() < 1);
  }
}

TEST_CASE("normalization preserves the ratio") {
  DividerConfig cfg;
  SplitMix64 rng(22);
  for (int i = 0; i < 300; ++i) {
    const BigInt a = abs(draw_signed(rng, 32));
    const BigInt b = abs(draw_signed(rng, 32));
    if (b == 0) continue;
    const NormalizedPair np = normalize_pair(BigUint(a), BigUint(b), cfg);
    // extension >= divisor width makes the shift lossless, so the quotient
    // of the normalized values equals the input ratio exactly
    CHECK(np.dividend_fix.value() * BigUint(b) == np.divisor_fix.value() * BigUint(a));
  }
}

TEST_CASE("exponent split") {
  const KSub a = count_k_sub(FxValue(BigUint(11), FxFormat(32, 0)));
  CHECK(a.k == 3);
  CHECK(a.sub == 0);

  const KSub whole = count_k_sub(encode(Rational(1), FxFormat(4, 8)));
  CHECK(whole.k == 0);
  CHECK(whole.sub == 0);

  const KSub half = count_k_sub(encode(Rational(3, 4), FxFormat(1, 2)));
  CHECK(half.k == 0);
  CHECK(half.sub == 1);

  const KSub eighth = count_k_sub(encode(Rational(1, 8), FxFormat(1, 8)));
  CHECK(eighth.k == 0);
  CHECK(eighth.sub == 3);

  CHECK_THROWS_AS(count_k_sub(FxValue::zero(FxFormat(4, 4))), FxDomainError);
}

TEST_CASE("exponent split brackets the magnitude") {
  SplitMix64 rng(23);
  const FxFormat f(16, 16);
  for (int i = 0; i < 400; ++i) {
    const BigInt raw = abs(draw_signed(rng, 32));
    if (raw == 0) continue;
    const FxValue v(BigUint(raw), f);
    const KSub ks = count_k_sub(v);
    CHECK((ks.k == 0 || ks.sub == 0));
    // 2^(k - sub) <= v < 2^(k - sub + 1)
    const Rational lo = ks.k >= ks.sub ? Rational(BigUint(1) << (ks.k - ks.sub))
                                       : Rational(1, BigUint(1) << (ks.sub - ks.k));
    CHECK(v.value() >= lo);
    CHECK(v.value() < 2 * lo);
  }
}

}  // TEST_SUITE
