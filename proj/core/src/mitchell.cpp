#include "goldmitch/mitchell.hpp"

#include <algorithm>

namespace goldmitch {

namespace {

BigUint pow2(int n) { return BigUint(1) << n; }

// Exact intermediate value mant * 2^exp2 before the final register
// truncation.
struct ScaledInt {
  BigUint mant;  // >= 0
  int exp2;
};

// Uncorrected product of two decompositions as an exact scaled integer (the
// single floor happens at write-back).
ScaledInt approx_product_scaled(const MitchellDecomposition& n, const MitchellDecomposition& m,
                                int ext) {
  BigUint s = n.x.raw() + m.x.raw();
  ScaledInt r;
  if (s < pow2(ext)) {
    r.mant = pow2(ext) + s;
    r.exp2 = n.k + m.k - ext;
  } else {
    r.mant = std::move(s);
    r.exp2 = n.k + m.k + 1 - ext;
  }
  r.exp2 -= n.sub + m.sub;
  return r;
}

// Correction term as an exact scaled integer, without the outer
// sub_N + sub_M shift. Zero mant encodes the short-circuit.
ScaledInt correction_scaled(const MitchellDecomposition& n, const MitchellDecomposition& m,
                            int ext) {
  const bool carry = n.x.raw() + m.x.raw() >= pow2(ext);
  const BigUint u = carry ? n.x_complement.raw() : n.x.raw();
  const BigUint v = carry ? m.x_complement.raw() : m.x.raw();
  if (u == 0 || v == 0) return ScaledInt{BigUint(0), 0};
  // One more log-add level on the sub-unit fractions; their k branch is
  // structurally zero, so only sub and the mantissa fraction remain.
  const int pu = static_cast<int>(boost::multiprecision::msb(u));
  const int pv = static_cast<int>(boost::multiprecision::msb(v));
  const int sub_u = ext - pu;
  const int sub_v = ext - pv;
  const BigUint fu = (u - pow2(pu)) << (ext - pu);
  const BigUint fv = (v - pow2(pv)) << (ext - pv);
  BigUint t = fu + fv;
  ScaledInt r;
  if (t < pow2(ext)) {
    r.mant = pow2(ext) + t;
    r.exp2 = -ext;
  } else {
    r.mant = std::move(t);
    r.exp2 = 1 - ext;
  }
  r.exp2 += n.k + m.k - sub_u - sub_v;
  return r;
}

}  // namespace

MitchellDecomposition decompose(const FxValue& v, const DividerConfig& cfg) {
  if (v.is_zero()) throw FxDomainError("decompose: zero operand");
  const int ext = cfg.extension;
  const KSub ks = count_k_sub(v);
  const int p = static_cast<int>(boost::multiprecision::msb(v.raw()));
  const BigUint rem = v.raw() - pow2(p);
  // Mantissa fraction aligned to extension bits, floor truncation when the
  // operand carries more fraction detail than the working registers.
  BigUint xraw = ext >= p ? BigUint(rem << (ext - p)) : BigUint(rem >> (p - ext));
  FxFormat xfmt(1, ext);
  FxValue x(xraw, xfmt);
  FxValue xc(pow2(ext) - xraw, xfmt);
  return MitchellDecomposition{ks.k, ks.sub, std::move(x), std::move(xc)};
}

FxValue approx_product_raw(const MitchellDecomposition& n, const MitchellDecomposition& m,
                           const DividerConfig& cfg) {
  const ScaledInt r = approx_product_scaled(n, m, cfg.extension);
  return FxValue::from_scaled(r.mant, r.exp2, cfg.working_format());
}

FxValue correction_term(const MitchellDecomposition& n, const MitchellDecomposition& m,
                        const DividerConfig& cfg) {
  const ScaledInt r = correction_scaled(n, m, cfg.extension);
  return FxValue::from_scaled(r.mant, r.exp2, cfg.working_format());
}

FxValue mitchell_multiply(const FxValue& a, const FxValue& b, MultMode mode,
                          const DividerConfig& cfg) {
  const FxFormat work = cfg.working_format();
  if (a.is_zero() || b.is_zero()) return FxValue::zero(work);
  const int ext = cfg.extension;
  const MitchellDecomposition n = decompose(a, cfg);
  const MitchellDecomposition m = decompose(b, cfg);
  if (mode == MultMode::uncorrected) {
    const ScaledInt r = approx_product_scaled(n, m, ext);
    return FxValue::from_scaled(r.mant, r.exp2, work);
  }
  // Corrected assembly: split k_N + k_M + x_N + x_M into integer and
  // fraction parts, rebuild the primary term, add the correction exactly,
  // then apply the single write-back truncation.
  BigUint s = n.x.raw() + m.x.raw();
  const bool carry = s >= pow2(ext);
  const BigUint xnm = carry ? BigUint(s - pow2(ext)) : s;
  const int knm = n.k + m.k + (carry ? 1 : 0);
  BigUint mant = pow2(ext) + xnm;
  int exp2 = knm - ext;
  const ScaledInt c = correction_scaled(n, m, ext);
  if (c.mant != 0) {
    const int e = std::min(exp2, c.exp2);
    mant = (mant << (exp2 - e)) + (c.mant << (c.exp2 - e));
    exp2 = e;
  }
  exp2 -= n.sub + m.sub;
  return FxValue::from_scaled(mant, exp2, work);
}

FxValue mitchell_divide_direct(const FxValue& a, const FxValue& b, const DividerConfig& cfg) {
  if (b.is_zero()) throw ZeroDivisorError("mitchell_divide_direct: zero divisor");
  const FxFormat work = cfg.working_format();
  if (a.is_zero()) return FxValue::zero(work);
  const int ext = cfg.extension;
  const MitchellDecomposition n = decompose(a, cfg);
  const MitchellDecomposition m = decompose(b, cfg);
  const int e = (n.k - n.sub) - (m.k - m.sub);
  BigUint mant;
  int exp2;
  if (n.x.raw() >= m.x.raw()) {
    mant = pow2(ext) + (n.x.raw() - m.x.raw());
    exp2 = e - ext;
  } else {
    mant = pow2(ext + 1) - (m.x.raw() - n.x.raw());
    exp2 = e - 1 - ext;
  }
  return FxValue::from_scaled(mant, exp2, work);
}

}  // namespace goldmitch
