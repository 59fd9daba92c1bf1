#include "abc/curve.hpp"

#include "abc/error.hpp"

namespace abc::curve {

namespace {

CurveParams make_params() {
  CurveParams cp;
  cp.a = -FieldElement(1);
  cp.d = FieldElement::from_decimal(
      "37095705934669439343138083508754565189542113879843219016388785533085940283555");
  cp.d2 = cp.d + cp.d;
  cp.base.x = FieldElement::from_decimal(
      "15112221349535400772501151409588531511454012693041857206046113283949847762202");
  cp.base.y = FieldElement::from_decimal(
      "46316835694926478169428394003475163141307993866256225615783033603165251855960");
  cp.z0 = FieldElement(1);
  return cp;
}

template <bool kCount>
CountedResult double_and_add(const BigNat& k, const ExtendedPoint& p) {
  CountedResult out;
  const std::size_t n = k.bits() - 1;  // index of the leading one bit
  ExtendedPoint r = p;
  for (std::size_t i = n; i-- > 0;) {
    r = point_double(r);
    if constexpr (kCount) ++out.doubles;
    if (k.test_bit(i)) {
      r = point_add(r, p);
      if constexpr (kCount) ++out.adds;
    }
  }
  out.point = r;
  return out;
}

}  // namespace

const CurveParams& params() {
  static const CurveParams cp = make_params();
  return cp;
}

ExtendedPoint neutral() {
  return {FieldElement(0), FieldElement(1), FieldElement(1), FieldElement(0)};
}

ExtendedPoint base_point() {
  const auto& cp = params();
  return {cp.base.x, cp.base.y, cp.z0, cp.base.x * cp.base.y};
}

bool is_on_curve(const AffinePoint& p) {
  const auto& cp = params();
  FieldElement x2 = p.x.square();
  FieldElement y2 = p.y.square();
  return cp.a * x2 + y2 == FieldElement(1) + cp.d * x2 * y2;
}

bool is_valid(const ExtendedPoint& p) {
  if (p.Z.is_zero()) return false;
  if (p.X * p.Y != p.T * p.Z) return false;
  // (aX^2 + Y^2) Z^2 == Z^4 + d X^2 Y^2
  const auto& cp = params();
  FieldElement x2 = p.X.square();
  FieldElement y2 = p.Y.square();
  FieldElement z2 = p.Z.square();
  return (cp.a * x2 + y2) * z2 == z2.square() + cp.d * x2 * y2;
}

ExtendedPoint from_affine(const AffinePoint& p) {
  if (!is_on_curve(p)) throw Error(ErrorCode::NotOnCurve, "affine point is not on the curve");
  return {p.x, p.y, FieldElement(1), p.x * p.y};
}

AffinePoint to_affine(const ExtendedPoint& p) {
  if (p.Z.is_zero()) throw Error(ErrorCode::ZeroDenominator, "Z coordinate is zero");
  FieldElement zinv = fe_inv(p.Z);
  return {p.X * zinv, p.Y * zinv};
}

ExtendedPoint point_add(const ExtendedPoint& p1, const ExtendedPoint& p2) {
  const auto& cp = params();
  FieldElement a = (p1.Y - p1.X) * (p2.Y - p2.X);
  FieldElement b = (p1.Y + p1.X) * (p2.Y + p2.X);
  FieldElement c = cp.d2 * p1.T * p2.T;
  FieldElement zz = p1.Z * p2.Z;
  FieldElement d = zz + zz;
  FieldElement e = b - a;
  FieldElement f = d - c;
  FieldElement g = d + c;
  FieldElement h = b + a;
  return {e * f, g * h, f * g, e * h};
}

ExtendedPoint point_double(const ExtendedPoint& p) {
  FieldElement a = p.X.square();
  FieldElement b = p.Y.square();
  FieldElement zz = p.Z.square();
  FieldElement c = zz + zz;
  FieldElement d = (p.X + p.Y).square();
  FieldElement h = b + a;
  FieldElement e = h - d;
  FieldElement g = a - b;
  FieldElement f = c + g;
  return {e * f, g * h, f * g, e * h};
}

ExtendedPoint point_negate(const ExtendedPoint& p) { return {-p.X, p.Y, p.Z, -p.T}; }

bool point_equal(const ExtendedPoint& p1, const ExtendedPoint& p2) {
  return p1.X * p2.Z == p2.X * p1.Z && p1.Y * p2.Z == p2.Y * p1.Z;
}

ExtendedPoint scalar_mul(const BigNat& k, const ExtendedPoint& p) {
  if (k.is_zero()) return neutral();
  return double_and_add<false>(k, p).point;
}

CountedResult scalar_mul_counted(const BigNat& k, const ExtendedPoint& p) {
  if (k.is_zero()) throw Error(ErrorCode::Undefined, "scalar_mul_counted needs k >= 1");
  return double_and_add<true>(k, p);
}

}  // namespace abc::curve
