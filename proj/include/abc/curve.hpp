#pragma once

#include <cstddef>

#include "abc/bignat.hpp"
#include "abc/field.hpp"

namespace abc::curve {

// Twisted Edwards curve  -x^2 + y^2 = 1 + d x^2 y^2  over GF(2^255 - 19).
struct AffinePoint {
  FieldElement x;
  FieldElement y;

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

// Extended homogeneous coordinates (X:Y:Z:T) with x = X/Z, y = Y/Z, xy = T/Z.
struct ExtendedPoint {
  FieldElement X;
  FieldElement Y;
  FieldElement Z;
  FieldElement T;
};

struct CurveParams {
  FieldElement a;  // twist coefficient, -1 mod p
  FieldElement d;
  FieldElement d2;  // 2d, used by point_add
  AffinePoint base;
  FieldElement z0;
};

const CurveParams& params();

ExtendedPoint neutral();
ExtendedPoint base_point();

// Throws NotOnCurve when the point does not satisfy the curve equation.
ExtendedPoint from_affine(const AffinePoint& p);
// Throws ZeroDenominator when Z == 0.
AffinePoint to_affine(const ExtendedPoint& p);

bool is_on_curve(const AffinePoint& p);
// Z != 0, XY == TZ and the projective curve equation, all without inversion.
bool is_valid(const ExtendedPoint& p);

ExtendedPoint point_add(const ExtendedPoint& p1, const ExtendedPoint& p2);
ExtendedPoint point_double(const ExtendedPoint& p);
ExtendedPoint point_negate(const ExtendedPoint& p);
// Projective equality: X1 Z2 == X2 Z1 and Y1 Z2 == Y2 Z1.
bool point_equal(const ExtendedPoint& p1, const ExtendedPoint& p2);

// Left-to-right double-and-add. k == 0 yields the neutral point.
ExtendedPoint scalar_mul(const BigNat& k, const ExtendedPoint& p);
inline ExtendedPoint scalar_mul(const ScalarQ& k, const ExtendedPoint& p) { return scalar_mul(k.value(), p); }

struct CountedResult {
  ExtendedPoint point;
  std::size_t doubles = 0;
  std::size_t adds = 0;
};

// Same walk as scalar_mul, counting group operations. Throws Undefined for k == 0.
CountedResult scalar_mul_counted(const BigNat& k, const ExtendedPoint& p);

}  // namespace abc::curve
