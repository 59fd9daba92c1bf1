#pragma once

#include <array>
#include <string>
#include <vector>

#include "abc/bignat.hpp"
#include "abc/curve.hpp"
#include "abc/field.hpp"
#include "abc/rng.hpp"
#include "abc/scheme.hpp"

namespace abc::testing {

struct AffineHex {
  const char* x;
  const char* y;
};

// kB for k = 1..257 from the Python oracle (affine formulas, plain integers).
inline const std::vector<AffineHex>& oracle_multiples() {
  static const std::vector<AffineHex> table = {
#include "../oracles/base_multiples.inc"
  };
  return table;
}

inline curve::AffinePoint oracle_multiple(std::size_t k) {
  const auto& row = oracle_multiples().at(k - 1);
  return {FieldElement::from_hex(row.x), FieldElement::from_hex(row.y)};
}

inline BigNat random_scalar(Rng& rng) { return rng.uniform_below(group_order()); }

inline curve::ExtendedPoint random_point(Rng& rng) {
  BigNat k = random_scalar(rng);
  if (k.is_zero()) k = BigNat(1);
  return curve::scalar_mul(k, curve::base_point());
}

// A different attribute value below q.
inline scheme::Attribute other_attribute(const scheme::Attribute& a, Rng& rng) {
  for (;;) {
    BigNat v = rng.uniform_below(group_order());
    if (!(v == a.value())) return scheme::Attribute(v);
  }
}

inline scheme::AttributeSet replace_attribute(const scheme::AttributeSet& set, std::size_t i,
                                              const scheme::Attribute& a) {
  auto values = set.values();
  values[i] = a;
  return scheme::AttributeSet(values);
}

// Changes exactly one field of the credential (an attribute, C, R or z).
inline scheme::EccCredential mutate(const scheme::EccCredential& cred, Rng& rng) {
  scheme::EccCredential out = cred;
  switch (rng.next_u64() % 4) {
    case 0: {
      std::size_t i = rng.next_u64() % cred.attributes.size();
      out.attributes = replace_attribute(cred.attributes, i, other_attribute(cred.attributes[i], rng));
      break;
    }
    case 1:
      out.commitment = curve::point_add(cred.commitment, random_point(rng));
      break;
    case 2:
      out.nonce_point = curve::point_add(cred.nonce_point, random_point(rng));
      break;
    default: {
      BigNat delta = rng.uniform_below(group_order() - BigNat(1)) + BigNat(1);
      out.response = cred.response + ScalarQ(delta);
      break;
    }
  }
  return out;
}

// Changes exactly one field of the credential (an attribute or the signature).
inline scheme::ModexpCredential mutate(const scheme::ModexpCredential& cred, const BigNat& n, Rng& rng) {
  scheme::ModexpCredential out = cred;
  if (rng.next_u64() % 2 == 0) {
    std::size_t i = rng.next_u64() % cred.attributes.size();
    out.attributes = replace_attribute(cred.attributes, i, other_attribute(cred.attributes[i], rng));
  } else {
    BigNat delta = rng.uniform_below(n - BigNat(1)) + BigNat(1);
    out.signature = (cred.signature + delta) % n;
  }
  return out;
}

}  // namespace abc::testing
