#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "abc/bignat.hpp"

namespace abc {

// p = 2^255 - 19
const BigNat& field_prime();
// q = 2^252 + 27742317777372353535851937790883648493, order of the base point
const BigNat& group_order();

// Residue modulo p, always held in canonical form [0, p) as four
// little-endian 64-bit limbs.
class FieldElement {
 public:
  using Limbs = std::array<std::uint64_t, 4>;

  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint64_t v) : limbs_{v, 0, 0, 0} {}

  // Reduces any natural number mod p.
  static FieldElement from_bignat(const BigNat& v);
  static FieldElement from_decimal(std::string_view text) { return from_bignat(BigNat::from_decimal(text)); }
  // 32-byte big-endian; rejects non-canonical encodings (value >= p).
  static FieldElement from_bytes(std::span<const std::uint8_t, 32> bytes);
  static FieldElement from_hex(std::string_view hex64);

  BigNat to_bignat() const { return BigNat::from_limbs({limbs_.begin(), limbs_.end()}); }
  std::array<std::uint8_t, 32> to_bytes() const;
  std::string to_hex() const;

  bool is_zero() const noexcept { return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0; }
  const Limbs& limbs() const noexcept { return limbs_; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const { return FieldElement{} - *this; }
  FieldElement square() const { return *this * *this; }

 private:
  static FieldElement from_limbs_reduced(const Limbs& l);
  Limbs limbs_{};
};

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);
// Fermat inversion a^(p-2) through mod_pow; throws ZeroInverse for a == 0.
FieldElement fe_inv(const FieldElement& a);

// Residue modulo the group order q, canonical in [0, q).
class ScalarQ {
 public:
  ScalarQ() = default;
  // Reduces mod q.
  explicit ScalarQ(const BigNat& v);
  explicit ScalarQ(std::uint64_t v) : ScalarQ(BigNat(v)) {}

  static ScalarQ from_hex(std::string_view hex64);

  const BigNat& value() const noexcept { return value_; }
  std::array<std::uint8_t, 32> to_bytes() const;
  std::string to_hex() const { return value_.to_hex(64); }
  bool is_zero() const noexcept { return value_.is_zero(); }

  friend bool operator==(const ScalarQ&, const ScalarQ&) = default;
  friend ScalarQ operator+(const ScalarQ& a, const ScalarQ& b);
  friend ScalarQ operator*(const ScalarQ& a, const ScalarQ& b);

 private:
  BigNat value_;
};

// Big-endian integer of a 32- or 64-byte string, reduced mod q.
// Throws BadLength for any other length.
ScalarQ sc_reduce_wide(std::span<const std::uint8_t> bytes);

}  // namespace abc
