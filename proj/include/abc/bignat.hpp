#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace abc {

// Arbitrary-precision natural number. Limbs are little-endian 64-bit words
// with no trailing zero limbs, so zero is the empty vector.
class BigNat {
 public:
  BigNat() = default;
  BigNat(std::uint64_t v);  // NOLINT(google-explicit-constructor)

  static BigNat from_decimal(std::string_view text);
  static BigNat from_hex(std::string_view text);
  static BigNat from_bytes_be(std::span<const std::uint8_t> bytes);
  static BigNat from_limbs(std::vector<std::uint64_t> limbs);
  static BigNat power_of_two(std::size_t exponent);

  std::string to_decimal() const;
  // Lowercase hex without leading zeros ("0" for zero).
  std::string to_hex() const;
  // Lowercase hex left-padded to exactly `width` characters; throws if it does not fit.
  std::string to_hex(std::size_t width) const;
  // Big-endian bytes left-padded to exactly `length`; throws if it does not fit.
  std::vector<std::uint8_t> to_bytes_be(std::size_t length) const;

  bool is_zero() const noexcept { return limbs_.empty(); }
  bool is_odd() const noexcept { return !limbs_.empty() && (limbs_[0] & 1U); }
  // Number of significant bits; 0 for zero.
  std::size_t bits() const noexcept;
  bool test_bit(std::size_t i) const noexcept;
  std::size_t popcount() const noexcept;
  std::uint64_t low_u64() const noexcept { return limbs_.empty() ? 0 : limbs_[0]; }
  const std::vector<std::uint64_t>& limbs() const noexcept { return limbs_; }

  friend bool operator==(const BigNat&, const BigNat&) = default;
  friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b);

  friend BigNat operator+(const BigNat& a, const BigNat& b);
  // Throws Undefined when b > a (no negative values).
  friend BigNat operator-(const BigNat& a, const BigNat& b);
  friend BigNat operator*(const BigNat& a, const BigNat& b);
  friend BigNat operator/(const BigNat& a, const BigNat& b);
  friend BigNat operator%(const BigNat& a, const BigNat& b);
  friend BigNat operator<<(const BigNat& a, std::size_t shift);
  friend BigNat operator>>(const BigNat& a, std::size_t shift);

  BigNat& operator+=(const BigNat& b) { return *this = *this + b; }
  BigNat& operator-=(const BigNat& b) { return *this = *this - b; }
  BigNat& operator*=(const BigNat& b) { return *this = *this * b; }
  BigNat& operator%=(const BigNat& b) { return *this = *this % b; }

  // Quotient and remainder; throws Undefined on division by zero.
  static std::pair<BigNat, BigNat> divmod(const BigNat& a, const BigNat& b);

 private:
  void normalize();
  std::vector<std::uint64_t> limbs_;
};

// base^exp mod modulus; exp == 0 yields 1 (reduced mod modulus).
// Throws BadModulus when modulus < 2.
BigNat mod_pow(const BigNat& base, const BigNat& exp, const BigNat& modulus);

// Exact bit count of n (position of the highest set bit plus one).
// Throws Undefined for n == 0.
std::size_t bit_length(const BigNat& n);

BigNat gcd(BigNat a, BigNat b);
BigNat lcm(const BigNat& a, const BigNat& b);

// Inverse of a modulo m via extended Euclid; throws ZeroInverse when gcd(a, m) != 1.
BigNat mod_inverse(const BigNat& a, const BigNat& m);

// Montgomery arithmetic for a fixed odd modulus. Reused by mod_pow and by
// the Miller-Rabin loop, where the same modulus is exponentiated many times.
class Montgomery {
 public:
  explicit Montgomery(const BigNat& modulus);

  const BigNat& modulus() const noexcept { return modulus_; }
  BigNat pow(const BigNat& base, const BigNat& exp) const;

 private:
  using Limbs = std::vector<std::uint64_t>;

  Limbs to_mont(const BigNat& x) const;
  BigNat from_mont(const Limbs& x) const;
  void mul(const Limbs& a, const Limbs& b, Limbs& out, Limbs& scratch) const;

  BigNat modulus_;
  Limbs mod_limbs_;
  std::size_t n_ = 0;
  std::uint64_t n0_inv_ = 0;  // -m^{-1} mod 2^64
  Limbs r2_;                  // R^2 mod m
};

}  // namespace abc
