#include "abc/field.hpp"

#include "abc/error.hpp"

namespace abc {

namespace {

using u128 = unsigned __int128;
using Limbs = FieldElement::Limbs;

constexpr Limbs kP = {0xFFFFFFFFFFFFFFEDULL, 0xFFFFFFFFFFFFFFFFULL, 0xFFFFFFFFFFFFFFFFULL,
                      0x7FFFFFFFFFFFFFFFULL};

bool geq_p(const Limbs& v) {
  for (std::size_t i = 4; i-- > 0;) {
    if (v[i] != kP[i]) return v[i] > kP[i];
  }
  return true;
}

void sub_p(Limbs& v) {
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(v[i]) - kP[i] - borrow;
    v[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1U;
  }
}

}  // namespace

const BigNat& field_prime() {
  static const BigNat p = BigNat::power_of_two(255) - BigNat(19);
  return p;
}

const BigNat& group_order() {
  static const BigNat q =
      BigNat::power_of_two(252) + BigNat::from_decimal("27742317777372353535851937790883648493");
  return q;
}

FieldElement FieldElement::from_limbs_reduced(const Limbs& l) {
  FieldElement r;
  r.limbs_ = l;
  while (geq_p(r.limbs_)) sub_p(r.limbs_);
  return r;
}

FieldElement FieldElement::from_bignat(const BigNat& v) {
  BigNat reduced = v % field_prime();
  Limbs l{};
  const auto& src = reduced.limbs();
  for (std::size_t i = 0; i < src.size(); ++i) l[i] = src[i];
  FieldElement r;
  r.limbs_ = l;
  return r;
}

FieldElement FieldElement::from_bytes(std::span<const std::uint8_t, 32> bytes) {
  Limbs l{};
  for (std::size_t i = 0; i < 32; ++i) {
    l[i / 8] |= static_cast<std::uint64_t>(bytes[31 - i]) << ((i % 8) * 8);
  }
  if (geq_p(l)) throw Error(ErrorCode::ParseError, "field encoding is not canonical");
  FieldElement r;
  r.limbs_ = l;
  return r;
}

FieldElement FieldElement::from_hex(std::string_view hex64) {
  if (hex64.size() != 64) throw Error(ErrorCode::BadLength, "field element hex must be 64 chars");
  auto bytes = BigNat::from_hex(hex64).to_bytes_be(32);
  return from_bytes(std::span<const std::uint8_t, 32>(bytes.data(), 32));
}

std::array<std::uint8_t, 32> FieldElement::to_bytes() const {
  std::array<std::uint8_t, 32> out{};
  for (std::size_t i = 0; i < 32; ++i) {
    out[31 - i] = static_cast<std::uint8_t>(limbs_[i / 8] >> ((i % 8) * 8));
  }
  return out;
}

std::string FieldElement::to_hex() const { return to_bignat().to_hex(64); }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  // a, b < p so a + b < 2p < 2^256: no carry out of the top limb.
  Limbs s{};
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    u128 t = static_cast<u128>(a.limbs_[i]) + b.limbs_[i] + carry;
    s[i] = static_cast<std::uint64_t>(t);
    carry = static_cast<std::uint64_t>(t >> 64);
  }
  return FieldElement::from_limbs_reduced(s);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  Limbs d{};
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    u128 t = static_cast<u128>(a.limbs_[i]) - b.limbs_[i] - borrow;
    d[i] = static_cast<std::uint64_t>(t);
    borrow = static_cast<std::uint64_t>(t >> 64) & 1U;
  }
  if (borrow != 0) {
    // wrapped below zero: add p back (mod 2^256)
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      u128 t = static_cast<u128>(d[i]) + kP[i] + carry;
      d[i] = static_cast<std::uint64_t>(t);
      carry = static_cast<std::uint64_t>(t >> 64);
    }
  }
  FieldElement r;
  r.limbs_ = d;
  return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  std::array<std::uint64_t, 8> t{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      u128 cur = static_cast<u128>(a.limbs_[i]) * b.limbs_[j] + t[i + j] + carry;
      t[i + j] = static_cast<std::uint64_t>(cur);
      carry = static_cast<std::uint64_t>(cur >> 64);
    }
    t[i + 4] = carry;
  }

  // 2^256 = 38 (mod p): fold the high half into the low half.
  Limbs r{};
  u128 carry = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    u128 cur = static_cast<u128>(t[i + 4]) * 38 + t[i] + carry;
    r[i] = static_cast<std::uint64_t>(cur);
    carry = cur >> 64;
  }
  // carry < 39; fold it once more, then at most one more carry of 1.
  u128 cur = static_cast<u128>(r[0]) + carry * 38;
  r[0] = static_cast<std::uint64_t>(cur);
  carry = cur >> 64;
  for (std::size_t i = 1; i < 4 && carry != 0; ++i) {
    cur = static_cast<u128>(r[i]) + carry;
    r[i] = static_cast<std::uint64_t>(cur);
    carry = cur >> 64;
  }
  if (carry != 0) {
    // Only reachable when r wrapped to a tiny value, so adding 38 cannot carry.
    r[0] += 38;
  }
  return FieldElement::from_limbs_reduced(r);
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement fe_sub(const FieldElement& a, const FieldElement& b) { return a - b; }
FieldElement fe_mul(const FieldElement& a, const FieldElement& b) { return a * b; }

FieldElement fe_inv(const FieldElement& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInverse, "zero has no inverse mod p");
  static const BigNat exponent = field_prime() - BigNat(2);
  return FieldElement::from_bignat(mod_pow(a.to_bignat(), exponent, field_prime()));
}

ScalarQ::ScalarQ(const BigNat& v) : value_(v < group_order() ? v : v % group_order()) {}

ScalarQ ScalarQ::from_hex(std::string_view hex64) {
  if (hex64.size() != 64) throw Error(ErrorCode::BadLength, "scalar hex must be 64 chars");
  BigNat v = BigNat::from_hex(hex64);
  if (v >= group_order()) throw Error(ErrorCode::ParseError, "scalar is not reduced mod q");
  return ScalarQ(v);
}

std::array<std::uint8_t, 32> ScalarQ::to_bytes() const {
  auto v = value_.to_bytes_be(32);
  std::array<std::uint8_t, 32> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

ScalarQ operator+(const ScalarQ& a, const ScalarQ& b) { return ScalarQ(a.value_ + b.value_); }
ScalarQ operator*(const ScalarQ& a, const ScalarQ& b) { return ScalarQ(a.value_ * b.value_); }

ScalarQ sc_reduce_wide(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != 32 && bytes.size() != 64) {
    throw Error(ErrorCode::BadLength, "sc_reduce_wide expects 32 or 64 bytes, got " +
                                          std::to_string(bytes.size()));
  }
  return ScalarQ(BigNat::from_bytes_be(bytes));
}

}  // namespace abc
