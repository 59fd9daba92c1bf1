#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abc/bignat.hpp"
#include "abc/curve.hpp"
#include "abc/field.hpp"
#include "abc/rng.hpp"

namespace abc::scheme {

enum class SchemeId { Ecc160, Modexp1024 };

std::string_view scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);

inline constexpr std::size_t kMaxAttributes = 10;

// Non-negative integer below q, written in decimal on the wire.
class Attribute {
 public:
  // Throws AttributeRange if value >= q.
  explicit Attribute(BigNat value);
  static Attribute from_decimal(std::string_view text);

  const BigNat& value() const noexcept { return value_; }
  std::string to_decimal() const { return value_.to_decimal(); }

  friend bool operator==(const Attribute&, const Attribute&) = default;

 private:
  BigNat value_;
};

// Ordered list of 1..10 attributes.
class AttributeSet {
 public:
  // Throws EmptyAttributes / TooManyAttributes.
  explicit AttributeSet(std::vector<Attribute> attrs);
  static AttributeSet from_decimals(const std::vector<std::string>& values);

  const std::vector<Attribute>& values() const noexcept { return attrs_; }
  std::size_t size() const noexcept { return attrs_.size(); }
  const Attribute& operator[](std::size_t i) const { return attrs_[i]; }

  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;

 private:
  std::vector<Attribute> attrs_;
};

// The ten fixture attributes a0..a9 used by the evaluation grid.
const std::vector<std::string>& fixture_attribute_decimals();
// First `count` fixture attributes, 1 <= count <= 10.
AttributeSet fixture_attributes(std::size_t count);

// Count byte followed by each attribute as 32-byte big-endian.
std::vector<std::uint8_t> encode_attributes(const AttributeSet& attrs);

// H_i = h_i * B with h_i = sc_reduce_wide(SHA-256("abc-gen-v1" || i)).
// Throws IndexOutOfRange outside 0..9.
curve::ExtendedPoint derive_generator(std::size_t index);

// ---- ecc160: Pedersen-style commitment plus Schnorr signature ----

struct EccIssuerKey {
  ScalarQ secret;
  curve::ExtendedPoint pub;
};

struct EccCredential {
  AttributeSet attributes;
  curve::ExtendedPoint commitment;  // C
  curve::ExtendedPoint nonce_point;  // R
  ScalarQ response;                  // z
};

EccIssuerKey ecc_keygen(Rng& rng);
// C = sum a_i * H_i, accumulated left to right.
curve::ExtendedPoint ecc_commit(const AttributeSet& attrs);
// Fiat-Shamir challenge over (Q_pub, C, R, encoded attributes).
ScalarQ ecc_challenge(const curve::ExtendedPoint& pub, const curve::ExtendedPoint& commitment,
                      const curve::ExtendedPoint& nonce_point, const AttributeSet& attrs);
EccCredential ecc_issue(const EccIssuerKey& key, const AttributeSet& attrs, Rng& rng);
// Throws MalformedPoint if pub, C or R is not a valid curve point.
bool ecc_verify(const curve::ExtendedPoint& pub, const EccCredential& cred);

// ---- modexp1024: RSA full-domain-hash signature ----

inline constexpr std::size_t kModulusBits = 1024;
inline constexpr std::size_t kPrimeBits = 512;
inline constexpr int kMillerRabinRounds = 40;

enum class PublicExponent {
  F4,    // e = 65537
  Full,  // random e of the same size as lcm(p1-1, p2-1)
};

struct ModexpPublicKey {
  BigNat n;
  BigNat e;
};

struct ModexpIssuerKey {
  BigNat p1;
  BigNat p2;
  BigNat n;
  BigNat e;
  BigNat d;

  ModexpPublicKey public_key() const { return {n, e}; }
};

struct ModexpCredential {
  AttributeSet attributes;
  BigNat signature;
};

bool is_probable_prime(const BigNat& n, int rounds, Rng& rng);
// Random prime with exactly `bits` bits and its top two bits set.
// Throws PrimeSearchExhausted after a bounded number of candidates.
BigNat random_prime(std::size_t bits, Rng& rng);

ModexpIssuerKey rsa_keygen(Rng& rng, PublicExponent exponent = PublicExponent::Full);
// Four SHA-256 blocks of (enc || counter), truncated to 1016 bits.
// Throws BadModulus unless bit_length(n) == 1024.
BigNat fdh(const AttributeSet& attrs, const BigNat& n);
ModexpCredential rsa_issue(const ModexpIssuerKey& key, const AttributeSet& attrs);
bool rsa_verify(const ModexpPublicKey& pub, const ModexpCredential& cred);

}  // namespace abc::scheme
