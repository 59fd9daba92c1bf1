#include "abc/scheme.hpp"

#include <array>

#include "abc/error.hpp"
#include "abc/hash.hpp"

namespace abc::scheme {

namespace {

constexpr std::string_view kGeneratorTag = "abc-gen-v1";
constexpr std::string_view kSignatureTag = "abc-sig-v1";

void append_point(Sha256& h, const curve::ExtendedPoint& p) {
  auto aff = curve::to_affine(p);
  h.update(aff.x.to_bytes());
  h.update(aff.y.to_bytes());
}

std::array<curve::ExtendedPoint, kMaxAttributes> compute_generators() {
  std::array<curve::ExtendedPoint, kMaxAttributes> gens;
  for (std::size_t i = 0; i < kMaxAttributes; ++i) {
    const std::uint8_t index = static_cast<std::uint8_t>(i);
    Digest digest = Sha256().update(kGeneratorTag).update({&index, 1}).finish();
    gens[i] = curve::scalar_mul(sc_reduce_wide(digest), curve::base_point());
  }
  return gens;
}

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 3; c < 2000; c += 2) {
      bool prime = true;
      for (auto p : out) {
        if (p * p > c) break;
        if (c % p == 0) {
          prime = false;
          break;
        }
      }
      if (prime) out.push_back(c);
    }
    return out;
  }();
  return primes;
}

}  // namespace

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::Ecc160:
      return "ecc160";
    case SchemeId::Modexp1024:
      return "modexp1024";
  }
  return "unknown";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
  if (name == "ecc160") return SchemeId::Ecc160;
  if (name == "modexp1024") return SchemeId::Modexp1024;
  return std::nullopt;
}

Attribute::Attribute(BigNat value) : value_(std::move(value)) {
  if (value_ >= group_order()) {
    throw Error(ErrorCode::AttributeRange, "attribute must be below the group order");
  }
}

Attribute Attribute::from_decimal(std::string_view text) { return Attribute(BigNat::from_decimal(text)); }

AttributeSet::AttributeSet(std::vector<Attribute> attrs) : attrs_(std::move(attrs)) {
  if (attrs_.empty()) throw Error(ErrorCode::EmptyAttributes, "attribute set is empty");
  if (attrs_.size() > kMaxAttributes) {
    throw Error(ErrorCode::TooManyAttributes,
                std::to_string(attrs_.size()) + " attributes, at most 10 allowed");
  }
}

AttributeSet AttributeSet::from_decimals(const std::vector<std::string>& values) {
  if (values.size() > kMaxAttributes) {
    throw Error(ErrorCode::TooManyAttributes,
                std::to_string(values.size()) + " attributes, at most 10 allowed");
  }
  std::vector<Attribute> attrs;
  attrs.reserve(values.size());
  for (const auto& v : values) attrs.push_back(Attribute::from_decimal(v));
  return AttributeSet(std::move(attrs));
}

const std::vector<std::string>& fixture_attribute_decimals() {
  static const std::vector<std::string> values = {
      "3022871045856445402",
      "2303921356947",
      "63990592803",
      "63188281798077",
      "2334544185927680150715",
      "72478959060716899515",
      "132108418240270107954363",
      "53359477949683103",
      "393090009322226684739352798186683",
      "2930303348526267",
  };
  return values;
}

AttributeSet fixture_attributes(std::size_t count) {
  const auto& all = fixture_attribute_decimals();
  if (count == 0) throw Error(ErrorCode::EmptyAttributes, "attribute count must be at least 1");
  if (count > all.size()) throw Error(ErrorCode::TooManyAttributes, "at most 10 fixture attributes");
  return AttributeSet::from_decimals({all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count)});
}

std::vector<std::uint8_t> encode_attributes(const AttributeSet& attrs) {
  std::vector<std::uint8_t> out;
  out.reserve(1 + 32 * attrs.size());
  out.push_back(static_cast<std::uint8_t>(attrs.size()));
  for (const auto& a : attrs.values()) {
    auto bytes = a.value().to_bytes_be(32);
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  return out;
}

curve::ExtendedPoint derive_generator(std::size_t index) {
  if (index >= kMaxAttributes) {
    throw Error(ErrorCode::IndexOutOfRange, "generator index " + std::to_string(index) + " outside 0..9");
  }
  static const auto generators = compute_generators();
  return generators[index];
}

EccIssuerKey ecc_keygen(Rng& rng) {
  BigNat x = rng.uniform_below(group_order() - BigNat(1)) + BigNat(1);
  EccIssuerKey key{ScalarQ(x), curve::neutral()};
  key.pub = curve::scalar_mul(key.secret, curve::base_point());
  return key;
}

curve::ExtendedPoint ecc_commit(const AttributeSet& attrs) {
  curve::ExtendedPoint acc = curve::neutral();
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    acc = curve::point_add(acc, curve::scalar_mul(attrs[i].value(), derive_generator(i)));
  }
  return acc;
}

ScalarQ ecc_challenge(const curve::ExtendedPoint& pub, const curve::ExtendedPoint& commitment,
                      const curve::ExtendedPoint& nonce_point, const AttributeSet& attrs) {
  Sha256 h;
  h.update(kSignatureTag);
  append_point(h, pub);
  append_point(h, commitment);
  append_point(h, nonce_point);
  h.update(encode_attributes(attrs));
  return sc_reduce_wide(h.finish());
}

EccCredential ecc_issue(const EccIssuerKey& key, const AttributeSet& attrs, Rng& rng) {
  curve::ExtendedPoint commitment = ecc_commit(attrs);
  ScalarQ nonce(rng.uniform_below(group_order() - BigNat(1)) + BigNat(1));
  curve::ExtendedPoint nonce_point = curve::scalar_mul(nonce, curve::base_point());
  ScalarQ c = ecc_challenge(key.pub, commitment, nonce_point, attrs);
  return {attrs, commitment, nonce_point, nonce + c * key.secret};
}

bool ecc_verify(const curve::ExtendedPoint& pub, const EccCredential& cred) {
  if (!curve::is_valid(pub) || !curve::is_valid(cred.commitment) || !curve::is_valid(cred.nonce_point)) {
    throw Error(ErrorCode::MalformedPoint, "credential or key point is not on the curve");
  }
  if (!curve::point_equal(ecc_commit(cred.attributes), cred.commitment)) return false;
  ScalarQ c = ecc_challenge(pub, cred.commitment, cred.nonce_point, cred.attributes);
  curve::ExtendedPoint lhs = curve::scalar_mul(cred.response, curve::base_point());
  curve::ExtendedPoint rhs = curve::point_add(cred.nonce_point, curve::scalar_mul(c, pub));
  return curve::point_equal(lhs, rhs);
}

bool is_probable_prime(const BigNat& n, int rounds, Rng& rng) {
  if (n < BigNat(2)) return false;
  if (n < BigNat(4)) return true;
  if (!n.is_odd()) return false;
  for (auto p : small_primes()) {
    if (n == BigNat(p)) return true;
    if ((n % BigNat(p)).is_zero()) return false;
  }

  const BigNat n_minus_1 = n - BigNat(1);
  std::size_t s = 0;
  while (!n_minus_1.test_bit(s)) ++s;
  const BigNat r = n_minus_1 >> s;
  const Montgomery mont(n);
  const BigNat base_span = n - BigNat(3);  // bases drawn from [2, n-2]

  for (int round = 0; round < rounds; ++round) {
    BigNat a = rng.uniform_below(base_span) + BigNat(2);
    BigNat x = mont.pow(a, r);
    if (x == BigNat(1) || x == n_minus_1) continue;
    bool composite = true;
    for (std::size_t i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BigNat random_prime(std::size_t bits, Rng& rng) {
  constexpr int kMaxCandidates = 100000;
  for (int attempt = 0; attempt < kMaxCandidates; ++attempt) {
    BigNat candidate = rng.random_bits(bits);
    // second-highest bit so that the product of two such primes has 2*bits bits
    if (!candidate.test_bit(bits - 2)) candidate = candidate + BigNat::power_of_two(bits - 2);
    if (!candidate.is_odd()) candidate = candidate + BigNat(1);
    if (is_probable_prime(candidate, kMillerRabinRounds, rng)) return candidate;
  }
  throw Error(ErrorCode::PrimeSearchExhausted, "no prime found within the candidate budget");
}

ModexpIssuerKey rsa_keygen(Rng& rng, PublicExponent exponent) {
  constexpr int kMaxKeyAttempts = 64;
  for (int attempt = 0; attempt < kMaxKeyAttempts; ++attempt) {
    BigNat p1 = random_prime(kPrimeBits, rng);
    BigNat p2 = random_prime(kPrimeBits, rng);
    if (p1 == p2) continue;
    BigNat n = p1 * p2;
    if (bit_length(n) != kModulusBits) continue;
    BigNat lambda = lcm(p1 - BigNat(1), p2 - BigNat(1));

    BigNat e;
    if (exponent == PublicExponent::F4) {
      e = BigNat(65537);
      if (gcd(e, lambda) != BigNat(1)) continue;
    } else {
      const std::size_t want_bits = lambda.bits() - 1;
      for (int tries = 0; tries < 256; ++tries) {
        BigNat cand = rng.uniform_below(lambda);
        if (!cand.is_odd()) cand = cand + BigNat(1);
        if (cand.bits() < want_bits || cand >= lambda) continue;
        if (gcd(cand, lambda) == BigNat(1)) {
          e = std::move(cand);
          break;
        }
      }
      if (e.is_zero()) continue;
    }
    BigNat d = mod_inverse(e, lambda);
    return {std::move(p1), std::move(p2), std::move(n), std::move(e), std::move(d)};
  }
  throw Error(ErrorCode::PrimeSearchExhausted, "RSA key generation exceeded its attempt budget");
}

BigNat fdh(const AttributeSet& attrs, const BigNat& n) {
  if (n.is_zero() || bit_length(n) != kModulusBits) {
    throw Error(ErrorCode::BadModulus, "full-domain hash needs a 1024-bit modulus");
  }
  const auto enc = encode_attributes(attrs);
  std::vector<std::uint8_t> block;
  block.reserve(4 * sizeof(Digest));
  for (std::uint8_t counter = 0; counter < 4; ++counter) {
    Digest d = Sha256().update(enc).update({&counter, 1}).finish();
    block.insert(block.end(), d.begin(), d.end());
  }
  // 1024 bits of digest, keep the leading 1016.
  block.pop_back();
  return BigNat::from_bytes_be(block);
}

ModexpCredential rsa_issue(const ModexpIssuerKey& key, const AttributeSet& attrs) {
  return {attrs, mod_pow(fdh(attrs, key.n), key.d, key.n)};
}

bool rsa_verify(const ModexpPublicKey& pub, const ModexpCredential& cred) {
  if (cred.signature >= pub.n) return false;
  return mod_pow(cred.signature, pub.e, pub.n) == fdh(cred.attributes, pub.n);
}

}  // namespace abc::scheme
