#include <gtest/gtest.h>

#include "abc/error.hpp"
#include "abc/scheme.hpp"
#include "support/support.hpp"

using namespace abc;
using namespace abc::scheme;

namespace {

const ModexpIssuerKey& shared_rsa_key() {
  static const ModexpIssuerKey key = [] {
    SeededRng rng(4242);
    return rsa_keygen(rng);
  }();
  return key;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Undefined;
}

}  // namespace

TEST(Attributes, FixturesAndBounds) {
  EXPECT_EQ(fixture_attribute_decimals().size(), 10u);
  EXPECT_EQ(fixture_attribute_decimals()[0], "3022871045856445402");
  EXPECT_EQ(fixture_attribute_decimals()[9], "2930303348526267");
  EXPECT_EQ(fixture_attributes(5).size(), 5u);
  EXPECT_EQ(code_of([] { AttributeSet({}); }), ErrorCode::EmptyAttributes);
  EXPECT_EQ(code_of([] { (void)fixture_attributes(11); }), ErrorCode::TooManyAttributes);
  EXPECT_EQ(code_of([] { Attribute a(group_order()); }), ErrorCode::AttributeRange);
  EXPECT_EQ(code_of([] { (void)derive_generator(10); }), ErrorCode::IndexOutOfRange);
}

TEST(Attributes, GeneratorsDistinctAndDeterministic) {
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_TRUE(curve::is_valid(derive_generator(i)));
    EXPECT_TRUE(curve::point_equal(derive_generator(i), derive_generator(i)));
    for (std::size_t j = i + 1; j < 10; ++j) {
      EXPECT_FALSE(curve::point_equal(derive_generator(i), derive_generator(j)));
    }
  }
}

TEST(Ecc, CompletenessOnFixtures) {
  SeededRng rng(51);
  auto key = ecc_keygen(rng);
  for (std::size_t n : {1u, 5u, 10u}) {
    auto cred = ecc_issue(key, fixture_attributes(n), rng);
    EXPECT_TRUE(ecc_verify(key.pub, cred)) << n;
  }
}

TEST(Ecc, MutationsRejected) {
  SeededRng rng(52);
  auto key = ecc_keygen(rng);
  auto cred = ecc_issue(key, fixture_attributes(10), rng);
  for (int i = 0; i < 200; ++i) {
    EXPECT_FALSE(ecc_verify(key.pub, abc::testing::mutate(cred, rng))) << i;
  }
  auto other = ecc_keygen(rng);
  EXPECT_FALSE(ecc_verify(other.pub, cred));
}

TEST(Ecc, CommitmentIsHomomorphic) {
  auto a = AttributeSet::from_decimals({"11", "22", "33"});
  auto b = AttributeSet::from_decimals({"5", "6", "7"});
  auto sum = AttributeSet::from_decimals({"16", "28", "40"});
  EXPECT_TRUE(curve::point_equal(curve::point_add(ecc_commit(a), ecc_commit(b)), ecc_commit(sum)));
}

TEST(Ecc, SeededIssuanceIsDeterministic) {
  SeededRng r1(7), r2(7);
  auto k1 = ecc_keygen(r1);
  auto k2 = ecc_keygen(r2);
  EXPECT_EQ(k1.secret, k2.secret);
  auto c1 = ecc_issue(k1, fixture_attributes(3), r1);
  auto c2 = ecc_issue(k2, fixture_attributes(3), r2);
  EXPECT_EQ(c1.response, c2.response);
  EXPECT_TRUE(curve::point_equal(c1.nonce_point, c2.nonce_point));
}

TEST(Modexp, KeyStructure) {
  const auto& key = shared_rsa_key();
  EXPECT_EQ(bit_length(key.n), 1024u);
  EXPECT_EQ(key.p1 * key.p2, key.n);
  BigNat lambda = lcm(key.p1 - BigNat(1), key.p2 - BigNat(1));
  EXPECT_EQ(key.e * key.d % lambda, BigNat(1));
  EXPECT_EQ(gcd(key.e, lambda), BigNat(1));
}

TEST(Modexp, PrimalityOnKnownValues) {
  SeededRng rng(53);
  EXPECT_TRUE(is_probable_prime(field_prime(), 20, rng));
  EXPECT_TRUE(is_probable_prime(group_order(), 20, rng));
  EXPECT_FALSE(is_probable_prime(BigNat(561), 20, rng));  // Carmichael
  EXPECT_FALSE(is_probable_prime(field_prime() * group_order(), 20, rng));
  EXPECT_TRUE(is_probable_prime(BigNat(2), 20, rng));
}

TEST(Modexp, CompletenessAndMutations) {
  const auto& key = shared_rsa_key();
  for (std::size_t n : {1u, 5u, 10u}) {
    EXPECT_TRUE(rsa_verify(key.public_key(), rsa_issue(key, fixture_attributes(n))));
  }
  SeededRng rng(54);
  auto cred = rsa_issue(key, fixture_attributes(10));
  for (int i = 0; i < 200; ++i) {
    EXPECT_FALSE(rsa_verify(key.public_key(), abc::testing::mutate(cred, key.n, rng))) << i;
  }
  auto oversized = cred;
  oversized.signature = cred.signature + key.n;
  EXPECT_FALSE(rsa_verify(key.public_key(), oversized));
}

TEST(Modexp, FdhIsDeterministicAndBelowModulus) {
  const auto& key = shared_rsa_key();
  auto h = fdh(fixture_attributes(4), key.n);
  EXPECT_EQ(h, fdh(fixture_attributes(4), key.n));
  EXPECT_LT(h, key.n);
  EXPECT_NE(h, fdh(fixture_attributes(5), key.n));
  EXPECT_EQ(code_of([] { (void)fdh(fixture_attributes(1), BigNat(1000003)); }), ErrorCode::BadModulus);
}
