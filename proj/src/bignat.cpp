#include "abc/bignat.hpp"

#include <algorithm>
#include <bit>

#include "abc/error.hpp"

namespace abc {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kDecimalChunk = 10000000000000000000ULL;  // 10^19
constexpr std::size_t kDecimalChunkDigits = 19;

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Divides limbs in place by a single word, returning the remainder.
std::uint64_t div_small(std::vector<std::uint64_t>& limbs, std::uint64_t divisor) {
  u128 rem = 0;
  for (std::size_t i = limbs.size(); i-- > 0;) {
    u128 cur = (rem << 64) | limbs[i];
    limbs[i] = static_cast<std::uint64_t>(cur / divisor);
    rem = cur % divisor;
  }
  while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
  return static_cast<std::uint64_t>(rem);
}

void mul_add_small(std::vector<std::uint64_t>& limbs, std::uint64_t mul, std::uint64_t add) {
  u128 carry = add;
  for (auto& limb : limbs) {
    u128 cur = static_cast<u128>(limb) * mul + carry;
    limb = static_cast<std::uint64_t>(cur);
    carry = cur >> 64;
  }
  if (carry != 0) limbs.push_back(static_cast<std::uint64_t>(carry));
}

}  // namespace

BigNat::BigNat(std::uint64_t v) {
  if (v != 0) limbs_.push_back(v);
}

void BigNat::normalize() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigNat BigNat::from_limbs(std::vector<std::uint64_t> limbs) {
  BigNat r;
  r.limbs_ = std::move(limbs);
  r.normalize();
  return r;
}

BigNat BigNat::power_of_two(std::size_t exponent) {
  BigNat r;
  r.limbs_.assign(exponent / 64 + 1, 0);
  r.limbs_.back() = std::uint64_t{1} << (exponent % 64);
  return r;
}

BigNat BigNat::from_decimal(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty decimal string");
  BigNat r;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t take = std::min(kDecimalChunkDigits, text.size() - pos);
    std::uint64_t chunk = 0;
    std::uint64_t scale = 1;
    for (std::size_t i = 0; i < take; ++i) {
      char c = text[pos + i];
      if (c < '0' || c > '9') {
        throw Error(ErrorCode::ParseError, "invalid decimal digit in '" + std::string(text) + "'");
      }
      chunk = chunk * 10 + static_cast<std::uint64_t>(c - '0');
      scale *= 10;
    }
    mul_add_small(r.limbs_, scale, chunk);
    r.normalize();
    pos += take;
  }
  return r;
}

BigNat BigNat::from_hex(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty hex string");
  BigNat r;
  r.limbs_.assign((text.size() + 15) / 16, 0);
  std::size_t bit = 0;
  for (std::size_t i = text.size(); i-- > 0;) {
    int v = hex_value(text[i]);
    if (v < 0) throw Error(ErrorCode::ParseError, "invalid hex digit in '" + std::string(text) + "'");
    r.limbs_[bit / 64] |= static_cast<std::uint64_t>(v) << (bit % 64);
    bit += 4;
  }
  r.normalize();
  return r;
}

BigNat BigNat::from_bytes_be(std::span<const std::uint8_t> bytes) {
  BigNat r;
  r.limbs_.assign((bytes.size() + 7) / 8, 0);
  std::size_t bit = 0;
  for (std::size_t i = bytes.size(); i-- > 0;) {
    r.limbs_[bit / 64] |= static_cast<std::uint64_t>(bytes[i]) << (bit % 64);
    bit += 8;
  }
  r.normalize();
  return r;
}

std::string BigNat::to_decimal() const {
  if (is_zero()) return "0";
  std::vector<std::uint64_t> work = limbs_;
  std::vector<std::uint64_t> chunks;
  while (!work.empty()) chunks.push_back(div_small(work, kDecimalChunk));
  std::string out = std::to_string(chunks.back());
  for (std::size_t i = chunks.size() - 1; i-- > 0;) {
    std::string part = std::to_string(chunks[i]);
    out.append(kDecimalChunkDigits - part.size(), '0');
    out += part;
  }
  return out;
}

std::string BigNat::to_hex() const {
  if (is_zero()) return "0";
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  std::size_t nibbles = (bits() + 3) / 4;
  out.reserve(nibbles);
  for (std::size_t i = nibbles; i-- > 0;) {
    out.push_back(kDigits[(limbs_[i / 16] >> ((i % 16) * 4)) & 0xF]);
  }
  return out;
}

std::string BigNat::to_hex(std::size_t width) const {
  std::string digits = is_zero() ? std::string() : to_hex();
  if (digits.size() > width) {
    throw Error(ErrorCode::BadLength, "value needs " + std::to_string(digits.size()) +
                                          " hex digits, width is " + std::to_string(width));
  }
  return std::string(width - digits.size(), '0') + digits;
}

std::vector<std::uint8_t> BigNat::to_bytes_be(std::size_t length) const {
  if ((bits() + 7) / 8 > length) {
    throw Error(ErrorCode::BadLength, "value does not fit in " + std::to_string(length) + " bytes");
  }
  std::vector<std::uint8_t> out(length, 0);
  for (std::size_t i = 0; i < limbs_.size() * 8 && i < length; ++i) {
    out[length - 1 - i] = static_cast<std::uint8_t>(limbs_[i / 8] >> ((i % 8) * 8));
  }
  return out;
}

std::size_t BigNat::bits() const noexcept {
  if (limbs_.empty()) return 0;
  return limbs_.size() * 64 - static_cast<std::size_t>(std::countl_zero(limbs_.back()));
}

bool BigNat::test_bit(std::size_t i) const noexcept {
  if (i / 64 >= limbs_.size()) return false;
  return (limbs_[i / 64] >> (i % 64)) & 1U;
}

std::size_t BigNat::popcount() const noexcept {
  std::size_t count = 0;
  for (auto limb : limbs_) count += static_cast<std::size_t>(std::popcount(limb));
  return count;
}

std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() <=> b.limbs_.size();
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
  }
  return std::strong_ordering::equal;
}

BigNat operator+(const BigNat& a, const BigNat& b) {
  const auto& longer = a.limbs_.size() >= b.limbs_.size() ? a.limbs_ : b.limbs_;
  const auto& shorter = a.limbs_.size() >= b.limbs_.size() ? b.limbs_ : a.limbs_;
  BigNat r;
  r.limbs_.resize(longer.size() + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < longer.size(); ++i) {
    u128 s = static_cast<u128>(longer[i]) + (i < shorter.size() ? shorter[i] : 0) + carry;
    r.limbs_[i] = static_cast<std::uint64_t>(s);
    carry = static_cast<std::uint64_t>(s >> 64);
  }
  r.limbs_[longer.size()] = carry;
  r.normalize();
  return r;
}

BigNat operator-(const BigNat& a, const BigNat& b) {
  if (a < b) throw Error(ErrorCode::Undefined, "natural subtraction would go negative");
  BigNat r;
  r.limbs_.resize(a.limbs_.size());
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::uint64_t bi = i < b.limbs_.size() ? b.limbs_[i] : 0;
    std::uint64_t t = a.limbs_[i] - bi;
    std::uint64_t b1 = a.limbs_[i] < bi;
    std::uint64_t t2 = t - borrow;
    std::uint64_t b2 = t < borrow;
    r.limbs_[i] = t2;
    borrow = b1 | b2;
  }
  r.normalize();
  return r;
}

BigNat operator*(const BigNat& a, const BigNat& b) {
  if (a.is_zero() || b.is_zero()) return {};
  BigNat r;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      u128 cur = static_cast<u128>(a.limbs_[i]) * b.limbs_[j] + r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<std::uint64_t>(cur);
      carry = static_cast<std::uint64_t>(cur >> 64);
    }
    r.limbs_[i + b.limbs_.size()] = carry;
  }
  r.normalize();
  return r;
}

BigNat operator<<(const BigNat& a, std::size_t shift) {
  if (a.is_zero()) return {};
  std::size_t words = shift / 64;
  unsigned bits = static_cast<unsigned>(shift % 64);
  BigNat r;
  r.limbs_.assign(a.limbs_.size() + words + 1, 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    r.limbs_[i + words] |= a.limbs_[i] << bits;
    if (bits != 0) r.limbs_[i + words + 1] |= a.limbs_[i] >> (64 - bits);
  }
  r.normalize();
  return r;
}

BigNat operator>>(const BigNat& a, std::size_t shift) {
  std::size_t words = shift / 64;
  if (words >= a.limbs_.size()) return {};
  unsigned bits = static_cast<unsigned>(shift % 64);
  BigNat r;
  r.limbs_.assign(a.limbs_.size() - words, 0);
  for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
    r.limbs_[i] = a.limbs_[i + words] >> bits;
    if (bits != 0 && i + words + 1 < a.limbs_.size()) {
      r.limbs_[i] |= a.limbs_[i + words + 1] << (64 - bits);
    }
  }
  r.normalize();
  return r;
}

std::pair<BigNat, BigNat> BigNat::divmod(const BigNat& a, const BigNat& b) {
  if (b.is_zero()) throw Error(ErrorCode::Undefined, "division by zero");
  if (a < b) return {BigNat{}, a};
  if (b.limbs_.size() == 1) {
    BigNat q = a;
    std::uint64_t rem = div_small(q.limbs_, b.limbs_[0]);
    return {std::move(q), BigNat(rem)};
  }

  // Knuth, TAOCP vol. 2, 4.3.1 Algorithm D with 64-bit digits.
  const unsigned shift = static_cast<unsigned>(std::countl_zero(b.limbs_.back()));
  std::vector<std::uint64_t> v = (b << shift).limbs_;
  std::vector<std::uint64_t> u = (a << shift).limbs_;
  u.resize(a.limbs_.size() + 1, 0);
  const std::size_t n = v.size();
  const std::size_t m = u.size() - n;
  std::vector<std::uint64_t> q(m, 0);

  for (std::size_t j = m; j-- > 0;) {
    u128 num = (static_cast<u128>(u[j + n]) << 64) | u[j + n - 1];
    u128 qhat = num / v[n - 1];
    u128 rhat = num % v[n - 1];
    while (qhat >> 64 != 0 ||
           qhat * v[n - 2] > ((rhat << 64) | u[j + n - 2])) {
      --qhat;
      rhat += v[n - 1];
      if (rhat >> 64 != 0) break;
    }

    std::uint64_t carry = 0;
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < n; ++i) {
      u128 p = qhat * v[i] + carry;
      carry = static_cast<std::uint64_t>(p >> 64);
      auto plo = static_cast<std::uint64_t>(p);
      std::uint64_t ui = u[i + j];
      std::uint64_t t = ui - plo;
      std::uint64_t b1 = ui < plo;
      std::uint64_t t2 = t - borrow;
      std::uint64_t b2 = t < borrow;
      u[i + j] = t2;
      borrow = b1 + b2;
    }
    std::uint64_t top = u[j + n];
    std::uint64_t t = top - carry;
    std::uint64_t b1 = top < carry;
    std::uint64_t t2 = t - borrow;
    std::uint64_t b2 = t < borrow;
    u[j + n] = t2;

    if (b1 | b2) {
      // qhat was one too large; add the divisor back.
      --qhat;
      std::uint64_t c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        u128 s = static_cast<u128>(u[i + j]) + v[i] + c;
        u[i + j] = static_cast<std::uint64_t>(s);
        c = static_cast<std::uint64_t>(s >> 64);
      }
      u[j + n] += c;
    }
    q[j] = static_cast<std::uint64_t>(qhat);
  }

  u.resize(n);
  BigNat rem = BigNat::from_limbs(std::move(u)) >> shift;
  return {BigNat::from_limbs(std::move(q)), std::move(rem)};
}

BigNat operator/(const BigNat& a, const BigNat& b) { return BigNat::divmod(a, b).first; }
BigNat operator%(const BigNat& a, const BigNat& b) { return BigNat::divmod(a, b).second; }

std::size_t bit_length(const BigNat& n) {
  if (n.is_zero()) throw Error(ErrorCode::Undefined, "bit_length of zero");
  return n.bits();
}

BigNat gcd(BigNat a, BigNat b) {
  while (!b.is_zero()) {
    BigNat r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigNat lcm(const BigNat& a, const BigNat& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return a / gcd(a, b) * b;
}

BigNat mod_inverse(const BigNat& a, const BigNat& m) {
  if (m < BigNat(2)) throw Error(ErrorCode::BadModulus, "modulus must be at least 2");
  // Bezout coefficients are kept reduced mod m so everything stays natural.
  BigNat r0 = m;
  BigNat r1 = a % m;
  BigNat s0 = 0;
  BigNat s1 = 1;
  while (!r1.is_zero()) {
    auto [quot, rem] = BigNat::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    BigNat qs = (quot * s1) % m;
    BigNat next = s0 >= qs ? s0 - qs : s0 + m - qs;
    s0 = std::move(s1);
    s1 = std::move(next);
  }
  if (r0 != BigNat(1)) throw Error(ErrorCode::ZeroInverse, "value is not invertible modulo m");
  return s0;
}

Montgomery::Montgomery(const BigNat& modulus) : modulus_(modulus) {
  if (modulus < BigNat(3) || !modulus.is_odd()) {
    throw Error(ErrorCode::BadModulus, "Montgomery form needs an odd modulus >= 3");
  }
  mod_limbs_ = modulus.limbs();
  n_ = mod_limbs_.size();
  // Newton iteration for m0^{-1} mod 2^64; each step doubles the correct bits.
  std::uint64_t inv = 1;
  for (int i = 0; i < 6; ++i) inv *= 2 - mod_limbs_[0] * inv;
  n0_inv_ = ~inv + 1;
  r2_ = (BigNat::power_of_two(128 * n_) % modulus_).limbs();
  r2_.resize(n_, 0);
}

// CIOS Montgomery product: out = a * b * R^{-1} mod m, all operands n limbs.
void Montgomery::mul(const Limbs& a, const Limbs& b, Limbs& out, Limbs& t) const {
  t.assign(n_ + 2, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      u128 cur = static_cast<u128>(a[j]) * b[i] + t[j] + carry;
      t[j] = static_cast<std::uint64_t>(cur);
      carry = static_cast<std::uint64_t>(cur >> 64);
    }
    u128 cur = static_cast<u128>(t[n_]) + carry;
    t[n_] = static_cast<std::uint64_t>(cur);
    t[n_ + 1] = static_cast<std::uint64_t>(cur >> 64);

    std::uint64_t factor = t[0] * n0_inv_;
    cur = static_cast<u128>(factor) * mod_limbs_[0] + t[0];
    carry = static_cast<std::uint64_t>(cur >> 64);
    for (std::size_t j = 1; j < n_; ++j) {
      cur = static_cast<u128>(factor) * mod_limbs_[j] + t[j] + carry;
      t[j - 1] = static_cast<std::uint64_t>(cur);
      carry = static_cast<std::uint64_t>(cur >> 64);
    }
    cur = static_cast<u128>(t[n_]) + carry;
    t[n_ - 1] = static_cast<std::uint64_t>(cur);
    t[n_] = t[n_ + 1] + static_cast<std::uint64_t>(cur >> 64);
  }

  bool geq = t[n_] != 0;
  if (!geq) {
    geq = true;
    for (std::size_t i = n_; i-- > 0;) {
      if (t[i] != mod_limbs_[i]) {
        geq = t[i] > mod_limbs_[i];
        break;
      }
    }
  }
  out.resize(n_);
  if (geq) {
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint64_t x = t[i] - mod_limbs_[i];
      std::uint64_t b1 = t[i] < mod_limbs_[i];
      std::uint64_t y = x - borrow;
      std::uint64_t b2 = x < borrow;
      out[i] = y;
      borrow = b1 | b2;
    }
  } else {
    std::copy(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n_), out.begin());
  }
}

Montgomery::Limbs Montgomery::to_mont(const BigNat& x) const {
  Limbs xl = (x % modulus_).limbs();
  xl.resize(n_, 0);
  Limbs out;
  Limbs scratch;
  mul(xl, r2_, out, scratch);
  return out;
}

BigNat Montgomery::from_mont(const Limbs& x) const {
  Limbs one(n_, 0);
  one[0] = 1;
  Limbs out;
  Limbs scratch;
  mul(x, one, out, scratch);
  return BigNat::from_limbs(std::move(out));
}

BigNat Montgomery::pow(const BigNat& base, const BigNat& exp) const {
  Limbs x = to_mont(base);
  Limbs acc = to_mont(BigNat(1));
  Limbs tmp;
  Limbs scratch;
  for (std::size_t i = exp.bits(); i-- > 0;) {
    mul(acc, acc, tmp, scratch);
    acc.swap(tmp);
    if (exp.test_bit(i)) {
      mul(acc, x, tmp, scratch);
      acc.swap(tmp);
    }
  }
  return from_mont(acc);
}

BigNat mod_pow(const BigNat& base, const BigNat& exp, const BigNat& modulus) {
  if (modulus < BigNat(2)) throw Error(ErrorCode::BadModulus, "modulus must be at least 2");
  if (modulus.is_odd() && modulus > BigNat(2)) return Montgomery(modulus).pow(base, exp);

  BigNat b = base % modulus;
  BigNat acc = BigNat(1) % modulus;
  for (std::size_t i = exp.bits(); i-- > 0;) {
    acc = acc * acc % modulus;
    if (exp.test_bit(i)) acc = acc * b % modulus;
  }
  return acc;
}

}  // namespace abc
