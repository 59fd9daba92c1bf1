#include "abc/rng.hpp"

#include <sys/random.h>

#include <cerrno>
#include <vector>

#include "abc/error.hpp"

namespace abc {

std::uint64_t Rng::next_u64() {
  std::uint8_t buf[8];
  fill(buf);
  std::uint64_t v = 0;
  for (auto b : buf) v = v << 8 | b;
  return v;
}

BigNat Rng::uniform_below(const BigNat& bound) {
  if (bound.is_zero()) throw Error(ErrorCode::Undefined, "uniform_below(0)");
  const std::size_t bits = bound.bits();
  std::vector<std::uint8_t> buf((bits + 7) / 8);
  const unsigned excess = static_cast<unsigned>(buf.size() * 8 - bits);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    fill(buf);
    buf[0] &= static_cast<std::uint8_t>(0xFF >> excess);
    BigNat candidate = BigNat::from_bytes_be(buf);
    if (candidate < bound) return candidate;
  }
  throw Error(ErrorCode::RngFailure, "rejection sampling did not terminate");
}

BigNat Rng::random_bits(std::size_t bits) {
  if (bits == 0) return {};
  std::vector<std::uint8_t> buf((bits + 7) / 8);
  fill(buf);
  const unsigned excess = static_cast<unsigned>(buf.size() * 8 - bits);
  buf[0] &= static_cast<std::uint8_t>(0xFF >> excess);
  buf[0] |= static_cast<std::uint8_t>(0x80 >> excess);
  return BigNat::from_bytes_be(buf);
}

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed) {}

void SeededRng::fill(std::span<std::uint8_t> out) {
  for (auto& byte : out) {
    if (used_ == block_.size()) {
      std::uint8_t input[16];
      for (int i = 0; i < 8; ++i) {
        input[i] = static_cast<std::uint8_t>(seed_ >> (56 - 8 * i));
        input[8 + i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
      }
      block_ = sha256(input);
      ++counter_;
      used_ = 0;
    }
    byte = block_[used_++];
  }
}

void SystemRng::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    ssize_t n = getrandom(out.data() + done, out.size() - done, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::RngFailure, "getrandom failed");
    }
    done += static_cast<std::size_t>(n);
  }
}

}  // namespace abc
