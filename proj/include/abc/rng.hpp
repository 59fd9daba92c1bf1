#pragma once

#include <cstdint>
#include <span>

#include "abc/bignat.hpp"
#include "abc/hash.hpp"

namespace abc {

// Source of uniform bytes. Not thread-safe; one handle per thread.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint64_t next_u64();
  // Uniform in [0, bound) by rejection sampling; bound must be nonzero.
  BigNat uniform_below(const BigNat& bound);
  // Uniform integer with exactly `bits` bits (top bit forced to one).
  BigNat random_bits(std::size_t bits);
};

// Deterministic stream: SHA-256(seed || counter) blocks.
class SeededRng final : public Rng {
 public:
  explicit SeededRng(std::uint64_t seed);
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = sizeof(Digest);
};

// Operating-system entropy (getrandom). Throws RngFailure if unavailable.
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

}  // namespace abc
