#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace dba {

// Session random stream: std::mt19937_64 seeded with a single 64-bit value.
// The engine's output sequence is fixed by the C++ standard; every
// conversion below is written out here rather than delegated to the
// implementation-defined std:: distributions, so a seed reproduces the same
// draws on any conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits. One engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi). One engine draw.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform index in [0, n) by rejection, no modulo bias. n > 0.
  // Usually one engine draw; more only on rejection.
  std::size_t index(std::size_t n);

  // true with probability p. One engine draw.
  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller, using the cosine branch only. Two engine
  // draws, always; nothing is cached between calls.
  double gaussian();

  // Categorical draw over weights that sum to 1. Returns the first index
  // whose cumulative weight exceeds a single uniform draw; rounding slack
  // lands on the last index with positive weight.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dba
