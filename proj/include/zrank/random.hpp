// Seedable, cross-platform reproducible random source and exact binomial
// sampling for the calibration harness.
#pragma once

#include <array>
#include <cstdint>

namespace zrank {

// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014).  Used for seeding and stream derivation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// xoshiro256++ 1.0 (Blackman & Vigna 2019, prng.di.unimi.it).  State is
// initialized from SplitMix64 per the authors' recommendation.
class Xoshiro256PlusPlus {
 public:
  explicit Xoshiro256PlusPlus(std::uint64_t seed);
  std::uint64_t next();
  // Uniform on [0, 1), 53-bit resolution.
  double uniform01();

 private:
  std::array<std::uint64_t, 4> state_;
};

// Pure function of (master_seed, stream); lets trials run in any order, or in
// parallel, with bit-identical results.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream);

// Binomial(n, p) by exact CDF inversion (the BINV scheme of
// Kachitvichyanukul & Schmeiser 1988).  Large n is split into independent
// chunks so (1-p)^chunk never underflows; no normal approximation anywhere.
std::int64_t sample_binomial(Xoshiro256PlusPlus& rng, std::int64_t n, double p);

}  // namespace zrank
