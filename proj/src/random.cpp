#include "zrank/random.hpp"

#include <cmath>

namespace zrank {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGoldenGamma;
  return mix64(state_);
}

Xoshiro256PlusPlus::Xoshiro256PlusPlus(std::uint64_t seed) {
  SplitMix64 seeder(seed);
  for (auto& word : state_) word = seeder.next();
}

std::uint64_t Xoshiro256PlusPlus::next() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Xoshiro256PlusPlus::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream) {
  return mix64(master_seed + (stream + 1) * kGoldenGamma);
}

namespace {

// One inversion walk; requires (1-p)^n to be a normal double, which the
// caller guarantees by splitting n.
std::int64_t binv(Xoshiro256PlusPlus& rng, std::int64_t n, double p) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = static_cast<double>(n + 1) * s;
  double r = std::exp(static_cast<double>(n) * std::log1p(-p));  // q^n
  double u = rng.uniform01();
  std::int64_t x = 0;
  while (u > r) {
    u -= r;
    ++x;
    if (x > n) return n;  // float residue past the top of the CDF
    r *= a / static_cast<double>(x) - s;
  }
  return x;
}

}  // namespace

std::int64_t sample_binomial(Xoshiro256PlusPlus& rng, std::int64_t n, double p) {
  if (n <= 0) return 0;
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n;
  if (p > 0.5) return n - sample_binomial(rng, n, 1.0 - p);

  // Keep n * |log(1-p)| < 700 so q^n stays away from the underflow horizon.
  const double log_q = std::log1p(-p);
  const std::int64_t chunk_max = static_cast<std::int64_t>(700.0 / -log_q);
  std::int64_t total = 0;
  std::int64_t remaining = n;
  while (remaining > chunk_max) {
    total += binv(rng, chunk_max, p);
    remaining -= chunk_max;
  }
  return total + binv(rng, remaining, p);
}

}  // namespace zrank
