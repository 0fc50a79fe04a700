// Monte Carlo calibration of the z-test: Type-I error rates under the null
// and family-wise error accumulation with and without Bonferroni.
#pragma once

#include <cstdint>
#include <vector>

#include "zrank/stats.hpp"

namespace zrank {

struct CalibrationSpec {
  double true_p1 = 0.10;
  double true_p2 = 0.10;
  std::int64_t n1 = 1;
  std::int64_t n2 = 1;
  std::int64_t trials = 1;
  std::vector<double> levels{0.05, 0.01};
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct FamilySpec {
  std::int64_t k = 2;  // institutions per trial
  std::int64_t n = 1;
  double true_p = 0.10;
  std::int64_t trials = 1;
  std::vector<double> levels{0.05};
  std::uint64_t seed = 0;
  Correction correction = Correction::bonferroni;

  void validate() const;
};

struct RejectionRate {
  double level;
  double rate;       // rejections / (trials - degenerate_trials)
  double std_error;  // sqrt(level * (1 - level) / trials)
};

struct CalibrationReport {
  std::vector<RejectionRate> rates;
  std::int64_t trials = 0;
  std::int64_t degenerate_trials = 0;  // excluded from the rate denominator
  std::int64_t family_k = 0;           // 0 in two-sample mode
  Correction correction = Correction::none;
  CalibrationSpec spec;  // echo of the generating parameters

  double rate_at(double level) const;  // throws if level missing
};

// Per trial: t1 ~ Binomial(n1, true_p1), t2 ~ Binomial(n2, true_p2), run the
// two-proportion test on the empirical proportions, count rejections per
// level.  Deterministic for a fixed seed.
CalibrationReport simulate_two_sample(const CalibrationSpec& spec);

// Per trial: draw k null institutions, build the full pairwise matrix, record
// whether ANY pair is (adjusted-)significant.  A trial is excluded only when
// every pair is degenerate.
CalibrationReport simulate_family(const FamilySpec& spec);
CalibrationReport simulate_family(std::int64_t k, SampleSize n, Proportion true_p,
                                  std::int64_t trials, double level, std::uint64_t seed,
                                  Correction correction);

}  // namespace zrank
