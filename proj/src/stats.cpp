#include "zrank/stats.hpp"

#include <algorithm>
#include <cmath>

#include "zrank/normal.hpp"

namespace zrank {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Rule of five: the normal approximation is dubious when any expected cell
// count drops below this.
constexpr double kApproximationFloor = 5.0;

std::string fmt(double v) { return std::to_string(v); }

}  // namespace

Proportion::Proportion(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {  // also rejects NaN
    throw std::invalid_argument("proportion must lie in [0, 1], got " + fmt(value));
  }
}

SampleSize::SampleSize(std::int64_t count) : count_(count) {
  if (count < 1) {
    throw std::invalid_argument("sample size must be at least 1, got " + std::to_string(count));
  }
}

TopCount::TopCount(double value) : value_(value) {
  if (!(value >= 0.0)) {
    throw std::invalid_argument("top count must be non-negative, got " + fmt(value));
  }
}

void SignificanceConfig::validate() const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0 && levels[i] < 1.0)) {
      throw std::invalid_argument("significance level must lie in (0, 1), got " + fmt(levels[i]));
    }
    if (i > 0 && !(levels[i] < levels[i - 1])) {
      throw std::invalid_argument("significance levels must be strictly decreasing");
    }
  }
  if (comparisons < 1) {
    throw std::invalid_argument("comparison count must be at least 1, got " +
                                std::to_string(comparisons));
  }
}

bool TestResult::significant_at(double level) const {
  for (const auto& d : significant) {
    if (d.level == level) return d.significant;
  }
  throw std::out_of_range("no decision recorded for level " + fmt(level));
}

TopCount top_count(Proportion p, SampleSize n) {
  return TopCount(p.value() * n.as_double());
}

Proportion pooled_proportion(TopCount t1, TopCount t2, SampleSize n1, SampleSize n2) {
  if (t1.value() > n1.as_double() || t2.value() > n2.as_double()) {
    throw std::invalid_argument("top count exceeds its sample size");
  }
  const double r1 = t1.value() / n1.as_double();
  const double r2 = t2.value() / n2.as_double();
  const double quotient = (t1.value() + t2.value()) / (n1.as_double() + n2.as_double());
  // The exact value is a convex combination of r1 and r2; the clamp only
  // removes float rounding at the envelope's edges.
  return Proportion(std::clamp(quotient, std::min(r1, r2), std::max(r1, r2)));
}

TestResult z_two_proportions(Proportion p1, SampleSize n1, Proportion p2, SampleSize n2,
                             const SignificanceConfig& config) {
  config.validate();

  const TopCount t1 = top_count(p1, n1);
  const TopCount t2 = top_count(p2, n2);
  const double lo = std::min(p1.value(), p2.value());
  const double hi = std::max(p1.value(), p2.value());
  const double pooled =
      std::clamp(pooled_proportion(t1, t2, n1, n2).value(), lo, hi);

  if (pooled <= 0.0 || pooled >= 1.0) {
    throw DegeneratePooledProportionError(
        "pooled proportion is " + fmt(pooled) +
        "; the test statistic is undefined when all or no papers are in the top decile");
  }

  const double se =
      std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1.as_double() + 1.0 / n2.as_double()));

  TestResult result;
  result.z = (p1.value() - p2.value()) / se;
  result.p_value = two_sided_p_value(result.z);
  result.pooled_p = pooled;
  result.t1 = t1.value();
  result.t2 = t2.value();
  result.significant.reserve(config.levels.size());
  for (const double alpha : config.levels) {
    result.significant.push_back({alpha, significance_decision(result.p_value, alpha)});
  }
  const double cell = std::min({n1.as_double() * pooled, n1.as_double() * (1.0 - pooled),
                                n2.as_double() * pooled, n2.as_double() * (1.0 - pooled)});
  result.approximation_warning = cell < kApproximationFloor;
  return result;
}

TestResult z_vs_expected(Proportion p1, SampleSize n, Proportion expected,
                         const SignificanceConfig& config) {
  return z_two_proportions(p1, n, expected, n, config);
}

double two_sided_p_value(double z) {
  // Equal to 2 * (1 - Phi(|z|)) but computed through erfc directly, so tiny
  // tail probabilities keep full relative precision.
  return std::clamp(erfc_cody(std::fabs(z) * kInvSqrt2), 0.0, 1.0);
}

bool significance_decision(double p_value, double alpha) {
  return p_value < alpha;
}

double bonferroni_adjust(double alpha, std::int64_t comparisons) {
  if (comparisons < 1) {
    throw std::invalid_argument("comparison count must be at least 1, got " +
                                std::to_string(comparisons));
  }
  return alpha / static_cast<double>(comparisons);
}

double bonferroni_adjusted_p(double p_value, std::int64_t comparisons) {
  if (comparisons < 1) {
    throw std::invalid_argument("comparison count must be at least 1, got " +
                                std::to_string(comparisons));
  }
  return std::min(1.0, static_cast<double>(comparisons) * p_value);
}

}  // namespace zrank
