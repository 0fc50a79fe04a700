// Core two-proportion z-test: domain types, the test statistic, p-values,
// significance decisions and the Bonferroni adjustment.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zrank {

// Dimensionless fraction in [0, 1].
class Proportion {
 public:
  explicit Proportion(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// Positive publication count (the ranking's "P" column).
class SampleSize {
 public:
  explicit SampleSize(std::int64_t count);
  std::int64_t value() const noexcept { return count_; }
  double as_double() const noexcept { return static_cast<double>(count_); }

 private:
  std::int64_t count_;
};

// Reconstructed count of top-10% papers, kept real-valued: published
// indicator values are already rounded, so the product p * n is not forced
// back to an integer.
class TopCount {
 public:
  explicit TopCount(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

enum class Correction { none, bonferroni };

struct SignificanceConfig {
  std::vector<double> levels{0.05, 0.01};  // strictly decreasing, each in (0,1)
  Proportion expected_proportion{0.10};
  Correction correction = Correction::none;
  std::int64_t comparisons = 1;  // Bonferroni family size m

  void validate() const;  // throws std::invalid_argument
};

struct LevelDecision {
  double level;
  bool significant;
};

// Raised when the pooled proportion is 0 or 1: every paper (or none) across
// both samples is in the top decile, the statistic's denominator vanishes.
class DegeneratePooledProportionError : public std::domain_error {
 public:
  explicit DegeneratePooledProportionError(const std::string& message)
      : std::domain_error(message) {}
};

struct TestResult {
  double z = 0.0;
  double p_value = 1.0;        // two-sided
  double pooled_p = 0.0;       // in [min(p1,p2), max(p1,p2)]
  double t1 = 0.0;             // reconstructed top counts
  double t2 = 0.0;
  std::vector<LevelDecision> significant;  // config level order
  bool approximation_warning = false;      // some n*p or n*(1-p) below 5

  bool significant_at(double level) const;  // throws if level not configured
};

TopCount top_count(Proportion p, SampleSize n);

// (t1 + t2) / (n1 + n2); always within [min(t1/n1, t2/n2), max(t1/n1, t2/n2)].
Proportion pooled_proportion(TopCount t1, TopCount t2, SampleSize n1, SampleSize n2);

// z = (p1 - p2) / sqrt(p (1-p) (1/n1 + 1/n2)) with p pooled over the
// reconstructed top counts.  Throws DegeneratePooledProportionError when the
// pooled proportion hits 0 or 1.
TestResult z_two_proportions(Proportion p1, SampleSize n1, Proportion p2, SampleSize n2,
                             const SignificanceConfig& config = {});

// Observed-versus-expected special case: both sample sizes equal n.
// Bit-identical to z_two_proportions(p1, n, expected, n, config).
TestResult z_vs_expected(Proportion p1, SampleSize n, Proportion expected,
                         const SignificanceConfig& config = {});

// 2 * (1 - Phi(|z|)), clamped into [0, 1].
double two_sided_p_value(double z);

// Strict inequality: p < alpha.
bool significance_decision(double p_value, double alpha);

// alpha / m.
double bonferroni_adjust(double alpha, std::int64_t comparisons);

// min(1, m * p), the companion adjusted-p convention.
double bonferroni_adjusted_p(double p_value, std::int64_t comparisons);

}  // namespace zrank
