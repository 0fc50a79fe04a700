#include "zrank/simulate.hpp"

#include <cmath>
#include <cstdio>

#include "zrank/analysis.hpp"
#include "zrank/random.hpp"

namespace zrank {
namespace {

void validate_levels(const std::vector<double>& levels) {
  if (levels.empty()) {
    throw std::invalid_argument("at least one significance level is required");
  }
  SignificanceConfig probe;
  probe.levels = levels;
  probe.validate();
}

std::vector<RejectionRate> finish_rates(const std::vector<double>& levels,
                                        const std::vector<std::int64_t>& rejections,
                                        std::int64_t trials, std::int64_t degenerate) {
  const std::int64_t effective = trials - degenerate;
  std::vector<RejectionRate> rates;
  rates.reserve(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double rate =
        effective > 0 ? static_cast<double>(rejections[i]) / static_cast<double>(effective) : 0.0;
    const double se = std::sqrt(levels[i] * (1.0 - levels[i]) / static_cast<double>(trials));
    rates.push_back({levels[i], rate, se});
  }
  return rates;
}

std::string institution_name(std::int64_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "u%04lld", static_cast<long long>(index + 1));
  return buffer;
}

}  // namespace

void CalibrationSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("sample sizes must be at least 1");
  if (!(true_p1 >= 0.0 && true_p1 <= 1.0) || !(true_p2 >= 0.0 && true_p2 <= 1.0)) {
    throw std::invalid_argument("generating proportions must lie in [0, 1]");
  }
  validate_levels(levels);
}

void FamilySpec::validate() const {
  if (k < 2) throw std::invalid_argument("family size k must be at least 2");
  if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
  if (n < 1) throw std::invalid_argument("sample size must be at least 1");
  if (!(true_p >= 0.0 && true_p <= 1.0)) {
    throw std::invalid_argument("generating proportion must lie in [0, 1]");
  }
  validate_levels(levels);
}

double CalibrationReport::rate_at(double level) const {
  for (const auto& r : rates) {
    if (r.level == level) return r.rate;
  }
  throw std::out_of_range("no rejection rate recorded for this level");
}

CalibrationReport simulate_two_sample(const CalibrationSpec& spec) {
  spec.validate();

  SignificanceConfig config;
  config.levels = spec.levels;

  std::vector<std::int64_t> rejections(spec.levels.size(), 0);
  std::int64_t degenerate = 0;

  for (std::int64_t trial = 0; trial < spec.trials; ++trial) {
    Xoshiro256PlusPlus rng(derive_stream_seed(spec.seed, static_cast<std::uint64_t>(trial)));
    const std::int64_t t1 = sample_binomial(rng, spec.n1, spec.true_p1);
    const std::int64_t t2 = sample_binomial(rng, spec.n2, spec.true_p2);
    const double p1_hat = static_cast<double>(t1) / static_cast<double>(spec.n1);
    const double p2_hat = static_cast<double>(t2) / static_cast<double>(spec.n2);
    try {
      const TestResult result = z_two_proportions(Proportion(p1_hat), SampleSize(spec.n1),
                                                  Proportion(p2_hat), SampleSize(spec.n2), config);
      for (std::size_t i = 0; i < spec.levels.size(); ++i) {
        if (result.significant[i].significant) ++rejections[i];
      }
    } catch (const DegeneratePooledProportionError&) {
      ++degenerate;
    }
  }

  CalibrationReport report;
  report.rates = finish_rates(spec.levels, rejections, spec.trials, degenerate);
  report.trials = spec.trials;
  report.degenerate_trials = degenerate;
  report.spec = spec;
  return report;
}

CalibrationReport simulate_family(const FamilySpec& spec) {
  spec.validate();

  SignificanceConfig config;
  config.levels = spec.levels;
  config.correction = spec.correction;

  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(spec.k));
  for (std::int64_t i = 0; i < spec.k; ++i) names.push_back(institution_name(i));

  std::vector<std::int64_t> rejections(spec.levels.size(), 0);
  std::int64_t degenerate = 0;

  for (std::int64_t trial = 0; trial < spec.trials; ++trial) {
    Xoshiro256PlusPlus rng(derive_stream_seed(spec.seed, static_cast<std::uint64_t>(trial)));

    std::vector<InstitutionRecord> records;
    records.reserve(names.size());
    for (std::int64_t i = 0; i < spec.k; ++i) {
      const std::int64_t t = sample_binomial(rng, spec.n, spec.true_p);
      records.push_back({names[static_cast<std::size_t>(i)], SampleSize(spec.n),
                         Proportion(static_cast<double>(t) / static_cast<double>(spec.n))});
    }

    const ComparisonMatrix matrix = pairwise_matrix(records, config);
    bool any_tested = false;
    std::vector<bool> rejected(spec.levels.size(), false);
    for (const auto& pair : matrix.comparisons) {
      if (!pair.result) continue;
      any_tested = true;
      for (std::size_t i = 0; i < spec.levels.size(); ++i) {
        if (pair.adjusted_significant[i].significant) rejected[i] = true;
      }
    }
    if (!any_tested) {
      ++degenerate;
      continue;
    }
    for (std::size_t i = 0; i < spec.levels.size(); ++i) {
      if (rejected[i]) ++rejections[i];
    }
  }

  CalibrationReport report;
  report.rates = finish_rates(spec.levels, rejections, spec.trials, degenerate);
  report.trials = spec.trials;
  report.degenerate_trials = degenerate;
  report.family_k = spec.k;
  report.correction = spec.correction;
  report.spec.true_p1 = spec.true_p;
  report.spec.true_p2 = spec.true_p;
  report.spec.n1 = spec.n;
  report.spec.n2 = spec.n;
  report.spec.trials = spec.trials;
  report.spec.levels = spec.levels;
  report.spec.seed = spec.seed;
  return report;
}

CalibrationReport simulate_family(std::int64_t k, SampleSize n, Proportion true_p,
                                  std::int64_t trials, double level, std::uint64_t seed,
                                  Correction correction) {
  FamilySpec spec;
  spec.k = k;
  spec.n = n.value();
  spec.true_p = true_p.value();
  spec.trials = trials;
  spec.levels = {level};
  spec.seed = seed;
  spec.correction = correction;
  return simulate_family(spec);
}

}  // namespace zrank
