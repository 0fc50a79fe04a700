#include "zrank/analysis.hpp"

#include <algorithm>
#include <cstdio>

namespace zrank {
namespace {

std::vector<LevelDecision> adjusted_decisions(const TestResult& result,
                                              const SignificanceConfig& config) {
  const std::int64_t m = (config.correction == Correction::bonferroni) ? config.comparisons : 1;
  std::vector<LevelDecision> decisions;
  decisions.reserve(config.levels.size());
  for (const double alpha : config.levels) {
    decisions.push_back(
        {alpha, significance_decision(result.p_value, bonferroni_adjust(alpha, m))});
  }
  return decisions;
}

}  // namespace

bool PairComparison::adjusted_significant_at(double level) const {
  for (const auto& d : adjusted_significant) {
    if (d.level == level) return d.significant;
  }
  throw std::out_of_range("no adjusted decision recorded for this level");
}

TooFewInstitutionsError::TooFewInstitutionsError(std::size_t count)
    : std::runtime_error("pairwise matrix needs at least 2 institutions, got " +
                         std::to_string(count)) {}

PairComparison compare_pair(const InstitutionRecord& a, const InstitutionRecord& b,
                            const SignificanceConfig& config) {
  try {
    TestResult result =
        z_two_proportions(a.pp_top10, a.publications, b.pp_top10, b.publications, config);
    PairComparison pair;
    pair.left = a.name;
    pair.right = b.name;
    pair.adjusted_significant = adjusted_decisions(result, config);
    pair.result = std::move(result);
    return pair;
  } catch (const DegeneratePooledProportionError& e) {
    throw DegeneratePooledProportionError("\"" + a.name + "\" vs \"" + b.name + "\": " + e.what());
  }
}

std::string expected_label(Proportion expected) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "EXPECTED(%g%%)", expected.value() * 100.0);
  return buffer;
}

PairComparison compare_to_expected(const InstitutionRecord& a, const SignificanceConfig& config) {
  const InstitutionRecord expectation{expected_label(config.expected_proportion), a.publications,
                                      config.expected_proportion};
  return compare_pair(a, expectation, config);
}

ComparisonMatrix pairwise_matrix(const std::vector<InstitutionRecord>& records,
                                 const SignificanceConfig& config,
                                 std::optional<std::int64_t> family_size_override) {
  if (records.size() < 2) {
    throw TooFewInstitutionsError(records.size());
  }
  const std::int64_t k = static_cast<std::int64_t>(records.size());

  ComparisonMatrix matrix;
  matrix.family_size = family_size_override.value_or(k * (k - 1) / 2);
  matrix.config = config;
  matrix.config.comparisons = matrix.family_size;
  matrix.config.validate();

  matrix.institutions.reserve(records.size());
  for (const auto& r : records) matrix.institutions.push_back(r.name);

  // Lexicographic (left, right) output order, independent of input order.
  std::vector<const InstitutionRecord*> by_name;
  by_name.reserve(records.size());
  for (const auto& r : records) by_name.push_back(&r);
  std::sort(by_name.begin(), by_name.end(),
            [](const InstitutionRecord* a, const InstitutionRecord* b) { return a->name < b->name; });

  matrix.comparisons.reserve(static_cast<std::size_t>(matrix.family_size));
  for (std::size_t i = 0; i < by_name.size(); ++i) {
    for (std::size_t j = i + 1; j < by_name.size(); ++j) {
      try {
        matrix.comparisons.push_back(compare_pair(*by_name[i], *by_name[j], matrix.config));
      } catch (const DegeneratePooledProportionError& e) {
        PairComparison failed;
        failed.left = by_name[i]->name;
        failed.right = by_name[j]->name;
        failed.error = e.what();
        matrix.comparisons.push_back(std::move(failed));
      }
    }
  }
  return matrix;
}

}  // namespace zrank
