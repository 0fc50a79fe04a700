// Dataset-level orchestration: single pairs, observed-vs-expected, and the
// all-pairs matrix with family-wise correction.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zrank/ingest.hpp"
#include "zrank/stats.hpp"

namespace zrank {

struct PairComparison {
  std::string left;
  std::string right;
  std::optional<TestResult> result;                // empty when the pair is degenerate
  std::vector<LevelDecision> adjusted_significant; // after Bonferroni; empty when degenerate
  std::string error;                               // degenerate marker, empty otherwise

  bool adjusted_significant_at(double level) const;
};

class TooFewInstitutionsError : public std::runtime_error {
 public:
  explicit TooFewInstitutionsError(std::size_t count);
};

struct ComparisonMatrix {
  std::vector<std::string> institutions;    // input order
  std::vector<PairComparison> comparisons;  // lexicographic by (left, right)
  std::int64_t family_size = 1;             // Bonferroni m
  SignificanceConfig config;                // effective config, comparisons == family_size
};

// a versus b in the given order.  Adjusted decisions divide each level by
// config.comparisons when correction is bonferroni.  Degenerate pairs throw,
// with both institution names in the message.
PairComparison compare_pair(const InstitutionRecord& a, const InstitutionRecord& b,
                            const SignificanceConfig& config = {});

// a versus the configured expectation; the right-hand name is a literal label
// such as "EXPECTED(10%)".
PairComparison compare_to_expected(const InstitutionRecord& a,
                                   const SignificanceConfig& config = {});

std::string expected_label(Proportion expected);

// All k(k-1)/2 unordered pairs.  family_size defaults to the number of pairs;
// degenerate pairs are recorded in place with an error marker, never aborting
// the matrix.  Throws TooFewInstitutionsError for fewer than two records.
ComparisonMatrix pairwise_matrix(const std::vector<InstitutionRecord>& records,
                                 const SignificanceConfig& config = {},
                                 std::optional<std::int64_t> family_size_override = {});

}  // namespace zrank
