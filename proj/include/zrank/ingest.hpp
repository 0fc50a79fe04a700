// Ranking-file ingestion: header-first delimited text -> InstitutionRecords.
//
// Dialect: UTF-8, one institution per row, blank lines ignored, lines starting
// with '#' are comments.  Fields are unquoted or double-quoted (quotes escaped
// by doubling); PP values may carry a trailing '%'.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "zrank/stats.hpp"

namespace zrank {

enum class PpUnit { percent, proportion };

struct IngestConfig {
  PpUnit pp_unit = PpUnit::percent;
  std::string institution_column = "institution";
  std::string publications_column = "P";
  std::string pp_column = "PP_top10";
  char delimiter = ',';

  void validate() const;  // column names distinct and non-empty
};

struct InstitutionRecord {
  std::string name;
  SampleSize publications;
  Proportion pp_top10;  // normalized to a fraction
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error(message), line_(line) {}
  // 1-based physical line number of the offending row; 0 when not row-specific.
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class MissingColumnError : public ParseError {
 public:
  MissingColumnError(const std::string& column, int line);
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class MalformedRowError : public ParseError {
 public:
  using ParseError::ParseError;
};

class DuplicateInstitutionError : public ParseError {
 public:
  DuplicateInstitutionError(const std::string& name, int line);
};

class OutOfRangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

std::vector<InstitutionRecord> parse_ranking(std::istream& in, const IngestConfig& config = {});

enum class WarningKind { small_sample, degenerate_proportion };

struct DatasetWarning {
  WarningKind kind;
  std::string institution;
  std::string message;
};

// Non-fatal data quality checks; never throws.
std::vector<DatasetWarning> validate_dataset(const std::vector<InstitutionRecord>& records);

}  // namespace zrank
