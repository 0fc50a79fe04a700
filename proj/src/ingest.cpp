#include "zrank/ingest.hpp"

#include <charconv>
#include <istream>
#include <unordered_set>

namespace zrank {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

// Splits one physical line.  Quoted fields may contain the delimiter; a quote
// inside a quoted field is escaped by doubling.
std::vector<std::string> split_fields(const std::string& line, char delimiter, int line_number) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (true) {
    // One field per iteration; skip leading blanks before a possible quote.
    std::size_t start = i;
    while (start < n && is_space(line[start]) && line[start] != delimiter) ++start;
    if (start < n && line[start] == '"') {
      std::string field;
      std::size_t j = start + 1;
      bool closed = false;
      while (j < n) {
        if (line[j] == '"') {
          if (j + 1 < n && line[j + 1] == '"') {
            field += '"';
            j += 2;
          } else {
            closed = true;
            ++j;
            break;
          }
        } else {
          field += line[j];
          ++j;
        }
      }
      if (!closed) {
        throw MalformedRowError("unterminated quoted field", line_number);
      }
      while (j < n && is_space(line[j])) ++j;
      if (j < n && line[j] != delimiter) {
        throw MalformedRowError("unexpected text after closing quote", line_number);
      }
      fields.push_back(std::move(field));
      if (j >= n) break;
      i = j + 1;
    } else {
      const std::size_t end = line.find(delimiter, i);
      if (end == std::string::npos) {
        fields.push_back(trim(line.substr(i)));
        break;
      }
      fields.push_back(trim(line.substr(i, end - i)));
      i = end + 1;
    }
  }
  return fields;
}

bool parse_int(const std::string& s, std::int64_t& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && ptr == e && !s.empty();
}

bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && ptr == e && !s.empty();
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        int line_number) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw MissingColumnError(name, line_number);
}

}  // namespace

MissingColumnError::MissingColumnError(const std::string& column, int line)
    : ParseError("header is missing column \"" + column + "\"", line), column_(column) {}

DuplicateInstitutionError::DuplicateInstitutionError(const std::string& name, int line)
    : ParseError("duplicate institution \"" + name + "\"", line) {}

void IngestConfig::validate() const {
  if (institution_column.empty() || publications_column.empty() || pp_column.empty()) {
    throw std::invalid_argument("column names must be non-empty");
  }
  if (institution_column == publications_column || institution_column == pp_column ||
      publications_column == pp_column) {
    throw std::invalid_argument("column names must be distinct");
  }
}

std::vector<InstitutionRecord> parse_ranking(std::istream& in, const IngestConfig& config) {
  config.validate();

  std::vector<InstitutionRecord> records;
  std::unordered_set<std::string> seen;
  bool have_header = false;
  std::size_t col_name = 0, col_p = 0, col_pp = 0, width = 0;

  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line[0] == '#') continue;

    if (!have_header) {
      const auto header = split_fields(line, config.delimiter, line_number);
      col_name = find_column(header, config.institution_column, line_number);
      col_p = find_column(header, config.publications_column, line_number);
      col_pp = find_column(header, config.pp_column, line_number);
      width = header.size();
      have_header = true;
      continue;
    }

    auto fields = split_fields(line, config.delimiter, line_number);
    if (fields.size() != width) {
      throw MalformedRowError("expected " + std::to_string(width) + " fields, found " +
                                  std::to_string(fields.size()),
                              line_number);
    }

    std::string name = fields[col_name];
    if (name.empty()) {
      throw MalformedRowError("empty institution name", line_number);
    }

    std::int64_t publications = 0;
    if (!parse_int(fields[col_p], publications)) {
      throw MalformedRowError("publication count \"" + fields[col_p] + "\" is not an integer",
                              line_number);
    }
    if (publications < 1) {
      throw OutOfRangeError("publication count must be at least 1, got " +
                                std::to_string(publications),
                            line_number);
    }

    std::string pp_text = fields[col_pp];
    if (!pp_text.empty() && pp_text.back() == '%') {
      pp_text = trim(pp_text.substr(0, pp_text.size() - 1));
    }
    double pp = 0.0;
    if (!parse_double(pp_text, pp)) {
      throw MalformedRowError("PP value \"" + fields[col_pp] + "\" is not numeric", line_number);
    }
    if (config.pp_unit == PpUnit::percent) {
      if (!(pp >= 0.0 && pp <= 100.0)) {
        throw OutOfRangeError("PP percentage must lie in [0, 100], got " + fields[col_pp],
                              line_number);
      }
      pp /= 100.0;
    } else if (!(pp >= 0.0 && pp <= 1.0)) {
      throw OutOfRangeError("PP proportion must lie in [0, 1], got " + fields[col_pp],
                            line_number);
    }

    if (!seen.insert(name).second) {
      throw DuplicateInstitutionError(name, line_number);
    }
    records.push_back({std::move(name), SampleSize(publications), Proportion(pp)});
  }

  if (!have_header) {
    throw MalformedRowError("input contains no header row", line_number);
  }
  return records;
}

std::vector<DatasetWarning> validate_dataset(const std::vector<InstitutionRecord>& records) {
  std::vector<DatasetWarning> warnings;
  for (const auto& r : records) {
    // n * 0.10 < 5, the rule-of-five floor at the expected 10% proportion.
    if (r.publications.as_double() * 0.10 < 5.0) {
      warnings.push_back({WarningKind::small_sample, r.name,
                          "only " + std::to_string(r.publications.value()) +
                              " publications; the normal approximation is dubious below 50"});
    }
    const double pp = r.pp_top10.value();
    if (pp == 0.0 || pp == 1.0) {
      warnings.push_back({WarningKind::degenerate_proportion, r.name,
                          "PP_top10 is exactly " + std::string(pp == 0.0 ? "0" : "1") +
                              "; pairwise tests against similar rows will be undefined"});
    }
  }
  return warnings;
}

}  // namespace zrank
