#include "zrank/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ostream>

namespace zrank {
namespace {

std::string printf_format(const char* fmt, double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, fmt, v);
  return buffer;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }
const char* bool_cell(bool b) { return b ? "yes" : "no"; }

std::string direction_label(double z) {
  if (z > 0.0) return "above expectation";
  if (z < 0.0) return "below expectation";
  return "consistent with expectation";
}

}  // namespace

std::string format_sig10(double v) { return printf_format("%.10g", v); }

std::string format_fixed4(double v) { return printf_format("%.4f", v); }

std::string format_table_p(double p) {
  if (p < 1e-15) return "<1e-15";
  return format_fixed4(p);
}

std::string format_shortest(double v) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  (void)ec;
  return std::string(buffer, ptr);
}

std::string format_level(double level) { return printf_format("%g", level); }

std::string csv_field(const std::string& raw, char delimiter) {
  const bool needs_quoting =
      raw.find(delimiter) != std::string::npos || raw.find('"') != std::string::npos ||
      raw.find('\n') != std::string::npos || raw.find('\r') != std::string::npos ||
      (!raw.empty() && (raw.front() == ' ' || raw.back() == ' '));
  if (!needs_quoting) return raw;
  std::string quoted = "\"";
  for (const char c : raw) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_ranking_csv(std::ostream& out, const std::vector<InstitutionRecord>& records,
                       const IngestConfig& config) {
  config.validate();
  const char d = config.delimiter;
  out << csv_field(config.institution_column, d) << d << csv_field(config.publications_column, d)
      << d << csv_field(config.pp_column, d) << '\n';
  for (const auto& r : records) {
    double pp = r.pp_top10.value();
    if (config.pp_unit == PpUnit::percent) pp *= 100.0;
    out << csv_field(r.name, d) << d << r.publications.value() << d << format_shortest(pp)
        << '\n';
  }
}

std::string comparisons_csv_header(const SignificanceConfig& config) {
  std::string header = "left,right,z,p_value,pooled_p,t_left,t_right";
  for (const double level : config.levels) header += ",significant_" + format_level(level);
  for (const double level : config.levels) {
    header += ",adjusted_significant_" + format_level(level);
  }
  header += ",warning,error";
  return header;
}

namespace {

std::string comparison_csv_row(const PairComparison& pair, const SignificanceConfig& config) {
  std::string row = csv_field(pair.left) + ',' + csv_field(pair.right);
  if (pair.result) {
    const TestResult& r = *pair.result;
    row += ',' + format_sig10(r.z);
    row += ',' + format_sig10(r.p_value);
    row += ',' + format_sig10(r.pooled_p);
    row += ',' + format_sig10(r.t1);
    row += ',' + format_sig10(r.t2);
    for (const auto& d : r.significant) row += std::string(",") + bool_text(d.significant);
    for (const auto& d : pair.adjusted_significant) {
      row += std::string(",") + bool_text(d.significant);
    }
    row += std::string(",") + bool_text(r.approximation_warning);
    row += ',';
  } else {
    // Empty data cells; the error marker rides in the last column.
    row.append(5 + 2 * config.levels.size() + 1, ',');
    row += ',' + csv_field(pair.error);
  }
  return row;
}

}  // namespace

void write_comparisons_csv(std::ostream& out, const std::vector<PairComparison>& comparisons,
                           const SignificanceConfig& config, std::int64_t family_size) {
  out << "# family_size: " << family_size << '\n';
  out << "# correction: " << (config.correction == Correction::bonferroni ? "bonferroni" : "none")
      << '\n';
  if (config.correction == Correction::bonferroni) {
    for (const double level : config.levels) {
      out << "# adjusted_alpha_" << format_level(level) << ": "
          << format_sig10(bonferroni_adjust(level, family_size)) << '\n';
    }
  }
  out << comparisons_csv_header(config) << '\n';
  for (const auto& pair : comparisons) {
    out << comparison_csv_row(pair, config) << '\n';
  }
}

nlohmann::ordered_json comparisons_json(const std::vector<PairComparison>& comparisons,
                                        const SignificanceConfig& config,
                                        std::int64_t family_size) {
  nlohmann::ordered_json doc;
  doc["config"] = {
      {"levels", config.levels},
      {"expected_proportion", config.expected_proportion.value()},
      {"correction", config.correction == Correction::bonferroni ? "bonferroni" : "none"},
      {"comparisons", config.comparisons},
  };
  doc["family_size"] = family_size;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& pair : comparisons) {
    nlohmann::ordered_json row;
    row["left"] = pair.left;
    row["right"] = pair.right;
    if (pair.result) {
      const TestResult& r = *pair.result;
      row["z"] = r.z;
      row["p_value"] = r.p_value;
      row["pooled_p"] = r.pooled_p;
      row["t_left"] = r.t1;
      row["t_right"] = r.t2;
      for (const auto& d : r.significant) {
        row["significant_" + format_level(d.level)] = d.significant;
      }
      for (const auto& d : pair.adjusted_significant) {
        row["adjusted_significant_" + format_level(d.level)] = d.significant;
      }
      row["warning"] = r.approximation_warning;
      row["error"] = nullptr;
    } else {
      row["z"] = nullptr;
      row["p_value"] = nullptr;
      row["pooled_p"] = nullptr;
      row["t_left"] = nullptr;
      row["t_right"] = nullptr;
      for (const double level : config.levels) {
        row["significant_" + format_level(level)] = nullptr;
      }
      for (const double level : config.levels) {
        row["adjusted_significant_" + format_level(level)] = nullptr;
      }
      row["warning"] = nullptr;
      row["error"] = pair.error;
    }
    rows.push_back(std::move(row));
  }
  doc["comparisons"] = std::move(rows);
  return doc;
}

void write_comparisons_table(std::ostream& out, const std::vector<PairComparison>& comparisons,
                             const SignificanceConfig& config, std::int64_t family_size,
                             bool expected_mode) {
  std::size_t left_width = 4, right_width = 5;
  for (const auto& pair : comparisons) {
    left_width = std::max(left_width, pair.left.size());
    right_width = std::max(right_width, pair.right.size());
  }

  out << "family size m = " << family_size << ", correction = "
      << (config.correction == Correction::bonferroni ? "bonferroni" : "none") << '\n';

  auto pad = [&out](const std::string& text, std::size_t width) {
    out << text;
    for (std::size_t i = text.size(); i < width + 2; ++i) out << ' ';
  };

  pad("left", left_width);
  pad("right", right_width);
  pad("z", 9);
  pad("p_value", 9);
  for (const auto level : config.levels) pad("sig_" + format_level(level), 9);
  for (const auto level : config.levels) pad("adj_" + format_level(level), 9);
  if (expected_mode) pad("direction", 27);
  out << "notes\n";

  for (const auto& pair : comparisons) {
    pad(pair.left, left_width);
    pad(pair.right, right_width);
    if (pair.result) {
      const TestResult& r = *pair.result;
      pad(format_fixed4(r.z), 9);
      pad(format_table_p(r.p_value), 9);
      for (const auto& d : r.significant) pad(bool_cell(d.significant), 9);
      for (const auto& d : pair.adjusted_significant) pad(bool_cell(d.significant), 9);
      if (expected_mode) pad(direction_label(r.z), 27);
      out << (r.approximation_warning ? "approximation dubious (small n)" : "");
    } else {
      pad("-", 9);
      pad("-", 9);
      for (std::size_t i = 0; i < 2 * config.levels.size(); ++i) pad("-", 9);
      if (expected_mode) pad("-", 27);
      out << "error: " << pair.error;
    }
    out << '\n';
  }
}

void write_pair_detail_table(std::ostream& out, const PairComparison& pair,
                             const SignificanceConfig& config) {
  auto line = [&out](const std::string& key, const std::string& value) {
    out << key;
    for (std::size_t i = key.size(); i < 28; ++i) out << ' ';
    out << value << '\n';
  };

  line("left", pair.left);
  line("right", pair.right);
  if (!pair.result) {
    line("error", pair.error);
    return;
  }
  const TestResult& r = *pair.result;
  line("z", format_fixed4(r.z));
  line("p_value", format_table_p(r.p_value));
  line("pooled_p", format_fixed4(r.pooled_p));
  line("t_left", format_fixed4(r.t1));
  line("t_right", format_fixed4(r.t2));
  for (const auto& d : r.significant) {
    line("significant_" + format_level(d.level), bool_cell(d.significant));
  }
  const std::int64_t m =
      config.correction == Correction::bonferroni ? config.comparisons : 1;
  for (const auto& d : pair.adjusted_significant) {
    line("adjusted_significant_" + format_level(d.level),
         std::string(bool_cell(d.significant)) + " (alpha/m = " +
             format_sig10(bonferroni_adjust(d.level, m)) + ")");
  }
  line("approximation_warning", bool_cell(r.approximation_warning));
}

void write_calibration_csv(std::ostream& out, const CalibrationReport& report) {
  out << "# seed: " << report.spec.seed << '\n';
  if (report.family_k > 0) {
    out << "# mode: family\n";
    out << "# k: " << report.family_k << '\n';
    out << "# n: " << report.spec.n1 << '\n';
    out << "# true_p: " << format_shortest(report.spec.true_p1) << '\n';
    out << "# correction: "
        << (report.correction == Correction::bonferroni ? "bonferroni" : "none") << '\n';
  } else {
    out << "# mode: two-sample\n";
    out << "# n1: " << report.spec.n1 << '\n';
    out << "# n2: " << report.spec.n2 << '\n';
    out << "# true_p1: " << format_shortest(report.spec.true_p1) << '\n';
    out << "# true_p2: " << format_shortest(report.spec.true_p2) << '\n';
  }
  out << "level,rejection_rate,std_error,trials,degenerate_trials\n";
  for (const auto& r : report.rates) {
    out << format_sig10(r.level) << ',' << format_sig10(r.rate) << ',' << format_sig10(r.std_error)
        << ',' << report.trials << ',' << report.degenerate_trials << '\n';
  }
}

nlohmann::ordered_json calibration_json(const CalibrationReport& report) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json spec;
  spec["seed"] = report.spec.seed;
  if (report.family_k > 0) {
    spec["mode"] = "family";
    spec["k"] = report.family_k;
    spec["n"] = report.spec.n1;
    spec["true_p"] = report.spec.true_p1;
    spec["correction"] = report.correction == Correction::bonferroni ? "bonferroni" : "none";
  } else {
    spec["mode"] = "two-sample";
    spec["n1"] = report.spec.n1;
    spec["n2"] = report.spec.n2;
    spec["true_p1"] = report.spec.true_p1;
    spec["true_p2"] = report.spec.true_p2;
  }
  spec["trials"] = report.spec.trials;
  doc["spec"] = std::move(spec);
  doc["trials"] = report.trials;
  doc["degenerate_trials"] = report.degenerate_trials;
  auto rates = nlohmann::ordered_json::array();
  for (const auto& r : report.rates) {
    rates.push_back({{"level", r.level}, {"rejection_rate", r.rate}, {"std_error", r.std_error}});
  }
  doc["rates"] = std::move(rates);
  return doc;
}

void write_calibration_table(std::ostream& out, const CalibrationReport& report) {
  if (report.family_k > 0) {
    out << "family-wise calibration (k = " << report.family_k << ", correction = "
        << (report.correction == Correction::bonferroni ? "bonferroni" : "none") << ")\n";
    out << "  n          " << report.spec.n1 << '\n';
    out << "  true p     " << format_shortest(report.spec.true_p1) << '\n';
  } else {
    out << "two-sample calibration\n";
    out << "  n1, n2     " << report.spec.n1 << ", " << report.spec.n2 << '\n';
    out << "  true p1,p2 " << format_shortest(report.spec.true_p1) << ", "
        << format_shortest(report.spec.true_p2) << '\n';
  }
  out << "  trials     " << report.trials << '\n';
  out << "  seed       " << report.spec.seed << '\n';
  out << "  degenerate " << report.degenerate_trials << '\n';
  out << '\n';
  out << "  level     rejection_rate   std_error\n";
  for (const auto& r : report.rates) {
    char row[96];
    std::snprintf(row, sizeof row, "  %-8s  %-15s  %s\n", format_level(r.level).c_str(),
                  format_fixed4(r.rate).c_str(), format_sig10(r.std_error).c_str());
    out << row;
  }
}

}  // namespace zrank
