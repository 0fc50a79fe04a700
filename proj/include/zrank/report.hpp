// Result emission: human tables, machine-stable CSV, and JSON.
//
// Machine formats carry numbers with 10 significant digits (CSV) or
// shortest-round-trip doubles (JSON); tables use 4 decimal places and render
// p-values below 1e-15 as "<1e-15".
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "zrank/analysis.hpp"
#include "zrank/ingest.hpp"
#include "zrank/simulate.hpp"

namespace zrank {

enum class OutputFormat { table, csv, json };

std::string format_sig10(double v);     // %.10g
std::string format_fixed4(double v);    // %.4f
std::string format_table_p(double p);   // "<1e-15" below 1e-15, else %.4f
std::string format_shortest(double v);  // shortest round-trip decimal
std::string format_level(double level); // %g, used in column names

// Quotes the field when it contains the delimiter, a quote, a newline, or
// leading/trailing whitespace; embedded quotes are doubled.
std::string csv_field(const std::string& raw, char delimiter = ',');

// Dataset writer; output re-parses to the original records.
void write_ranking_csv(std::ostream& out, const std::vector<InstitutionRecord>& records,
                       const IngestConfig& config = {});

// left,right,z,p_value,pooled_p,t_left,t_right,significant_<L>...,
// adjusted_significant_<L>...,warning,error
std::string comparisons_csv_header(const SignificanceConfig& config);
void write_comparisons_csv(std::ostream& out, const std::vector<PairComparison>& comparisons,
                           const SignificanceConfig& config, std::int64_t family_size);
nlohmann::ordered_json comparisons_json(const std::vector<PairComparison>& comparisons,
                                        const SignificanceConfig& config,
                                        std::int64_t family_size);
void write_comparisons_table(std::ostream& out, const std::vector<PairComparison>& comparisons,
                             const SignificanceConfig& config, std::int64_t family_size,
                             bool expected_mode = false);
// Key-value block for a single comparison.
void write_pair_detail_table(std::ostream& out, const PairComparison& pair,
                             const SignificanceConfig& config);

void write_calibration_csv(std::ostream& out, const CalibrationReport& report);
nlohmann::ordered_json calibration_json(const CalibrationReport& report);
void write_calibration_table(std::ostream& out, const CalibrationReport& report);

}  // namespace zrank
