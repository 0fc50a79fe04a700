#include "zrank/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zrank/analysis.hpp"
#include "zrank/ingest.hpp"
#include "zrank/report.hpp"
#include "zrank/simulate.hpp"

namespace zrank {
namespace {

constexpr int kOk = 0;
constexpr int kUsageOrData = 2;
constexpr int kUnknownInstitution = 3;
constexpr int kDegenerate = 4;
constexpr int kTooFewInstitutions = 5;

struct IngestFlags {
  std::string file;
  std::string pp_unit = "percent";
  std::string delimiter = ",";
  std::string col_institution = "institution";
  std::string col_publications = "P";
  std::string col_pp = "PP_top10";
};

struct OutputFlags {
  std::string format = "table";
  std::vector<double> alphas;
};

void add_ingest_flags(CLI::App* sub, IngestFlags& flags) {
  sub->add_option("file", flags.file, "ranking CSV file")->required();
  sub->add_option("--pp-unit", flags.pp_unit, "unit of the PP column (default percent)")
      ->check(CLI::IsMember({"percent", "proportion"}));
  sub->add_option("--delimiter", flags.delimiter, "field delimiter (default ',')");
  sub->add_option("--col-institution", flags.col_institution, "institution column name");
  sub->add_option("--col-p", flags.col_publications, "publication-count column name");
  sub->add_option("--col-pp", flags.col_pp, "PP_top10 column name");
}

void add_output_flags(CLI::App* sub, OutputFlags& flags) {
  sub->add_option("--format", flags.format, "output format (default table)")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  sub->add_option("--alpha", flags.alphas,
                  "significance level, repeatable (default 0.05 and 0.01)");
}

IngestConfig make_ingest_config(const IngestFlags& flags) {
  if (flags.delimiter.size() != 1) {
    throw std::invalid_argument("--delimiter must be a single character");
  }
  IngestConfig config;
  config.pp_unit = flags.pp_unit == "percent" ? PpUnit::percent : PpUnit::proportion;
  config.delimiter = flags.delimiter[0];
  config.institution_column = flags.col_institution;
  config.publications_column = flags.col_publications;
  config.pp_column = flags.col_pp;
  config.validate();
  return config;
}

std::vector<double> normalize_levels(std::vector<double> levels) {
  if (levels.empty()) return {0.05, 0.01};
  std::sort(levels.begin(), levels.end(), std::greater<double>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  return OutputFormat::table;
}

std::vector<InstitutionRecord> load_ranking(const IngestFlags& flags, const IngestConfig& config,
                                            std::ostream& err) {
  std::ifstream in(flags.file);
  if (!in) {
    throw ParseError("cannot open file \"" + flags.file + "\"", 0);
  }
  auto records = parse_ranking(in, config);
  for (const auto& warning : validate_dataset(records)) {
    err << "warning: " << warning.institution << ": " << warning.message << '\n';
  }
  return records;
}

const InstitutionRecord* find_record(const std::vector<InstitutionRecord>& records,
                                     const std::string& name) {
  for (const auto& r : records) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

void emit_comparisons(std::ostream& out, OutputFormat format,
                      const std::vector<PairComparison>& comparisons,
                      const SignificanceConfig& config, std::int64_t family_size,
                      bool expected_mode, bool single_pair) {
  switch (format) {
    case OutputFormat::csv:
      write_comparisons_csv(out, comparisons, config, family_size);
      break;
    case OutputFormat::json:
      out << comparisons_json(comparisons, config, family_size).dump(2) << '\n';
      break;
    case OutputFormat::table:
      if (single_pair && comparisons.size() == 1) {
        write_pair_detail_table(out, comparisons.front(), config);
        if (expected_mode && comparisons.front().result) {
          const double z = comparisons.front().result->z;
          out << "direction                   "
              << (z > 0.0  ? "above expectation"
                  : z < 0.0 ? "below expectation"
                            : "consistent with expectation")
              << '\n';
        }
      } else {
        write_comparisons_table(out, comparisons, config, family_size, expected_mode);
      }
      break;
  }
}

// --bonferroni sentinel decoding: -1 flag absent, 0 bare flag (family size
// from the run), > 0 explicit m.
void apply_bonferroni(SignificanceConfig& config, std::int64_t bonferroni_m,
                      std::int64_t auto_family) {
  if (bonferroni_m < 0) return;
  config.correction = Correction::bonferroni;
  config.comparisons = bonferroni_m == 0 ? auto_family : bonferroni_m;
}

int cmd_compare(const IngestFlags& ingest, const OutputFlags& output, const std::string& left,
                const std::string& right, std::int64_t bonferroni_m, std::ostream& out,
                std::ostream& err) {
  const IngestConfig ingest_config = make_ingest_config(ingest);
  const auto records = load_ranking(ingest, ingest_config, err);

  const InstitutionRecord* a = find_record(records, left);
  const InstitutionRecord* b = find_record(records, right);
  if (a == nullptr || b == nullptr) {
    err << "unknown institution:";
    if (a == nullptr) err << " \"" << left << '"';
    if (b == nullptr) err << " \"" << right << '"';
    err << '\n';
    return kUnknownInstitution;
  }

  SignificanceConfig config;
  config.levels = normalize_levels(output.alphas);
  apply_bonferroni(config, bonferroni_m, 1);
  config.validate();

  const PairComparison pair = compare_pair(*a, *b, config);
  emit_comparisons(out, parse_format(output.format), {pair}, config, config.comparisons, false,
                   true);
  return kOk;
}

int cmd_expected(const IngestFlags& ingest, const OutputFlags& output, const std::string& name,
                 bool all, double expected, std::int64_t bonferroni_m, std::ostream& out,
                 std::ostream& err) {
  const IngestConfig ingest_config = make_ingest_config(ingest);
  const auto records = load_ranking(ingest, ingest_config, err);

  SignificanceConfig config;
  config.levels = normalize_levels(output.alphas);
  config.expected_proportion = Proportion(expected);

  if (!all) {
    const InstitutionRecord* a = find_record(records, name);
    if (a == nullptr) {
      err << "unknown institution: \"" << name << "\"\n";
      return kUnknownInstitution;
    }
    apply_bonferroni(config, bonferroni_m, 1);
    config.validate();
    const PairComparison pair = compare_to_expected(*a, config);
    emit_comparisons(out, parse_format(output.format), {pair}, config, config.comparisons, true,
                     true);
    return kOk;
  }

  apply_bonferroni(config, bonferroni_m, static_cast<std::int64_t>(records.size()));
  config.validate();

  std::vector<PairComparison> comparisons;
  comparisons.reserve(records.size());
  for (const auto& record : records) {
    try {
      comparisons.push_back(compare_to_expected(record, config));
    } catch (const DegeneratePooledProportionError& e) {
      PairComparison failed;
      failed.left = record.name;
      failed.right = expected_label(config.expected_proportion);
      failed.error = e.what();
      comparisons.push_back(std::move(failed));
    }
  }
  emit_comparisons(out, parse_format(output.format), comparisons, config, config.comparisons,
                   true, false);
  return kOk;
}

int cmd_matrix(const IngestFlags& ingest, const OutputFlags& output, std::int64_t bonferroni_m,
               bool no_correction, std::ostream& out, std::ostream& err) {
  const IngestConfig ingest_config = make_ingest_config(ingest);
  const auto records = load_ranking(ingest, ingest_config, err);

  SignificanceConfig config;
  config.levels = normalize_levels(output.alphas);
  // Family tests default to Bonferroni over the pairs actually computed.
  config.correction = no_correction ? Correction::none : Correction::bonferroni;

  std::optional<std::int64_t> family_override;
  if (bonferroni_m > 0) family_override = bonferroni_m;

  const ComparisonMatrix matrix = pairwise_matrix(records, config, family_override);
  emit_comparisons(out, parse_format(output.format), matrix.comparisons, matrix.config,
                   matrix.family_size, false, false);
  return kOk;
}

int cmd_calibrate(const OutputFlags& output, bool null_mode, double p_common, double p1, double p2,
                  std::int64_t n_common, std::int64_t n1, std::int64_t n2, std::int64_t trials,
                  std::uint64_t seed, std::int64_t family_k, bool no_correction, std::ostream& out,
                  std::ostream&) {
  const std::vector<double> levels = normalize_levels(output.alphas);
  CalibrationReport report;

  if (family_k > 0) {
    FamilySpec spec;
    spec.k = family_k;
    spec.n = n_common > 0 ? n_common : n1;
    spec.true_p = p_common;
    spec.trials = trials;
    spec.levels = levels;
    spec.seed = seed;
    spec.correction = no_correction ? Correction::none : Correction::bonferroni;
    report = simulate_family(spec);
  } else {
    CalibrationSpec spec;
    spec.true_p1 = null_mode ? p_common : p1;
    spec.true_p2 = null_mode ? p_common : p2;
    spec.n1 = n_common > 0 ? n_common : n1;
    spec.n2 = n_common > 0 ? n_common : n2;
    spec.trials = trials;
    spec.levels = levels;
    spec.seed = seed;
    report = simulate_two_sample(spec);
  }

  switch (parse_format(output.format)) {
    case OutputFormat::csv:
      write_calibration_csv(out, report);
      break;
    case OutputFormat::json:
      out << calibration_json(report).dump(2) << '\n';
      break;
    case OutputFormat::table:
      write_calibration_table(out, report);
      break;
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"z-tests for proportion-based ranking indicators (PP_top10%, Excellence Indicator)"};
  app.require_subcommand(1);

  IngestFlags ingest;
  OutputFlags output;

  auto* compare = app.add_subcommand(
      "compare", "test whether two institutions' indicator values differ significantly");
  std::string left, right;
  std::int64_t compare_bonf = -1;
  add_ingest_flags(compare, ingest);
  compare->add_option("left", left, "first institution name")->required();
  compare->add_option("right", right, "second institution name")->required();
  compare->add_option("--bonferroni", compare_bonf, "Bonferroni family size m")->expected(0, 1);
  add_output_flags(compare, output);

  auto* expected = app.add_subcommand(
      "expected", "test institutions against the expected proportion (default 10%)");
  std::string expected_name;
  bool expected_all = false;
  double expected_value = 0.10;
  std::int64_t expected_bonf = -1;
  add_ingest_flags(expected, ingest);
  expected->add_option("name", expected_name, "institution name");
  expected->add_flag("--all", expected_all, "test every institution in the file");
  expected->add_option("--expected", expected_value, "expected proportion (default 0.10)");
  expected->add_option("--bonferroni", expected_bonf, "Bonferroni family size m")->expected(0, 1);
  add_output_flags(expected, output);

  auto* matrix = app.add_subcommand(
      "matrix", "all-pairs comparison matrix with family-wise Bonferroni correction");
  std::int64_t matrix_bonf = -1;
  bool matrix_no_correction = false;
  add_ingest_flags(matrix, ingest);
  matrix->add_option("--bonferroni", matrix_bonf, "override the Bonferroni family size m")
      ->expected(0, 1);
  matrix->add_flag("--no-correction", matrix_no_correction,
                   "report raw decisions only (adjusted = raw)");
  add_output_flags(matrix, output);

  auto* calibrate = app.add_subcommand(
      "calibrate", "Monte Carlo calibration of the test's Type-I error rates");
  bool null_mode = false;
  double p_common = 0.10, p1 = 0.10, p2 = 0.10;
  std::int64_t n_common = 0, n1 = 0, n2 = 0, trials = 10000, family_k = 0;
  std::uint64_t seed = 0;
  bool calibrate_no_correction = false;
  calibrate->add_flag("--null", null_mode, "draw both samples from the same proportion (--p)");
  calibrate->add_option("--p", p_common, "common true proportion (default 0.10)");
  calibrate->add_option("--p1", p1, "true proportion of sample 1");
  calibrate->add_option("--p2", p2, "true proportion of sample 2");
  calibrate->add_option("--n", n_common, "sample size for both samples");
  calibrate->add_option("--n1", n1, "sample size of sample 1");
  calibrate->add_option("--n2", n2, "sample size of sample 2");
  calibrate->add_option("--trials", trials, "Monte Carlo trials (default 10000)");
  calibrate->add_option("--seed", seed, "random seed (default 0)");
  calibrate->add_option("--family", family_k, "family mode: institutions per trial");
  calibrate->add_flag("--bonferroni", "family mode: apply Bonferroni (the default)");
  calibrate->add_flag("--no-correction", calibrate_no_correction,
                      "family mode: skip the correction");
  add_output_flags(calibrate, output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrData;
  }

  try {
    if (compare->parsed()) {
      return cmd_compare(ingest, output, left, right, compare_bonf, out, err);
    }
    if (expected->parsed()) {
      if (!expected_all && expected_name.empty()) {
        err << "error: give an institution name or --all\n";
        return kUsageOrData;
      }
      return cmd_expected(ingest, output, expected_name, expected_all, expected_value,
                          expected_bonf, out, err);
    }
    if (matrix->parsed()) {
      return cmd_matrix(ingest, output, matrix_bonf, matrix_no_correction, out, err);
    }
    return cmd_calibrate(output, null_mode, p_common, p1, p2, n_common, n1, n2, trials, seed,
                         family_k, calibrate_no_correction, out, err);
  } catch (const TooFewInstitutionsError& e) {
    err << "error: " << e.what() << '\n';
    return kTooFewInstitutions;
  } catch (const DegeneratePooledProportionError& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const ParseError& e) {
    err << "error: " << ingest.file;
    if (e.line() > 0) err << ':' << e.line();
    err << ": " << e.what() << '\n';
    return kUsageOrData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrData;
  }
}

}  // namespace zrank
