#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "reliatran/corpus.hpp"
#include "reliatran/error_analysis.hpp"
#include "reliatran/metrics.hpp"
#include "reliatran/selection.hpp"

namespace reliatran {

// Run metadata embedded in every JSON/Markdown report and mirrored to
// provenance.json. Deliberately carries no timestamps so identical inputs
// produce byte-identical reports.
struct Provenance {
  std::string tool_version;
  std::string config_digest;
  std::map<std::string, std::string> input_digests;
};

nlohmann::json to_json(const Provenance& provenance);

// RFC-4180: quote when the field contains a comma, quote, CR, or LF;
// embedded quotes doubled.
std::string csv_field(const std::string& value);
std::string csv_row(const std::vector<std::string>& fields);

// Fixed-point rendering, e.g. format_fixed(88.8888, 2) == "88.89".
std::string format_fixed(double value, int decimals);

// Rounds to `decimals` places so JSON number output stays short and stable.
double round_to(double value, int decimals);

// Creates parent directories as needed. Throws ParseError on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

struct ModelMetricsReport {
  std::string model_id;
  ErrorRates rates;
  std::int64_t missing_hypotheses = 0;
};

std::string metrics_json(const std::vector<ModelMetricsReport>& models,
                         std::int64_t unknown_utterance_hypotheses,
                         const Provenance& provenance);
std::string metrics_csv(const std::vector<ModelMetricsReport>& models);

struct TargetSummary {
  std::string target;
  ConfusionMatrix confusion;
  ClassificationMetrics metrics;
  double yield_fraction = 0.0;
};

struct SelectionUniverse {
  std::int64_t read_utterances = 0;
  std::int64_t evaluated_utterances = 0;
  std::int64_t skipped_incomplete = 0;
};

std::string selection_summary_json(const std::vector<TargetSummary>& targets,
                                   const SelectionUniverse& universe,
                                   RmmCriterion criterion,
                                   const Provenance& provenance);
std::string selection_csv(std::span<const SelectionRecord> records,
                          const std::vector<std::string>& targets);

// has_errors = false renders the proportions line as n/a (no error mass).
std::string error_table_csv(std::span<const ErrorTableRow> rows);
std::string error_table_md(const std::string& model_id, bool has_errors,
                           const SIDProportions& proportions,
                           std::span<const ErrorTableRow> rows,
                           const Provenance& provenance);

std::string fp_audit_csv(std::span<const FalsePositiveAuditRow> rows);
std::string fp_audit_md(const std::string& target,
                        std::span<const FalsePositiveAuditRow> rows,
                        const Provenance& provenance);

struct AlignmentDumpEntry {
  std::string utterance_id;
  std::string model_id;
  const AlignmentResult* alignment = nullptr;
};

std::string alignment_dump_csv(std::span<const AlignmentDumpEntry> entries);

std::string curation_report_csv(const CurationResult& result);

std::string provenance_json_text(const Provenance& provenance);

}  // namespace reliatran
