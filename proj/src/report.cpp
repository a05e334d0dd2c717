#include "reliatran/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "reliatran/errors.hpp"

namespace reliatran {

namespace {

using nlohmann::json;

const char* kNone = "(none)";

std::string op_ref(const EditOp& op) { return op.ref_token.value_or(""); }
std::string op_hyp(const EditOp& op) { return op.hyp_token.value_or(""); }

json totals_json(const ErrorRateTotals& t) {
  return json{{"utterances", t.utterances},
              {"errorful_utterances", t.errorful_utterances},
              {"empty_reference_skips", t.empty_reference_skips},
              {"ref_words", t.ref_words},
              {"word_substitutions", t.word_substitutions},
              {"word_deletions", t.word_deletions},
              {"word_insertions", t.word_insertions},
              {"ref_chars", t.ref_chars},
              {"char_substitutions", t.char_substitutions},
              {"char_deletions", t.char_deletions},
              {"char_insertions", t.char_insertions}};
}

// Markdown table cells: escape pipes so tokens cannot break the row.
std::string md_cell(const std::string& value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    if (c == '|') out += "\\|";
    else out.push_back(c);
  }
  return out;
}

std::string provenance_md(const Provenance& provenance) {
  std::ostringstream out;
  out << "Tool version: " << provenance.tool_version
      << " | config digest: " << provenance.config_digest << "\n\n";
  return out.str();
}

}  // namespace

json to_json(const Provenance& provenance) {
  json inputs = json::object();
  for (const auto& [label, digest] : provenance.input_digests)
    inputs[label] = digest;
  return json{{"tool_version", provenance.tool_version},
              {"config_sha256", provenance.config_digest},
              {"input_sha256", inputs}};
}

std::string csv_field(const std::string& value) {
  const bool needs_quoting =
      value.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quoting) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec)
      throw ParseError(path, 0, "cannot create directory: " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, 0, "cannot open file for writing");
  out << content;
  if (!out) throw ParseError(path, 0, "write failed");
}

std::string metrics_json(const std::vector<ModelMetricsReport>& models,
                         std::int64_t unknown_utterance_hypotheses,
                         const Provenance& provenance) {
  json models_json = json::array();
  for (const auto& model : models) {
    models_json.push_back(
        json{{"model_id", model.model_id},
             {"wer", round_to(model.rates.wer, 2)},
             {"cer", round_to(model.rates.cer, 2)},
             {"uer", round_to(model.rates.uer, 2)},
             {"totals", totals_json(model.rates.totals)},
             {"warnings", json{{"missing_hypotheses", model.missing_hypotheses}}}});
  }
  json report{{"models", std::move(models_json)},
              {"provenance", to_json(provenance)},
              {"warnings", json{{"hypotheses_for_unknown_utterances",
                                 unknown_utterance_hypotheses}}}};
  return report.dump(2) + "\n";
}

std::string metrics_csv(const std::vector<ModelMetricsReport>& models) {
  std::string out = csv_row({"Model", "WER", "CER", "UER"});
  for (const auto& model : models)
    out += csv_row({model.model_id, format_fixed(model.rates.wer, 2),
                    format_fixed(model.rates.cer, 2),
                    format_fixed(model.rates.uer, 2)});
  return out;
}

std::string selection_summary_json(const std::vector<TargetSummary>& targets,
                                   const SelectionUniverse& universe,
                                   RmmCriterion criterion,
                                   const Provenance& provenance) {
  json targets_json = json::array();
  for (const auto& target : targets) {
    targets_json.push_back(
        json{{"target", target.target},
             {"tp", target.confusion.tp},
             {"fp", target.confusion.fp},
             {"tn", target.confusion.tn},
             {"fn", target.confusion.fn},
             {"precision", round_to(100.0 * target.metrics.precision, 2)},
             {"recall", round_to(100.0 * target.metrics.recall, 2)},
             {"f1", round_to(100.0 * target.metrics.f1, 2)},
             {"mcc", round_to(target.metrics.mcc, 4)},
             {"yield", round_to(100.0 * target.yield_fraction, 2)}});
  }
  json report{
      {"provenance", to_json(provenance)},
      {"rmm_criterion",
       criterion == RmmCriterion::kLenient ? "lenient" : "strict"},
      {"targets", std::move(targets_json)},
      {"universe", json{{"read_utterances", universe.read_utterances},
                        {"evaluated_utterances", universe.evaluated_utterances},
                        {"skipped_incomplete", universe.skipped_incomplete}}}};
  return report.dump(2) + "\n";
}

std::string selection_csv(std::span<const SelectionRecord> records,
                          const std::vector<std::string>& targets) {
  std::string out = csv_row({"utterance_id", "target", "rma", "rmm", "outcome"});
  for (const auto& record : records) {
    for (const auto& target : targets) {
      out += csv_row({record.utterance_id, target,
                      record.rma.at(target) ? "1" : "0",
                      record.rmm ? "1" : "0",
                      to_string(record.outcome_for(target))});
    }
  }
  return out;
}

std::string error_table_csv(std::span<const ErrorTableRow> rows) {
  std::string out =
      csv_row({"kind", "ref_token", "hyp_token", "count", "examples"});
  for (const auto& row : rows) {
    std::string examples;
    for (std::size_t i = 0; i < row.example_utterance_ids.size(); ++i) {
      if (i > 0) examples += ';';
      examples += row.example_utterance_ids[i];
    }
    out += csv_row({std::string(1, edit_kind_letter(row.kind)),
                    row.ref_token.value_or(kNone),
                    row.hyp_token.value_or(kNone),
                    std::to_string(row.count), examples});
  }
  return out;
}

std::string error_table_md(const std::string& model_id, bool has_errors,
                           const SIDProportions& proportions,
                           std::span<const ErrorTableRow> rows,
                           const Provenance& provenance) {
  std::ostringstream out;
  out << "# Common errors: " << model_id << "\n\n";
  out << provenance_md(provenance);
  if (has_errors) {
    out << "Error mass: substitutions " << format_fixed(proportions.p_sub, 2)
        << "%, insertions " << format_fixed(proportions.p_ins, 2)
        << "%, deletions " << format_fixed(proportions.p_del, 2) << "%.\n\n";
  } else {
    out << "No errors in this corpus.\n\n";
  }
  out << "| Error | MO → AO | Description | Frequency |\n";
  out << "|---|---|---|---|\n";
  for (const auto& row : rows) {
    out << "| " << edit_kind_letter(row.kind) << " | "
        << md_cell(row.ref_token.value_or(kNone)) << " → "
        << md_cell(row.hyp_token.value_or(kNone)) << " |  | " << row.count
        << " |\n";
  }
  return out.str();
}

std::string fp_audit_csv(std::span<const FalsePositiveAuditRow> rows) {
  std::string out = csv_row({"utterance_id", "reference", "hypothesis",
                             "op_index", "kind", "ref_token", "hyp_token"});
  for (const auto& row : rows) {
    std::size_t op_index = 0;
    for (const auto& op : row.ops) {
      if (op.kind != EditKind::kMatch) {
        out += csv_row({row.utterance_id, row.reference_text,
                        row.hypothesis_text, std::to_string(op_index),
                        std::string(1, edit_kind_letter(op.kind)), op_ref(op),
                        op_hyp(op)});
      }
      ++op_index;
    }
  }
  return out;
}

std::string fp_audit_md(const std::string& target,
                        std::span<const FalsePositiveAuditRow> rows,
                        const Provenance& provenance) {
  std::ostringstream out;
  out << "# False positives: " << target << "\n\n";
  out << provenance_md(provenance);
  out << "Utterances auto-accepted although the manual transcription "
         "disagrees with the prompt. " << rows.size() << " in total.\n\n";
  out << "| Utterance | MO | AO | Errors |\n";
  out << "|---|---|---|---|\n";
  for (const auto& row : rows) {
    std::string errors;
    for (const auto& op : row.ops) {
      if (op.kind == EditKind::kMatch) continue;
      if (!errors.empty()) errors += "; ";
      errors += edit_kind_letter(op.kind);
      errors += ": ";
      errors += op.ref_token.value_or(kNone);
      errors += " → ";
      errors += op.hyp_token.value_or(kNone);
    }
    out << "| " << md_cell(row.utterance_id) << " | "
        << md_cell(row.reference_text) << " | " << md_cell(row.hypothesis_text)
        << " | " << md_cell(errors) << " |\n";
  }
  return out.str();
}

std::string alignment_dump_csv(std::span<const AlignmentDumpEntry> entries) {
  std::string out = csv_row({"utterance_id", "model_id", "op_index", "kind",
                             "ref_token", "hyp_token"});
  for (const auto& entry : entries) {
    std::size_t op_index = 0;
    for (const auto& op : entry.alignment->ops) {
      out += csv_row({entry.utterance_id, entry.model_id,
                      std::to_string(op_index),
                      std::string(1, edit_kind_letter(op.kind)), op_ref(op),
                      op_hyp(op)});
      ++op_index;
    }
  }
  return out;
}

std::string curation_report_csv(const CurationResult& result) {
  std::string out = csv_row({"utterance_id", "reason"});
  for (const auto& [utterance, reason] : result.removed)
    out += csv_row({utterance.utterance_id, to_string(reason)});
  return out;
}

std::string provenance_json_text(const Provenance& provenance) {
  return to_json(provenance).dump(2) + "\n";
}

}  // namespace reliatran
