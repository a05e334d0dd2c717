#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reliatran/alignment.hpp"
#include "reliatran/selection.hpp"
#include "reliatran/textnorm.hpp"

namespace reliatran {

struct UtteranceAlignment {
  std::string utterance_id;
  AlignmentResult alignment;
};

// Shares of the error mass only; matches are excluded, so the three
// percentages sum to 100 up to rounding.
struct SIDProportions {
  double p_sub = 0.0;
  double p_ins = 0.0;
  double p_del = 0.0;
};

// One grouped error pattern. ref_token is empty for insertions and
// hyp_token is empty for deletions; reports render the missing side
// as "(none)".
struct ErrorTableRow {
  EditKind kind = EditKind::kSubstitute;
  std::optional<std::string> ref_token;
  std::optional<std::string> hyp_token;
  std::int64_t count = 0;
  std::vector<std::string> example_utterance_ids;
};

struct FalsePositiveAuditRow {
  std::string utterance_id;
  std::string reference_text;
  std::string hypothesis_text;
  std::vector<EditOp> ops;
};

// Throws ValidationError when the alignments carry no errors at all.
SIDProportions sid_proportions(std::span<const UtteranceAlignment> alignments);

// Groups error ops by (kind, ref_token, hyp_token) and returns the top_n
// rows per kind. Rows are ordered by count descending, ties broken by
// (kind, ref, hyp) with kinds ranked substitute < insert < delete.
// Each row lists up to max_examples distinct utterance ids in corpus
// order; max_examples = 0 lifts the cap.
std::vector<ErrorTableRow> op_frequency_table(
    std::span<const UtteranceAlignment> alignments, std::size_t top_n,
    std::size_t max_examples = 5);

// One row per record whose outcome for `target` is FP, in record order.
// hypotheses/references map utterance_id to the raw AO/MO text; the row
// keeps those raw strings and attaches the word-level alignment of their
// normalized forms. Throws ValidationError when an FP record lacks a
// text entry.
std::vector<FalsePositiveAuditRow> false_positive_audit(
    std::span<const SelectionRecord> records, const std::string& target,
    const std::map<std::string, std::string>& hypotheses,
    const std::map<std::string, std::string>& references,
    const NormalizationConfig& norm);

}  // namespace reliatran
