#include "reliatran/error_analysis.hpp"

#include <algorithm>
#include <tuple>

#include "reliatran/errors.hpp"

namespace reliatran {

namespace {

int kind_rank(EditKind kind) {
  switch (kind) {
    case EditKind::kSubstitute:
      return 0;
    case EditKind::kInsert:
      return 1;
    case EditKind::kDelete:
      return 2;
    case EditKind::kMatch:
      return 3;
  }
  return 3;
}

}  // namespace

SIDProportions sid_proportions(std::span<const UtteranceAlignment> alignments) {
  std::int64_t subs = 0, ins = 0, dels = 0;
  for (const auto& entry : alignments) {
    subs += entry.alignment.counts.substitutions;
    ins += entry.alignment.counts.insertions;
    dels += entry.alignment.counts.deletions;
  }
  const std::int64_t total = subs + ins + dels;
  if (total == 0)
    throw ValidationError("no errors to compute S/I/D proportions over");

  SIDProportions proportions;
  proportions.p_sub = 100.0 * static_cast<double>(subs) / static_cast<double>(total);
  proportions.p_ins = 100.0 * static_cast<double>(ins) / static_cast<double>(total);
  proportions.p_del = 100.0 * static_cast<double>(dels) / static_cast<double>(total);
  return proportions;
}

std::vector<ErrorTableRow> op_frequency_table(
    std::span<const UtteranceAlignment> alignments, std::size_t top_n,
    std::size_t max_examples) {
  using Key = std::tuple<int, std::string, std::string>;
  std::map<Key, ErrorTableRow> groups;

  for (const auto& entry : alignments) {
    for (const auto& op : entry.alignment.ops) {
      if (op.kind == EditKind::kMatch) continue;
      Key key{kind_rank(op.kind), op.ref_token.value_or(""),
              op.hyp_token.value_or("")};
      auto [it, inserted] = groups.try_emplace(key);
      ErrorTableRow& row = it->second;
      if (inserted) {
        row.kind = op.kind;
        row.ref_token = op.ref_token;
        row.hyp_token = op.hyp_token;
      }
      ++row.count;
      auto& examples = row.example_utterance_ids;
      bool room = max_examples == 0 || examples.size() < max_examples;
      if (room && std::find(examples.begin(), examples.end(),
                            entry.utterance_id) == examples.end())
        examples.push_back(entry.utterance_id);
    }
  }

  std::vector<ErrorTableRow> rows;
  rows.reserve(groups.size());
  for (auto& [key, row] : groups) rows.push_back(std::move(row));
  std::sort(rows.begin(), rows.end(),
            [](const ErrorTableRow& a, const ErrorTableRow& b) {
              if (a.count != b.count) return a.count > b.count;
              return std::tuple(kind_rank(a.kind), a.ref_token.value_or(""),
                                a.hyp_token.value_or("")) <
                     std::tuple(kind_rank(b.kind), b.ref_token.value_or(""),
                                b.hyp_token.value_or(""));
            });

  std::vector<ErrorTableRow> trimmed;
  std::map<int, std::size_t> taken;
  for (auto& row : rows) {
    if (taken[kind_rank(row.kind)]++ < top_n) trimmed.push_back(std::move(row));
  }
  return trimmed;
}

std::vector<FalsePositiveAuditRow> false_positive_audit(
    std::span<const SelectionRecord> records, const std::string& target,
    const std::map<std::string, std::string>& hypotheses,
    const std::map<std::string, std::string>& references,
    const NormalizationConfig& norm) {
  std::vector<FalsePositiveAuditRow> rows;
  for (const auto& record : records) {
    if (record.outcome_for(target) != Outcome::kFalsePositive) continue;

    auto hyp = hypotheses.find(record.utterance_id);
    auto ref = references.find(record.utterance_id);
    if (hyp == hypotheses.end() || ref == references.end())
      throw ValidationError("false-positive record '" + record.utterance_id +
                            "' has no hypothesis or reference text");

    FalsePositiveAuditRow row;
    row.utterance_id = record.utterance_id;
    row.reference_text = ref->second;
    row.hypothesis_text = hyp->second;
    const auto ref_tokens = tokenize_words(normalize(ref->second, norm));
    const auto hyp_tokens = tokenize_words(normalize(hyp->second, norm));
    row.ops = align(ref_tokens, hyp_tokens).ops;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace reliatran
