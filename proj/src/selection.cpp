#include "reliatran/selection.hpp"

#include <algorithm>

#include "reliatran/errors.hpp"

namespace reliatran {

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kTruePositive:
      return "TP";
    case Outcome::kFalsePositive:
      return "FP";
    case Outcome::kTrueNegative:
      return "TN";
    case Outcome::kFalseNegative:
      return "FN";
  }
  return "?";
}

Outcome SelectionRecord::outcome_for(const std::string& target) const {
  auto it = rma.find(target);
  if (it == rma.end())
    throw ValidationError("selection record '" + utterance_id +
                          "' has no vote for target '" + target + "'");
  return classify_outcome(it->second, rmm);
}

bool compute_rma(const std::string& ao, const std::string& pr,
                 const NormalizationConfig& norm) {
  return normalize(ao, norm) == normalize(pr, norm);
}

std::vector<bool> annotator_prompt_matches(
    std::span<const AnnotatorReference> references, const std::string& pr,
    const NormalizationConfig& norm) {
  std::string pr_norm = normalize(pr, norm);
  std::vector<bool> matches;
  matches.reserve(references.size());
  for (const auto& ref : references)
    matches.push_back(normalize(ref.text, norm) == pr_norm);
  return matches;
}

bool compute_rmm(std::span<const AnnotatorReference> references,
                 const std::string& pr, const NormalizationConfig& norm,
                 RmmCriterion criterion) {
  if (references.empty())
    throw ValidationError("manual match needs at least one reference");
  std::vector<bool> matches = annotator_prompt_matches(references, pr, norm);
  if (criterion == RmmCriterion::kLenient)
    return std::any_of(matches.begin(), matches.end(), [](bool m) { return m; });
  return std::all_of(matches.begin(), matches.end(), [](bool m) { return m; });
}

bool apply_strategy(const std::map<std::string, bool>& votes,
                    const Strategy& strategy) {
  int agree = 0;
  for (const auto& model_id : strategy.model_ids) {
    auto it = votes.find(model_id);
    if (it == votes.end())
      throw ValidationError("strategy '" + strategy.id + "' needs a vote for model '" +
                            model_id + "'");
    if (it->second) ++agree;
  }
  switch (strategy.kind) {
    case StrategyKind::kSingle:
      return agree > 0;
    case StrategyKind::kOr:
      return agree >= 1;
    case StrategyKind::kAnd:
      return agree >= strategy.agreement_threshold;
  }
  return false;
}

ConfusionMatrix build_confusion(std::span<const SelectionRecord> records,
                                const std::string& target) {
  ConfusionMatrix cm;
  for (const auto& record : records) {
    switch (record.outcome_for(target)) {
      case Outcome::kTruePositive:
        ++cm.tp;
        break;
      case Outcome::kFalsePositive:
        ++cm.fp;
        break;
      case Outcome::kTrueNegative:
        ++cm.tn;
        break;
      case Outcome::kFalseNegative:
        ++cm.fn;
        break;
    }
  }
  return cm;
}

double selection_yield(std::span<const SelectionRecord> records,
                       const std::string& target) {
  if (records.empty()) throw ValidationError("selection yield over empty records");
  ConfusionMatrix cm = build_confusion(records, target);
  return static_cast<double>(cm.tp + cm.fp) / static_cast<double>(cm.total());
}

}  // namespace reliatran
