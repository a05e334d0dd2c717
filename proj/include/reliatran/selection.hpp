#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "reliatran/corpus.hpp"
#include "reliatran/textnorm.hpp"

namespace reliatran {

struct ConfusionMatrix {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
};

// Outcome of comparing the automatic prompt-match decision (prediction)
// against the manual one (truth) for a single utterance.
enum class Outcome { kTruePositive, kFalsePositive, kTrueNegative, kFalseNegative };

constexpr Outcome classify_outcome(bool rma, bool rmm) {
  if (rma) return rmm ? Outcome::kTruePositive : Outcome::kFalsePositive;
  return rmm ? Outcome::kFalseNegative : Outcome::kTrueNegative;
}

// "TP", "FP", "TN", "FN".
const char* to_string(Outcome outcome);

// Per-utterance selection state. rma holds one vote per model or
// strategy id; rmm is the ground truth from the manual transcription.
struct SelectionRecord {
  std::string utterance_id;
  std::map<std::string, bool> rma;
  bool rmm = false;

  // Derived, so the truth table can never drift from rma/rmm.
  Outcome outcome_for(const std::string& target) const;
};

enum class StrategyKind { kSingle, kOr, kAnd };

// Vote-combination rule over a set of models: a single model's vote, any
// vote (or), or at least `agreement_threshold` votes (and). Because a
// vote is true only when the output matches the prompt, k true votes
// entail k identical outputs.
struct Strategy {
  StrategyKind kind = StrategyKind::kSingle;
  std::vector<std::string> model_ids;
  int agreement_threshold = 0;  // kAnd only; 1 <= k <= |model_ids|
  std::string id;               // report key
};

enum class RmmCriterion { kLenient, kStrict };

// True iff the recognizer output equals the prompt after normalization.
bool compute_rma(const std::string& ao, const std::string& pr,
                 const NormalizationConfig& norm);

// Per-annotator prompt match, in reference order.
std::vector<bool> annotator_prompt_matches(
    std::span<const AnnotatorReference> references, const std::string& pr,
    const NormalizationConfig& norm);

// Lenient: the utterance counts as correctly read if at least one
// annotator's transcription matches the prompt (it is a mistake only if
// every annotator marked it one). Strict: all annotators must match.
// The criteria coincide for a single annotator.
bool compute_rmm(std::span<const AnnotatorReference> references,
                 const std::string& pr, const NormalizationConfig& norm,
                 RmmCriterion criterion);

// Applies a strategy to per-model votes. Throws ValidationError when a
// named model's vote is missing.
bool apply_strategy(const std::map<std::string, bool>& votes,
                    const Strategy& strategy);

// Tallies TP/FP/TN/FN for one target over all records. Every record must
// carry an rma entry for the target.
ConfusionMatrix build_confusion(std::span<const SelectionRecord> records,
                                const std::string& target);

// Fraction of the corpus the target auto-accepts, (tp + fp) / total.
double selection_yield(std::span<const SelectionRecord> records,
                       const std::string& target);

}  // namespace reliatran
