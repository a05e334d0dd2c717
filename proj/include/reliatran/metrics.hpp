#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "reliatran/selection.hpp"

namespace reliatran {

// One utterance prepared for scoring: both sides already normalized and
// tokenized. ref_chars/hyp_chars hold one Unicode scalar per element,
// spaces included.
struct EvalPair {
  std::vector<std::string> ref_words;
  std::vector<std::string> hyp_words;
  std::vector<std::string> ref_chars;
  std::vector<std::string> hyp_chars;
};

struct ErrorRateTotals {
  std::int64_t utterances = 0;
  std::int64_t errorful_utterances = 0;
  std::int64_t empty_reference_skips = 0;
  std::int64_t ref_words = 0;
  std::int64_t word_substitutions = 0;
  std::int64_t word_deletions = 0;
  std::int64_t word_insertions = 0;
  std::int64_t ref_chars = 0;
  std::int64_t char_substitutions = 0;
  std::int64_t char_deletions = 0;
  std::int64_t char_insertions = 0;
};

// Percentages; micro-averaged, so corpus WER = sum(S+D+I) / sum(ref words).
// Rates can exceed 100 when insertions dominate.
struct ErrorRates {
  double wer = 0.0;
  double cer = 0.0;
  double uer = 0.0;
  ErrorRateTotals totals;
};

// Scores a corpus of aligned pairs. An utterance counts toward UER when its
// word-level alignment carries at least one substitution, deletion, or
// insertion. Pairs with an empty reference and a non-empty hypothesis are
// errorful by definition but contribute no ref tokens; they are counted in
// empty_reference_skips and excluded from the WER/CER denominators.
// Throws ValidationError when pairs is empty. threads <= 1 runs serially.
ErrorRates corpus_error_rates(std::span<const EvalPair> pairs,
                              unsigned threads = 1);

// Fractions in [0, 1]. Any metric whose denominator is zero is reported
// as 0 rather than NaN.
struct ClassificationMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double mcc = 0.0;
};

// Throws ValidationError when the matrix is all zeros.
ClassificationMetrics classification_metrics(const ConfusionMatrix& cm);

}  // namespace reliatran
