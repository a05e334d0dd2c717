#include "reliatran/metrics.hpp"

#include <cmath>
#include <mutex>

#include "reliatran/alignment.hpp"
#include "reliatran/errors.hpp"
#include "reliatran/parallel.hpp"

namespace reliatran {

namespace {

struct PairTally {
  EditCounts word;
  EditCounts ch;
  std::int64_t ref_words = 0;
  std::int64_t ref_chars = 0;
  bool errorful = false;
  bool empty_reference_skip = false;
};

PairTally score_pair(const EvalPair& pair) {
  PairTally tally;
  if (pair.ref_words.empty()) {
    tally.errorful = !pair.hyp_words.empty();
    tally.empty_reference_skip = true;
    return tally;
  }
  AlignmentResult words = align(pair.ref_words, pair.hyp_words);
  AlignmentResult chars = align(pair.ref_chars, pair.hyp_chars);
  tally.word = words.counts;
  tally.ch = chars.counts;
  tally.ref_words = words.ref_len;
  tally.ref_chars = chars.ref_len;
  tally.errorful = words.counts.total_errors() > 0;
  return tally;
}

double percentage(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) return 0.0;
  return 100.0 * static_cast<double>(numerator) /
         static_cast<double>(denominator);
}

}  // namespace

ErrorRates corpus_error_rates(std::span<const EvalPair> pairs,
                              unsigned threads) {
  if (pairs.empty())
    throw ValidationError("cannot compute error rates over an empty corpus");

  std::vector<PairTally> tallies(pairs.size());
  parallel_for(pairs.size(), threads,
               [&](std::size_t i) { tallies[i] = score_pair(pairs[i]); });

  ErrorRates rates;
  auto& t = rates.totals;
  t.utterances = static_cast<std::int64_t>(pairs.size());
  for (const auto& tally : tallies) {
    if (tally.errorful) ++t.errorful_utterances;
    if (tally.empty_reference_skip) {
      ++t.empty_reference_skips;
      continue;
    }
    t.ref_words += tally.ref_words;
    t.word_substitutions += tally.word.substitutions;
    t.word_deletions += tally.word.deletions;
    t.word_insertions += tally.word.insertions;
    t.ref_chars += tally.ref_chars;
    t.char_substitutions += tally.ch.substitutions;
    t.char_deletions += tally.ch.deletions;
    t.char_insertions += tally.ch.insertions;
  }

  rates.wer = percentage(
      t.word_substitutions + t.word_deletions + t.word_insertions, t.ref_words);
  rates.cer = percentage(
      t.char_substitutions + t.char_deletions + t.char_insertions, t.ref_chars);
  rates.uer = percentage(t.errorful_utterances, t.utterances);
  return rates;
}

ClassificationMetrics classification_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0)
    throw ValidationError("confusion matrix is empty");

  const auto tp = static_cast<double>(cm.tp);
  const auto fp = static_cast<double>(cm.fp);
  const auto tn = static_cast<double>(cm.tn);
  const auto fn = static_cast<double>(cm.fn);

  ClassificationMetrics metrics;
  if (tp + fp > 0) metrics.precision = tp / (tp + fp);
  if (tp + fn > 0) metrics.recall = tp / (tp + fn);
  if (metrics.precision + metrics.recall > 0)
    metrics.f1 = 2.0 * metrics.precision * metrics.recall /
                 (metrics.precision + metrics.recall);
  // Product computed in doubles; the int64 product overflows at corpus sizes
  // well below what the loaders accept.
  const double denominator =
      std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
  if (denominator > 0) metrics.mcc = (tp * tn - fp * fn) / denominator;
  return metrics;
}

}  // namespace reliatran
