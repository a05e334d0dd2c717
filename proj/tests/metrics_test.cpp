#include "reliatran/metrics.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "reliatran/errors.hpp"
#include "reliatran/textnorm.hpp"

using reliatran::classification_metrics;
using reliatran::ConfusionMatrix;
using reliatran::corpus_error_rates;
using reliatran::EvalPair;
using reliatran::tokenize_chars;
using reliatran::tokenize_words;
using reliatran::ValidationError;

namespace {

EvalPair text_pair(const std::string& ref, const std::string& hyp) {
  return EvalPair{tokenize_words(ref), tokenize_words(hyp),
                  tokenize_chars(ref), tokenize_chars(hyp)};
}

std::vector<EvalPair> random_pairs(std::mt19937_64& rng, std::size_t count) {
  static const std::vector<std::string> vocab = {"ja", "nee", "zo", "dat"};
  std::uniform_int_distribution<std::size_t> length(1, 6);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::vector<EvalPair> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    std::string ref, hyp;
    const std::size_t ref_len = length(rng), hyp_len = length(rng);
    for (std::size_t k = 0; k < ref_len; ++k)
      ref += (k ? " " : "") + vocab[pick(rng)];
    for (std::size_t k = 0; k < hyp_len; ++k)
      hyp += (k ? " " : "") + vocab[pick(rng)];
    pairs.push_back(text_pair(ref, hyp));
  }
  return pairs;
}

}  // namespace

TEST_CASE("UER counts utterances with at least one word error") {
  std::vector<EvalPair> pairs;
  for (int i = 0; i < 6; ++i) pairs.push_back(text_pair("ja zo", "ja zo"));
  pairs.push_back(text_pair("ja zo", "ja"));
  pairs.push_back(text_pair("ja zo", "nee zo"));
  pairs.push_back(text_pair("ja zo", "ja zo dat"));
  pairs.push_back(text_pair("ja zo", "dat"));

  const auto rates = corpus_error_rates(pairs);
  CHECK(rates.uer == doctest::Approx(40.0));
  CHECK(rates.totals.utterances == 10);
  CHECK(rates.totals.errorful_utterances == 4);
}

TEST_CASE("perfect transcription scores zero everywhere") {
  const auto rates = corpus_error_rates(
      std::vector<EvalPair>{text_pair("zij heeft een klacht",
                                      "zij heeft een klacht")});
  CHECK(rates.wer == 0.0);
  CHECK(rates.cer == 0.0);
  CHECK(rates.uer == 0.0);
}

TEST_CASE("WER above 100 percent is representable") {
  const auto rates =
      corpus_error_rates(std::vector<EvalPair>{text_pair("ja", "ja ja ja")});
  CHECK(rates.wer == doctest::Approx(200.0));
  CHECK(rates.totals.word_insertions == 2);
  CHECK(rates.uer == doctest::Approx(100.0));
}

TEST_CASE("corpus WER is micro-averaged, not a mean of per-utterance rates") {
  // One word with one error plus nine clean words: 1 error over 10
  // reference words. A mean of per-utterance WERs would say 50.
  std::vector<EvalPair> pairs;
  pairs.push_back(text_pair("ja", "nee"));
  pairs.push_back(text_pair("zo dat wie wat waar hoe nu dan hier",
                            "zo dat wie wat waar hoe nu dan hier"));
  const auto rates = corpus_error_rates(pairs);
  CHECK(rates.wer == doctest::Approx(10.0));
}

TEST_CASE("error rate totals are partition and order invariant") {
  std::mt19937_64 rng(11);
  const auto pairs = random_pairs(rng, 60);
  const auto whole = corpus_error_rates(pairs);

  std::vector<EvalPair> front(pairs.begin(), pairs.begin() + 30);
  std::vector<EvalPair> back(pairs.begin() + 30, pairs.end());
  const auto a = corpus_error_rates(front);
  const auto b = corpus_error_rates(back);
  CHECK(a.totals.ref_words + b.totals.ref_words == whole.totals.ref_words);
  CHECK(a.totals.word_substitutions + b.totals.word_substitutions ==
        whole.totals.word_substitutions);
  CHECK(a.totals.word_deletions + b.totals.word_deletions ==
        whole.totals.word_deletions);
  CHECK(a.totals.word_insertions + b.totals.word_insertions ==
        whole.totals.word_insertions);

  std::vector<EvalPair> reversed(pairs.rbegin(), pairs.rend());
  const auto rev = corpus_error_rates(reversed);
  CHECK(rev.wer == whole.wer);
  CHECK(rev.cer == whole.cer);
  CHECK(rev.uer == whole.uer);
}

TEST_CASE("empty corpus is rejected") {
  CHECK_THROWS_AS(corpus_error_rates({}), ValidationError);
}

TEST_CASE("empty references are skipped with a counter") {
  std::vector<EvalPair> pairs;
  pairs.push_back(text_pair("", "ja"));
  pairs.push_back(text_pair("zo", "zo"));

  const auto rates = corpus_error_rates(pairs);
  CHECK(rates.totals.empty_reference_skips == 1);
  CHECK(rates.totals.ref_words == 1);
  // The empty-reference pair still counts as errorful.
  CHECK(rates.totals.errorful_utterances == 1);
  CHECK(rates.wer == 0.0);

  // Empty on both sides is not an error.
  const auto clean = corpus_error_rates(
      std::vector<EvalPair>{text_pair("", ""), text_pair("zo", "zo")});
  CHECK(clean.totals.errorful_utterances == 0);
}

TEST_CASE("thread count does not change the results") {
  std::mt19937_64 rng(5);
  const auto pairs = random_pairs(rng, 200);
  const auto serial = corpus_error_rates(pairs, 1);
  const auto parallel = corpus_error_rates(pairs, 4);
  CHECK(serial.wer == parallel.wer);
  CHECK(serial.cer == parallel.cer);
  CHECK(serial.uer == parallel.uer);
  CHECK(serial.totals.ref_words == parallel.totals.ref_words);
  CHECK(serial.totals.word_substitutions == parallel.totals.word_substitutions);
}

TEST_CASE("classification metrics reproduce known confusion counts") {
  SUBCASE("high precision, high recall") {
    const auto m = classification_metrics(ConfusionMatrix{640, 11, 819, 80});
    CHECK(100.0 * m.precision == doctest::Approx(98.31).epsilon(0.001));
    CHECK(100.0 * m.recall == doctest::Approx(88.89).epsilon(0.001));
    CHECK(100.0 * m.f1 == doctest::Approx(93.36).epsilon(0.001));
    CHECK(m.mcc == doctest::Approx(0.88).epsilon(0.01));
  }
  SUBCASE("high precision, low recall") {
    const auto m = classification_metrics(ConfusionMatrix{421, 3, 1060, 859});
    CHECK(100.0 * m.precision == doctest::Approx(99.29).epsilon(0.001));
    CHECK(100.0 * m.recall == doctest::Approx(32.89).epsilon(0.001));
    CHECK(100.0 * m.f1 == doctest::Approx(49.41).epsilon(0.001));
    CHECK(m.mcc == doctest::Approx(0.42).epsilon(0.02));
  }
}

TEST_CASE("perfect balanced classifier scores ones across the board") {
  const auto m = classification_metrics(ConfusionMatrix{5, 0, 5, 0});
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 1.0);
  CHECK(m.f1 == 1.0);
  CHECK(m.mcc == 1.0);
}

TEST_CASE("zero denominators fall back to zero") {
  // No positive predictions and no positive truths.
  const auto m = classification_metrics(ConfusionMatrix{0, 0, 4, 0});
  CHECK(m.precision == 0.0);
  CHECK(m.recall == 0.0);
  CHECK(m.f1 == 0.0);
  CHECK(m.mcc == 0.0);

  CHECK_THROWS_AS(classification_metrics(ConfusionMatrix{0, 0, 0, 0}),
                  ValidationError);
}

TEST_CASE("MCC stays in [-1, 1] and F1 between precision and recall") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> count(0, 2000);
  for (int i = 0; i < 500; ++i) {
    ConfusionMatrix cm{count(rng), count(rng), count(rng), count(rng)};
    if (cm.total() == 0) continue;
    const auto m = classification_metrics(cm);
    CHECK(m.mcc >= -1.0);
    CHECK(m.mcc <= 1.0);
    if (m.precision + m.recall > 0) {
      CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-12);
      CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
    }
  }

  // MCC hits 1 exactly when both error cells are empty.
  CHECK(classification_metrics(ConfusionMatrix{7, 0, 3, 0}).mcc == 1.0);
}

TEST_CASE("large confusion counts do not overflow the MCC denominator") {
  const std::int64_t big = 2'000'000'000;
  const auto m = classification_metrics(ConfusionMatrix{big, 1, big, 1});
  CHECK(m.mcc > 0.99);
  CHECK(m.mcc <= 1.0);
}
