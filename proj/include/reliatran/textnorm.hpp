#pragma once

#include <string>
#include <vector>

namespace reliatran {

// Settings for the normalization pipeline applied to every text (prompt,
// manual transcription, recognizer output) before comparison. The same
// config must be used for all sides of a comparison; every rate and
// selection decision in this toolkit goes through this one pipeline.
//
// Stage order is fixed: unicode normalize -> lowercase -> punctuation
// strip -> marker strip -> whitespace collapse + trim.
struct NormalizationConfig {
  bool lowercase = true;
  // Removes punctuation codepoints. Apostrophes with a letter or digit on
  // both sides are kept, so Dutch contractions ("d'r", "z'n") survive.
  bool strip_punctuation = true;
  // Runs of whitespace become a single space; leading/trailing trimmed.
  bool collapse_whitespace = true;
  // Canonical composition (NFC).
  bool unicode_normalize = true;
  // Literal marker strings removed from whitespace-delimited tokens
  // (e.g. "*u"). Empty by default: evaluation normally keeps annotator
  // markers so marked tokens compare as mismatches; curation removes
  // marked utterances outright. Marker stripping runs after punctuation
  // stripping, so a marker containing punctuation only takes effect with
  // strip_punctuation off.
  std::vector<std::string> strip_marker_suffixes;
};

// Applies the configured pipeline. Idempotent for every config:
// normalize(normalize(x)) == normalize(x).
std::string normalize(const std::string& text, const NormalizationConfig& config);

// Splits on runs of Unicode whitespace. Empty text gives no tokens.
std::vector<std::string> tokenize_words(const std::string& text);

// One token per Unicode scalar value, spaces included. With collapsed
// whitespace this means word boundaries contribute single space tokens,
// so character error rates are sensitive to word segmentation.
std::vector<std::string> tokenize_chars(const std::string& text);

}  // namespace reliatran
