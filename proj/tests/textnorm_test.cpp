#include "reliatran/textnorm.hpp"

#include <random>
#include <string>
#include <vector>

#include "doctest.h"

using reliatran::NormalizationConfig;
using reliatran::normalize;
using reliatran::tokenize_chars;
using reliatran::tokenize_words;

namespace {

const NormalizationConfig kDefault;

// Inputs mixing casing, punctuation, accents (composed and decomposed),
// markers, and whitespace runs.
std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "a",  "B",   "c",   "'",  "’",  ".",  ",",  "!",  " ",  "\t",
      "\n", "  ",  "é",   "e\xcc\x81",  // e + combining acute
      "IJ", "xxx", "*u",  "*a", "d'r", "zo", "0",  "-",  "\"", "ß"};
  std::uniform_int_distribution<std::size_t> count(0, 12);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string out;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) out += pieces[pick(rng)];
  return out;
}

}  // namespace

TEST_CASE("normalize lowercases and strips punctuation") {
  CHECK(normalize("Duikplank.", kDefault) == "duikplank");
  CHECK(normalize("Hoge  Bomen!", kDefault) == "hoge bomen");
  CHECK(normalize("\"Zij heeft, een klacht.\"", kDefault) ==
        "zij heeft een klacht");
}

TEST_CASE("normalize keeps intra-word apostrophes") {
  CHECK(normalize("d'r", kDefault) == "d'r");
  CHECK(normalize("z'n", kDefault) == "z'n");
  // Curly apostrophe counts too.
  CHECK(normalize("d\xe2\x80\x99r", kDefault) == "d\xe2\x80\x99r");
  // Edge apostrophes are punctuation.
  CHECK(normalize("'ja'", kDefault) == "ja");
  CHECK(normalize("ja '", kDefault) == "ja");
}

TEST_CASE("normalize collapses and trims whitespace") {
  CHECK(normalize("  zo \t is\ndat  ", kDefault) == "zo is dat");
  CHECK(normalize("   ", kDefault) == "");
  CHECK(normalize("", kDefault) == "");
}

TEST_CASE("normalize composes decomposed accents") {
  // "e" + U+0301 equals precomposed U+00E9 after the pipeline.
  CHECK(normalize("e\xcc\x81", kDefault) == normalize("\xc3\xa9", kDefault));
  CHECK(normalize("caf\xc3\xa9.", kDefault) == "caf\xc3\xa9");
}

TEST_CASE("normalize strips configured markers from tokens") {
  NormalizationConfig config;
  config.strip_punctuation = false;
  config.strip_marker_suffixes = {"*u", "*a", "xxx"};
  CHECK(normalize("braden*u", config) == "braden");
  CHECK(normalize("blazen*a zo", config) == "blazen zo");
  CHECK(normalize("xxx", config) == "");
  // Removal exposing another occurrence still ends marker-free:
  // "abaabbab" -> "aabbab" -> "abab" -> "ab" -> "".
  NormalizationConfig doubled = config;
  doubled.strip_marker_suffixes = {"ab"};
  CHECK(normalize("abaabbab", doubled) == "");
}

TEST_CASE("marker stripping after punctuation stripping") {
  // With punctuation stripped first, "*u" can no longer match; the marker
  // only matters when strip_punctuation is off.
  NormalizationConfig config;
  config.strip_marker_suffixes = {"*u"};
  CHECK(normalize("braden*u", config) == "bradenu");
}

TEST_CASE("normalize stage toggles") {
  NormalizationConfig config;
  config.lowercase = false;
  CHECK(normalize("Ja Zeker", config) == "Ja Zeker");

  config = NormalizationConfig{};
  config.strip_punctuation = false;
  CHECK(normalize("ja!", config) == "ja!");

  config = NormalizationConfig{};
  config.collapse_whitespace = false;
  CHECK(normalize("ja  zo", config) == "ja  zo");
}

TEST_CASE("normalize replaces invalid UTF-8 instead of failing") {
  const std::string broken = "ja\xff\xfezo";
  const std::string out = normalize(broken, kDefault);
  CHECK(out == normalize(out, kDefault));
}

TEST_CASE("normalize is idempotent") {
  std::vector<NormalizationConfig> configs;
  configs.push_back(NormalizationConfig{});
  NormalizationConfig no_punct;
  no_punct.strip_punctuation = false;
  configs.push_back(no_punct);
  NormalizationConfig markers;
  markers.strip_punctuation = false;
  markers.strip_marker_suffixes = {"*u", "*a", "xxx"};
  configs.push_back(markers);
  // Marker that eats letters: stripping can expose apostrophes at token
  // edges, the hardest case for stability.
  NormalizationConfig greedy;
  greedy.strip_marker_suffixes = {"a", "b"};
  configs.push_back(greedy);
  NormalizationConfig no_unicode;
  no_unicode.unicode_normalize = false;
  configs.push_back(no_unicode);

  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 500; ++i) {
    const std::string text = random_text(rng);
    for (const auto& config : configs) {
      const std::string once = normalize(text, config);
      CAPTURE(text);
      CHECK(normalize(once, config) == once);
    }
  }
}

TEST_CASE("normalize introduces no new characters beyond space") {
  // Every output codepoint is a space or survives from the lowercased
  // input (modulo canonical composition).
  std::mt19937_64 rng(7);
  NormalizationConfig no_unicode;
  no_unicode.unicode_normalize = false;
  for (int i = 0; i < 200; ++i) {
    const std::string text = random_text(rng);
    NormalizationConfig lower_only;
    lower_only.strip_punctuation = false;
    lower_only.collapse_whitespace = false;
    lower_only.unicode_normalize = false;
    const std::string lowered = normalize(text, lower_only);
    const std::string out = normalize(text, no_unicode);
    for (const auto& token : tokenize_chars(out)) {
      const bool known = token == " " || lowered.find(token) != std::string::npos;
      CAPTURE(text);
      CHECK(known);
    }
  }
}

TEST_CASE("tokenize_words splits on whitespace runs") {
  CHECK(tokenize_words("zij heeft een klacht").size() == 4);
  CHECK(tokenize_words("").empty());
  CHECK(tokenize_words("hoge bomen") ==
        std::vector<std::string>{"hoge", "bomen"});
  CHECK(tokenize_words("  ja   zo  ") == std::vector<std::string>{"ja", "zo"});
}

TEST_CASE("tokenize_words round-trips through a single-space join") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto tokens = tokenize_words(random_text(rng));
    std::string joined;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (t > 0) joined += ' ';
      joined += tokens[t];
    }
    CHECK(tokenize_words(joined) == tokens);
  }
}

TEST_CASE("tokenize_chars yields one token per scalar, spaces included") {
  CHECK(tokenize_chars("ja") == std::vector<std::string>{"j", "a"});
  CHECK(tokenize_chars("a b") == std::vector<std::string>{"a", " ", "b"});
  CHECK(tokenize_chars("schrapen").size() == 8);
  // One token for a multi-byte scalar.
  CHECK(tokenize_chars("\xc3\xa9").size() == 1);
  CHECK(tokenize_chars("").empty());
}
