#include "reliatran/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "reliatran/errors.hpp"
#include "reliatran/selection.hpp"

namespace reliatran {

namespace {

using nlohmann::json;

json parse_line(const std::string& path, std::size_t line_no,
                const std::string& line) {
  json record = json::parse(line, nullptr, false);
  if (record.is_discarded())
    throw ParseError(path, line_no, "malformed JSON record");
  if (!record.is_object())
    throw ParseError(path, line_no, "record is not a JSON object");
  return record;
}

std::string require_string(const json& record, const char* key,
                           const std::string& path, std::size_t line_no) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string())
    throw ParseError(path, line_no,
                     std::string("missing or non-string field '") + key + "'");
  return it->get<std::string>();
}

// Tokens of the raw reference text, split on ASCII/Unicode-agnostic byte
// whitespace; markers are annotator syntax so byte-level splitting is enough.
std::vector<std::string> raw_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream stream(text);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

bool contains_marker(const Utterance& utterance,
                     const std::vector<std::string>& markers) {
  for (const auto& reference : utterance.references) {
    for (const auto& token : raw_tokens(reference.text)) {
      for (const auto& marker : markers) {
        if (!marker.empty() && token.find(marker) != std::string::npos)
          return true;
      }
    }
  }
  return false;
}

// Unbiased bounded draw, kept explicit so shuffles are reproducible
// across standard library implementations.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = (UINT64_MAX / n) * n;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % n;
}

}  // namespace

const char* to_string(SpeechType type) {
  return type == SpeechType::kRead ? "read" : "dialogue";
}

const char* to_string(RemovalReason reason) {
  return reason == RemovalReason::kMarker ? "marker" : "disagreement";
}

std::vector<Utterance> load_utterances(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");

  std::vector<Utterance> utterances;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json record = parse_line(path, line_no, line);

    Utterance utterance;
    utterance.utterance_id = require_string(record, "utterance_id", path, line_no);
    if (utterance.utterance_id.empty())
      throw ParseError(path, line_no, "empty utterance_id");
    if (!seen_ids.insert(utterance.utterance_id).second)
      throw ParseError(path, line_no,
                       "duplicate utterance_id '" + utterance.utterance_id + "'");

    std::string speech_type = require_string(record, "speech_type", path, line_no);
    if (speech_type == "read") {
      utterance.speech_type = SpeechType::kRead;
    } else if (speech_type == "dialogue") {
      utterance.speech_type = SpeechType::kDialogue;
    } else {
      throw ParseError(path, line_no,
                       "speech_type must be 'read' or 'dialogue', got '" +
                           speech_type + "'");
    }

    if (auto it = record.find("prompt"); it != record.end() && !it->is_null()) {
      if (!it->is_string())
        throw ParseError(path, line_no, "prompt must be a string or null");
      utterance.prompt = it->get<std::string>();
    }
    if (utterance.speech_type == SpeechType::kRead &&
        (!utterance.prompt || utterance.prompt->empty()))
      throw ParseError(path, line_no,
                       "read-speech record must carry a non-empty prompt");

    auto refs = record.find("references");
    if (refs == record.end() || !refs->is_array() || refs->empty())
      throw ParseError(path, line_no, "references must be a non-empty array");
    for (const auto& entry : *refs) {
      if (!entry.is_object())
        throw ParseError(path, line_no, "reference entry is not an object");
      AnnotatorReference reference;
      reference.annotator_id = require_string(entry, "annotator_id", path, line_no);
      if (reference.annotator_id.empty())
        throw ParseError(path, line_no, "empty annotator_id");
      reference.text = require_string(entry, "text", path, line_no);
      utterance.references.push_back(std::move(reference));
    }

    if (auto it = record.find("tags"); it != record.end() && !it->is_null()) {
      if (!it->is_array())
        throw ParseError(path, line_no, "tags must be an array of strings");
      for (const auto& tag : *it) {
        if (!tag.is_string())
          throw ParseError(path, line_no, "tags must be an array of strings");
        utterance.tags.push_back(tag.get<std::string>());
      }
    }

    utterances.push_back(std::move(utterance));
  }
  return utterances;
}

HypothesisMap load_hypotheses(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");

  HypothesisMap hypotheses;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json record = parse_line(path, line_no, line);

    Hypothesis hypothesis;
    hypothesis.utterance_id = require_string(record, "utterance_id", path, line_no);
    hypothesis.model_id = require_string(record, "model_id", path, line_no);
    hypothesis.text = require_string(record, "text", path, line_no);
    if (hypothesis.utterance_id.empty() || hypothesis.model_id.empty())
      throw ParseError(path, line_no, "empty utterance_id or model_id");

    auto& per_model = hypotheses[hypothesis.utterance_id];
    if (!per_model.emplace(hypothesis.model_id, hypothesis).second)
      throw ParseError(path, line_no,
                       "duplicate hypothesis for (" + hypothesis.utterance_id +
                           ", " + hypothesis.model_id + ")");
  }
  return hypotheses;
}

void save_utterances(const std::string& path,
                     const std::vector<Utterance>& utterances) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, 0, "cannot open file for writing");
  for (const auto& utterance : utterances) {
    json record;
    record["utterance_id"] = utterance.utterance_id;
    record["prompt"] = utterance.prompt ? json(*utterance.prompt) : json(nullptr);
    record["speech_type"] = to_string(utterance.speech_type);
    json refs = json::array();
    for (const auto& reference : utterance.references)
      refs.push_back({{"annotator_id", reference.annotator_id},
                      {"text", reference.text}});
    record["references"] = std::move(refs);
    record["tags"] = utterance.tags;
    out << record.dump() << '\n';
  }
  if (!out) throw ParseError(path, 0, "write failed");
}

CurationResult curate(const std::vector<Utterance>& utterances,
                      const CurationRule& rule,
                      const NormalizationConfig& prompt_match) {
  CurationResult result;
  for (const auto& utterance : utterances) {
    if (contains_marker(utterance, rule.marker_patterns)) {
      result.removed.emplace_back(utterance, RemovalReason::kMarker);
      continue;
    }
    if (rule.drop_annotator_disagreement && utterance.prompt &&
        utterance.references.size() > 1) {
      std::vector<bool> matches = annotator_prompt_matches(
          utterance.references, *utterance.prompt, prompt_match);
      bool disagree =
          std::adjacent_find(matches.begin(), matches.end(),
                             std::not_equal_to<>()) != matches.end();
      if (disagree) {
        result.removed.emplace_back(utterance, RemovalReason::kDisagreement);
        continue;
      }
    }
    result.kept.push_back(utterance);
  }
  return result;
}

std::vector<Utterance> filter_read_speech(const std::vector<Utterance>& utterances) {
  std::vector<Utterance> read;
  for (const auto& utterance : utterances)
    if (utterance.speech_type == SpeechType::kRead) read.push_back(utterance);
  return read;
}

SplitResult split(const std::vector<Utterance>& utterances, double train_ratio,
                  std::uint64_t seed) {
  if (!(train_ratio >= 0.0 && train_ratio <= 1.0))
    throw ValidationError("train ratio must lie in [0, 1]");

  const std::size_t n = utterances.size();
  // Round half up; 10642 * 0.8 must give 8514, not 8513.
  auto train_n = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * train_ratio + 0.5));
  train_n = std::min(train_n, n);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded_uniform(rng, i));
    std::swap(order[i - 1], order[j]);
  }

  std::vector<bool> in_train(n, false);
  for (std::size_t k = 0; k < train_n; ++k) in_train[order[k]] = true;

  SplitResult result;
  result.train.reserve(train_n);
  result.eval.reserve(n - train_n);
  for (std::size_t i = 0; i < n; ++i) {
    if (in_train[i])
      result.train.push_back(utterances[i]);
    else
      result.eval.push_back(utterances[i]);
  }
  return result;
}

}  // namespace reliatran
