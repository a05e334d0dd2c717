#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reliatran/textnorm.hpp"

namespace reliatran {

// One human annotator's orthographic transcription of an utterance. The
// text may contain annotator markers ("xxx", "*u", "*a").
struct AnnotatorReference {
  std::string annotator_id;
  std::string text;
};

enum class SpeechType { kRead, kDialogue };

const char* to_string(SpeechType type);

// One recording's metadata. Read speech always carries the prompt the
// child was asked to read; dialogue speech has none.
struct Utterance {
  std::string utterance_id;
  std::optional<std::string> prompt;
  std::vector<AnnotatorReference> references;
  SpeechType speech_type = SpeechType::kRead;
  std::vector<std::string> tags;
};

// One model's recognizer output for one utterance.
struct Hypothesis {
  std::string utterance_id;
  std::string model_id;
  std::string text;
};

// utterance_id -> model_id -> hypothesis.
using HypothesisMap = std::map<std::string, std::map<std::string, Hypothesis>>;

struct CurationRule {
  // Matched as substrings of whitespace-delimited raw reference tokens,
  // so "blazen*a" is caught by "*a".
  std::vector<std::string> marker_patterns{"xxx", "*u", "*a"};
  bool drop_annotator_disagreement = true;
};

enum class RemovalReason { kMarker, kDisagreement };

const char* to_string(RemovalReason reason);

struct CurationResult {
  std::vector<Utterance> kept;
  std::vector<std::pair<Utterance, RemovalReason>> removed;
};

struct SplitResult {
  std::vector<Utterance> train;
  std::vector<Utterance> eval;
};

// Reads a JSONL manifest, one utterance object per line. Validates the
// manifest invariants (unique ids, read speech has a non-empty prompt,
// references non-empty) and reports failures with the offending line.
std::vector<Utterance> load_utterances(const std::string& path);

// Reads a JSONL hypothesis file. Duplicate (utterance_id, model_id)
// pairs are rejected; hypotheses for utterances missing from a manifest
// are accepted here and reported at join time.
HypothesisMap load_hypotheses(const std::string& path);

// Writes a manifest in the same JSONL format load_utterances reads.
void save_utterances(const std::string& path,
                     const std::vector<Utterance>& utterances);

// Partitions utterances into kept and removed. An utterance is removed
// with reason marker when any reference token contains a marker pattern,
// else with reason disagreement when the rule asks for it and the
// per-annotator prompt matches differ. |kept| + |removed| == |input| and
// curating the kept set again removes nothing.
CurationResult curate(const std::vector<Utterance>& utterances,
                      const CurationRule& rule,
                      const NormalizationConfig& prompt_match);

std::vector<Utterance> filter_read_speech(const std::vector<Utterance>& utterances);

// Seeded uniform shuffle at the utterance level; train takes
// round-half-up(n * train_ratio) members. Membership is deterministic
// for a fixed seed and both parts preserve manifest order.
SplitResult split(const std::vector<Utterance>& utterances, double train_ratio,
                  std::uint64_t seed);

}  // namespace reliatran
