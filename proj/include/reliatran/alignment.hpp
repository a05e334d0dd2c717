#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace reliatran {

enum class EditKind { kMatch, kSubstitute, kDelete, kInsert };

// Single letter used in reports and dumps: C, S, D, I.
char edit_kind_letter(EditKind kind);

// One step of an alignment. Match/substitute carry both tokens, delete
// only the reference token, insert only the hypothesis token.
struct EditOp {
  EditKind kind = EditKind::kMatch;
  std::optional<std::string> ref_token;
  std::optional<std::string> hyp_token;
};

struct EditCounts {
  std::int64_t substitutions = 0;
  std::int64_t deletions = 0;
  std::int64_t insertions = 0;
  std::int64_t matches = 0;

  std::int64_t total_errors() const { return substitutions + deletions + insertions; }
};

// Invariants: matches + substitutions + deletions == ref_len,
// matches + substitutions + insertions == hyp_len, and replaying ops
// left-to-right consumes both sequences exactly.
struct AlignmentResult {
  std::vector<EditOp> ops;
  EditCounts counts;
  std::int64_t ref_len = 0;
  std::int64_t hyp_len = 0;
};

// Minimal-cost alignment under unit costs (substitution, deletion and
// insertion cost 1, match costs 0). The backtrace is deterministic: when
// costs tie, match wins over substitute, substitute over delete, delete
// over insert, resolved right-to-left from the final cell. The total
// error count is tie-invariant; the per-category split is pinned by this
// rule so error tables reproduce run-to-run.
AlignmentResult align(std::span<const std::string> ref_tokens,
                      std::span<const std::string> hyp_tokens);

// Levenshtein distance with unit costs. Equals align(...).counts.total_errors()
// but runs in two rows of memory without a backtrace.
std::int64_t edit_distance(std::span<const std::string> ref_tokens,
                           std::span<const std::string> hyp_tokens);

}  // namespace reliatran
