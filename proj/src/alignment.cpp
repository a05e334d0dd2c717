#include "reliatran/alignment.hpp"

#include <algorithm>

namespace reliatran {

char edit_kind_letter(EditKind kind) {
  switch (kind) {
    case EditKind::kMatch:
      return 'C';
    case EditKind::kSubstitute:
      return 'S';
    case EditKind::kDelete:
      return 'D';
    case EditKind::kInsert:
      return 'I';
  }
  return '?';
}

AlignmentResult align(std::span<const std::string> ref_tokens,
                      std::span<const std::string> hyp_tokens) {
  const std::size_t n = ref_tokens.size();
  const std::size_t m = hyp_tokens.size();

  // Full cost matrix; utterances are short so quadratic memory is fine.
  std::vector<std::int32_t> dp((n + 1) * (m + 1));
  auto cell = [&](std::size_t i, std::size_t j) -> std::int32_t& {
    return dp[i * (m + 1) + j];
  };

  for (std::size_t j = 0; j <= m; ++j) cell(0, j) = static_cast<std::int32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cell(i, 0) = static_cast<std::int32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      std::int32_t diag =
          cell(i - 1, j - 1) + (ref_tokens[i - 1] == hyp_tokens[j - 1] ? 0 : 1);
      std::int32_t del = cell(i - 1, j) + 1;
      std::int32_t ins = cell(i, j - 1) + 1;
      cell(i, j) = std::min({diag, del, ins});
    }
  }

  AlignmentResult result;
  result.ref_len = static_cast<std::int64_t>(n);
  result.hyp_len = static_cast<std::int64_t>(m);
  result.ops.reserve(std::max(n, m));

  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    EditOp op;
    if (i > 0 && j > 0 && ref_tokens[i - 1] == hyp_tokens[j - 1] &&
        cell(i - 1, j - 1) == cell(i, j)) {
      op.kind = EditKind::kMatch;
      op.ref_token = ref_tokens[i - 1];
      op.hyp_token = hyp_tokens[j - 1];
      --i;
      --j;
      ++result.counts.matches;
    } else if (i > 0 && j > 0 && cell(i - 1, j - 1) + 1 == cell(i, j) &&
               ref_tokens[i - 1] != hyp_tokens[j - 1]) {
      op.kind = EditKind::kSubstitute;
      op.ref_token = ref_tokens[i - 1];
      op.hyp_token = hyp_tokens[j - 1];
      --i;
      --j;
      ++result.counts.substitutions;
    } else if (i > 0 && cell(i - 1, j) + 1 == cell(i, j)) {
      op.kind = EditKind::kDelete;
      op.ref_token = ref_tokens[i - 1];
      --i;
      ++result.counts.deletions;
    } else {
      op.kind = EditKind::kInsert;
      op.hyp_token = hyp_tokens[j - 1];
      --j;
      ++result.counts.insertions;
    }
    result.ops.push_back(std::move(op));
  }
  std::reverse(result.ops.begin(), result.ops.end());
  return result;
}

std::int64_t edit_distance(std::span<const std::string> ref_tokens,
                           std::span<const std::string> hyp_tokens) {
  const std::size_t n = ref_tokens.size();
  const std::size_t m = hyp_tokens.size();
  std::vector<std::int64_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      std::int64_t diag =
          prev[j - 1] + (ref_tokens[i - 1] == hyp_tokens[j - 1] ? 0 : 1);
      cur[j] = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace reliatran
