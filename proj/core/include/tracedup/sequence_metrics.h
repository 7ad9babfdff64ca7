// Copyright 2026 The tracedup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRACEDUP_SEQUENCE_METRICS_H_
#define TRACEDUP_SEQUENCE_METRICS_H_

// Token-type-generic kernels shared by the string-based API and the
// interned-id scoring path. Every kernel is symmetric in its two inputs
// bit-for-bit: swapping the arguments performs the same floating-point
// operations on the same operands.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tracedup::seq {

// Minimum total cost of an edit script turning `a` into `b`: deleting a[i]
// costs wa[i], inserting b[j] costs wb[j], substituting costs wa[i] + wb[j]
// and keeping an equal token costs 0. No transpositions.
template <typename Token>
double WeightedLevenshtein(std::span<const Token> a, std::span<const double> wa,
                           std::span<const Token> b,
                           std::span<const double> wb) {
  assert(a.size() == wa.size() && b.size() == wb.size());
  std::vector<double> prev(b.size() + 1);
  std::vector<double> cur(b.size() + 1);
  prev[0] = 0.0;
  for (size_t j = 1; j <= b.size(); ++j) prev[j] = prev[j - 1] + wb[j - 1];
  for (size_t i = 1; i <= a.size(); ++i) {
    const double del_cost = wa[i - 1];
    cur[0] = prev[0] + del_cost;
    for (size_t j = 1; j <= b.size(); ++j) {
      const double deletion = prev[j] + del_cost;
      const double insertion = cur[j - 1] + wb[j - 1];
      const double diagonal =
          a[i - 1] == b[j - 1] ? prev[j - 1]
                               : prev[j - 1] + (del_cost + wb[j - 1]);
      cur[j] = std::min(std::min(deletion, insertion), diagonal);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Largest total weight wa[i] + wb[j] over order-preserving matchings of
// equal tokens (a weighted longest common subsequence).
template <typename Token>
double MatchedWeight(std::span<const Token> a, std::span<const double> wa,
                     std::span<const Token> b, std::span<const double> wb) {
  assert(a.size() == wa.size() && b.size() == wb.size());
  std::vector<double> prev(b.size() + 1, 0.0);
  std::vector<double> cur(b.size() + 1, 0.0);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = 0.0;
    for (size_t j = 1; j <= b.size(); ++j) {
      double best = std::max(prev[j], cur[j - 1]);
      if (a[i - 1] == b[j - 1]) {
        best = std::max(best, prev[j - 1] + (wa[i - 1] + wb[j - 1]));
      }
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// 1 - WeightedLevenshtein / (sum of all weights). Since a substitution costs
// a deletion plus an insertion, the weight total equals distance + matched
// weight; normalizing by that sum makes equal sequences score exactly 1 and
// token-disjoint ones exactly 0. Two empty sequences score 1.
template <typename Token>
double WeightedEditSimilarity(std::span<const Token> a,
                              std::span<const double> wa,
                              std::span<const Token> b,
                              std::span<const double> wb) {
  const double distance = WeightedLevenshtein<Token>(a, wa, b, wb);
  if (distance == 0.0) return 1.0;
  const double total = distance + MatchedWeight<Token>(a, wa, b, wb);
  return std::clamp(1.0 - distance / total, 0.0, 1.0);
}

// Classic unit-cost Levenshtein distance (substitution costs 1).
template <typename Token>
size_t Levenshtein(std::span<const Token> a, std::span<const Token> b) {
  std::vector<size_t> prev(b.size() + 1);
  std::vector<size_t> cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t substitution = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitution});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

template <typename Token>
size_t CommonPrefixLength(std::span<const Token> a, std::span<const Token> b) {
  const size_t n = std::min(a.size(), b.size());
  size_t k = 0;
  while (k < n && a[k] == b[k]) ++k;
  return k;
}

// Occurrence counts sorted by token.
template <typename Token>
using TermCounts = std::vector<std::pair<Token, uint32_t>>;

template <typename Token>
TermCounts<Token> CountTerms(std::span<const Token> tokens) {
  std::vector<Token> sorted(tokens.begin(), tokens.end());
  std::sort(sorted.begin(), sorted.end());
  TermCounts<Token> counts;
  for (const Token& token : sorted) {
    if (!counts.empty() && counts.back().first == token) {
      ++counts.back().second;
    } else {
      counts.emplace_back(token, 1);
    }
  }
  return counts;
}

// Cosine of the vectors v[t] = count(t) * weight(t). When a vector has zero
// norm (every weight 0), the result is 1 for equal count tables and 0
// otherwise.
template <typename Token, typename WeightFn>
double CosineSimilarity(const TermCounts<Token>& a, const TermCounts<Token>& b,
                        WeightFn&& weight) {
  double norm_a = 0.0;
  for (const auto& [token, count] : a) {
    const double v = count * weight(token);
    norm_a += v * v;
  }
  double norm_b = 0.0;
  for (const auto& [token, count] : b) {
    const double v = count * weight(token);
    norm_b += v * v;
  }
  if (norm_a == 0.0 || norm_b == 0.0) return a == b ? 1.0 : 0.0;

  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      const double w = weight(ia->first);
      dot += (ia->second * w) * (ib->second * w);
      ++ia;
      ++ib;
    }
  }
  const double cosine = dot / std::sqrt(norm_a * norm_b);
  return std::clamp(cosine, 0.0, 1.0);
}

// Position-dependent alignment similarity: the best order-preserving
// alignment of equal tokens, each aligned pair (i, j) scoring
// exp(-c * min(i, j)) * exp(-o * |i - j|), normalized by the score of a
// perfect alignment of the shorter sequence.
template <typename Token>
double AlignmentSimilarity(std::span<const Token> a, std::span<const Token> b,
                           double c, double o) {
  const size_t shorter = std::min(a.size(), b.size());
  if (shorter == 0) return a.size() == b.size() ? 1.0 : 0.0;
  double normalizer = 0.0;
  for (size_t k = 0; k < shorter; ++k) {
    normalizer += std::exp(-c * static_cast<double>(k));
  }
  std::vector<double> prev(b.size() + 1, 0.0);
  std::vector<double> cur(b.size() + 1, 0.0);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = 0.0;
    for (size_t j = 1; j <= b.size(); ++j) {
      double best = std::max(prev[j], cur[j - 1]);
      if (a[i - 1] == b[j - 1]) {
        const size_t lo = std::min(i, j) - 1;
        const size_t gap = i > j ? i - j : j - i;
        const double gain = std::exp(-c * static_cast<double>(lo)) *
                            std::exp(-o * static_cast<double>(gap));
        best = std::max(best, prev[j - 1] + gain);
      }
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return std::clamp(prev[b.size()] / normalizer, 0.0, 1.0);
}

// Indices of the elements kept after collapsing runs of >= 2 adjacent copies
// of a block (length 1..max_block) into one copy. At each position the
// longest block is tried first; scanning is left to right and passes repeat
// until nothing changes, so the result is a fixpoint.
template <typename Token>
std::vector<size_t> CollapseRepeats(std::span<const Token> tokens,
                                    size_t max_block) {
  std::vector<size_t> kept(tokens.size());
  for (size_t i = 0; i < kept.size(); ++i) kept[i] = i;
  if (max_block == 0) return kept;

  const auto same_block = [&](const std::vector<size_t>& seq, size_t x,
                              size_t y, size_t len) {
    for (size_t k = 0; k < len; ++k) {
      if (!(tokens[seq[x + k]] == tokens[seq[y + k]])) return false;
    }
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<size_t> next;
    next.reserve(kept.size());
    size_t i = 0;
    while (i < kept.size()) {
      bool collapsed = false;
      const size_t longest = std::min(max_block, (kept.size() - i) / 2);
      for (size_t len = longest; len >= 1; --len) {
        if (!same_block(kept, i, i + len, len)) continue;
        size_t repeats = 2;
        while (i + (repeats + 1) * len <= kept.size() &&
               same_block(kept, i, i + repeats * len, len)) {
          ++repeats;
        }
        next.insert(next.end(), kept.begin() + i, kept.begin() + i + len);
        i += repeats * len;
        collapsed = true;
        changed = true;
        break;
      }
      if (!collapsed) next.push_back(kept[i++]);
    }
    kept = std::move(next);
  }
  return kept;
}

}  // namespace tracedup::seq

#endif  // TRACEDUP_SEQUENCE_METRICS_H_
