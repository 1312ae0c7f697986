#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecforge/sentence.hpp"
#include "gecforge/utf8.hpp"

namespace gecforge {

// ---------------------------------------------------------------------------
// Character level
// ---------------------------------------------------------------------------

inline std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// Levenshtein distance divided by the longer length; 0 for two empty strings.
inline double normalized_levenshtein(std::u32string_view a, std::u32string_view b) {
  std::size_t n = std::max(a.size(), b.size());
  return n == 0 ? 0.0 : static_cast<double>(levenshtein(a, b)) / static_cast<double>(n);
}

inline double normalized_levenshtein(std::string_view a, std::string_view b) {
  return normalized_levenshtein(utf8::to_u32(a), utf8::to_u32(b));
}

enum class CharEdit : std::uint8_t { Keep, Sub, Ins, Del };

struct CharOp {
  CharEdit kind;
  std::size_t src_pos;  // index into source; insertion point for Ins
  std::size_t tgt_pos;  // index into target; position reached so far for Del
  char32_t from;        // 0 for Ins
  char32_t to;          // 0 for Del

  friend bool operator==(const CharOp&, const CharOp&) = default;
};

struct CharEditScript {
  std::vector<CharOp> ops;

  std::size_t distance() const {
    return static_cast<std::size_t>(
        std::count_if(ops.begin(), ops.end(), [](const CharOp& o) { return o.kind != CharEdit::Keep; }));
  }

  std::u32string apply(std::u32string_view source) const {
    std::u32string out;
    std::size_t i = 0;
    for (const CharOp& op : ops) {
      switch (op.kind) {
        case CharEdit::Keep: out.push_back(source.at(i++)); break;
        case CharEdit::Sub: ++i; out.push_back(op.to); break;
        case CharEdit::Del: ++i; break;
        case CharEdit::Ins: out.push_back(op.to); break;
      }
    }
    return out;
  }
};

/// Minimum-length unit-cost script turning `a` into `b`. Matching characters are
/// kept whenever possible; among edits, sub beats del beats ins, leftmost first.
inline CharEditScript char_edit_script(std::u32string_view a, std::u32string_view b) {
  const std::size_t n = a.size(), m = b.size();
  // dist[i][j]: distance between suffixes a[i..] and b[j..]
  std::vector<std::size_t> dist((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return dist[i * (m + 1) + j]; };
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n) {
        at(i, j) = m - j;
      } else if (j == m) {
        at(i, j) = n - i;
      } else {
        std::size_t best = at(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
        best = std::min({best, at(i + 1, j) + 1, at(i, j + 1) + 1});
        at(i, j) = best;
      }
    }
  }
  CharEditScript script;
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j] && at(i, j) == at(i + 1, j + 1)) {
      script.ops.push_back({CharEdit::Keep, i, j, a[i], b[j]});
      ++i, ++j;
    } else if (i < n && j < m && at(i, j) == at(i + 1, j + 1) + 1) {
      script.ops.push_back({CharEdit::Sub, i, j, a[i], b[j]});
      ++i, ++j;
    } else if (i < n && at(i, j) == at(i + 1, j) + 1) {
      script.ops.push_back({CharEdit::Del, i, j, a[i], 0});
      ++i;
    } else {
      script.ops.push_back({CharEdit::Ins, i, j, 0, b[j]});
      ++j;
    }
  }
  return script;
}

inline CharEditScript char_edit_script(std::string_view a, std::string_view b) {
  return char_edit_script(utf8::to_u32(a), utf8::to_u32(b));
}

// ---------------------------------------------------------------------------
// Word level
// ---------------------------------------------------------------------------

// Declaration order is the tie-break order.
enum class EditKind : std::uint8_t { Keep, Replace, Merge, Split, Delete, Insert };

inline constexpr std::string_view edit_kind_name(EditKind k) {
  switch (k) {
    case EditKind::Keep: return "KEEP";
    case EditKind::Replace: return "REPLACE";
    case EditKind::Merge: return "MERGE";
    case EditKind::Split: return "SPLIT";
    case EditKind::Delete: return "DELETE";
    case EditKind::Insert: return "INSERT";
  }
  return "";
}

/// Half-open token index range.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct EditOp {
  EditKind kind;
  Span src;
  Span tgt;
  double cost = 0.0;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct Alignment {
  std::vector<EditOp> ops;
  double total_cost = 0.0;
};

inline constexpr double kStructuralPenalty = 0.1;

/// Cost of a single alignment link, or a negative value when the link is not
/// allowed (punctuation never merges, splits, or replaces a word).
struct AlignCost {
  static double keep_or_replace(std::string_view a, std::string_view b) {
    if (a == b) return 0.0;
    if (is_punct_token(a) != is_punct_token(b)) return -1.0;
    return normalized_levenshtein(a, b);
  }
  static double merge(std::string_view a1, std::string_view a2, std::string_view b) {
    if (is_punct_token(a1) || is_punct_token(a2) || is_punct_token(b)) return -1.0;
    std::u32string joined = utf8::to_u32(a1) + utf8::to_u32(a2);
    return static_cast<double>(levenshtein(joined, utf8::to_u32(b))) + kStructuralPenalty;
  }
  static double split(std::string_view a, std::string_view b1, std::string_view b2) { return merge(b1, b2, a); }
  static constexpr double kIndel = 1.0;
};

namespace detail {
inline constexpr double kCostEps = 1e-9;
}

/// Minimum-cost monotone alignment of `raw` onto `reference`. Among optimal
/// alignments the one whose op-kind sequence is lexicographically smallest
/// (KEEP < REPLACE < MERGE < SPLIT < DELETE < INSERT) is returned.
inline Alignment align(std::span<const Token> raw, std::span<const Token> ref) {
  const std::size_t n = raw.size(), m = ref.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> best((n + 1) * (m + 1), kInf);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return best[i * (m + 1) + j]; };

  struct Candidate {
    EditKind kind;
    std::size_t di, dj;
    double cost;
  };
  auto candidates = [&](std::size_t i, std::size_t j) {
    std::vector<Candidate> out;
    out.reserve(5);
    if (i < n && j < m) {
      double c = AlignCost::keep_or_replace(raw[i], ref[j]);
      if (c >= 0) out.push_back({c == 0.0 && raw[i] == ref[j] ? EditKind::Keep : EditKind::Replace, 1, 1, c});
    }
    if (i + 1 < n && j < m) {
      double c = AlignCost::merge(raw[i], raw[i + 1], ref[j]);
      if (c >= 0) out.push_back({EditKind::Merge, 2, 1, c});
    }
    if (i < n && j + 1 < m) {
      double c = AlignCost::split(raw[i], ref[j], ref[j + 1]);
      if (c >= 0) out.push_back({EditKind::Split, 1, 2, c});
    }
    if (i < n) out.push_back({EditKind::Delete, 1, 0, AlignCost::kIndel});
    if (j < m) out.push_back({EditKind::Insert, 0, 1, AlignCost::kIndel});
    return out;
  };

  at(n, m) = 0.0;
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n && j == m) continue;
      double b = kInf;
      for (const Candidate& c : candidates(i, j)) b = std::min(b, c.cost + at(i + c.di, j + c.dj));
      at(i, j) = b;
    }
  }

  Alignment out;
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    const double target = at(i, j);
    auto cands = candidates(i, j);
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) { return x.kind < y.kind; });
    for (const Candidate& c : cands) {
      if (c.cost + at(i + c.di, j + c.dj) <= target + detail::kCostEps) {
        out.ops.push_back({c.kind, {i, i + c.di}, {j, j + c.dj}, c.cost});
        i += c.di;
        j += c.dj;
        break;
      }
    }
  }
  for (const EditOp& op : out.ops) out.total_cost += op.cost;
  return out;
}

/// Rebuilds the reference tokens from the raw tokens and an alignment.
inline TokenList replay(const Alignment& a, std::span<const Token> raw, std::span<const Token> ref) {
  TokenList out;
  for (const EditOp& op : a.ops) {
    if (op.src.end > raw.size() || op.tgt.end > ref.size()) throw InvalidPlan("alignment out of range");
    if (op.kind == EditKind::Keep) {
      out.push_back(raw[op.src.begin]);
    } else {
      for (std::size_t k = op.tgt.begin; k < op.tgt.end; ++k) out.push_back(ref[k]);
    }
  }
  return out;
}

}  // namespace gecforge
