#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "gecforge/align.hpp"
#include "gecforge/metrics.hpp"
#include "gecforge/sentence.hpp"

// Word-edit scoring of a correction hypothesis against a reference, both
// measured as edits away from the same source sentence.
namespace gecforge {

/// A non-KEEP alignment op keyed by what it does to the source.
struct WordEdit {
  EditKind kind;
  Span src;
  std::string replacement;  // target tokens joined by ' '

  friend auto operator<=>(const WordEdit&, const WordEdit&) = default;
};

inline std::vector<WordEdit> extract_edits(const Sentence& source, const Sentence& target) {
  std::vector<WordEdit> out;
  Alignment a = align(source.tokens, target.tokens);
  for (const EditOp& op : a.ops) {
    if (op.kind == EditKind::Keep) continue;
    std::span<const Token> tgt(target.tokens.data() + op.tgt.begin, op.tgt.size());
    out.push_back({op.kind, op.src, join(tgt)});
  }
  return out;
}

struct GecCounts {
  std::uint64_t proposed = 0, gold = 0, matched = 0;

  GecCounts& operator+=(const GecCounts& o) {
    proposed += o.proposed, gold += o.gold, matched += o.matched;
    return *this;
  }
};

struct GecScore {
  GecCounts counts;
  double precision = 0, recall = 0, f1 = 0, f05 = 0;
};

inline GecScore gec_score_from(const GecCounts& c) {
  GecScore s;
  s.counts = c;
  s.precision = safe_ratio(static_cast<double>(c.matched), static_cast<double>(c.proposed));
  s.recall = safe_ratio(static_cast<double>(c.matched), static_cast<double>(c.gold));
  s.f1 = f_beta(s.precision, s.recall, 1.0);
  s.f05 = f_beta(s.precision, s.recall, 0.5);
  return s;
}

/// Edits match only when kind, source span and replacement text are identical.
inline GecCounts gec_counts(const Sentence& source, const Sentence& hypothesis, const Sentence& reference) {
  std::vector<WordEdit> proposed = extract_edits(source, hypothesis);
  std::vector<WordEdit> gold = extract_edits(source, reference);
  std::sort(proposed.begin(), proposed.end());
  std::sort(gold.begin(), gold.end());
  std::vector<WordEdit> common;
  std::set_intersection(proposed.begin(), proposed.end(), gold.begin(), gold.end(), std::back_inserter(common));
  return {proposed.size(), gold.size(), common.size()};
}

inline GecScore gec_score(const Sentence& source, const Sentence& hypothesis, const Sentence& reference) {
  return gec_score_from(gec_counts(source, hypothesis, reference));
}

}  // namespace gecforge
