#pragma once

#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gecforge/align.hpp"
#include "gecforge/arabic.hpp"
#include "gecforge/parallel.hpp"
#include "gecforge/sentence.hpp"
#include "gecforge/tags.hpp"

// Rule-based error-type annotation of (raw, reference) sentence pairs.
namespace gecforge {

/// Word-pair lookup rules: `raw_word -> reference_word` is tagged `tag`.
/// Used for tags the character rules cannot detect (morphology, case, gender...).
class RuleTable {
 public:
  struct Rule {
    std::string raw;
    std::string reference;
    ErrorTag tag;
  };

  RuleTable() = default;

  void add(std::string raw, std::string reference, ErrorTag tag) {
    index_[{raw, reference}].insert(tag);
    rules_.push_back({std::move(raw), std::move(reference), tag});
  }

  /// TSV: raw_word <TAB> reference_word <TAB> tag_code. '#' lines and blank
  /// lines are skipped.
  static RuleTable parse(std::istream& in, const std::string& origin = "<rules>") {
    RuleTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cols;
      std::stringstream ss(line);
      std::string col;
      while (std::getline(ss, col, '\t')) cols.push_back(col);
      if (cols.size() != 3 || cols[0].empty() || cols[1].empty())
        throw MalformedInput(origin + ":" + std::to_string(lineno) + ": expected 3 tab-separated columns");
      if (!utf8::is_valid(cols[0]) || !utf8::is_valid(cols[1]))
        throw MalformedInput(origin + ":" + std::to_string(lineno) + ": invalid UTF-8");
      table.add(cols[0], cols[1], parse_tag(cols[2]));
    }
    return table;
  }

  static RuleTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open rule table", path);
    return parse(in, path);
  }

  std::optional<TagSet> lookup(std::string_view raw, std::string_view reference) const {
    auto it = index_.find({std::string(raw), std::string(reference)});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<Rule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

 private:
  std::vector<Rule> rules_;
  std::map<std::pair<std::string, std::string>, TagSet> index_;
};

struct EditClassification {
  TagSet tags;
  bool unknown = false;
};

namespace detail {

using Segment = std::span<const CharOp>;

inline std::vector<Segment> edit_segments(const CharEditScript& script) {
  std::vector<Segment> out;
  const auto& ops = script.ops;
  std::size_t i = 0;
  while (i < ops.size()) {
    if (ops[i].kind == CharEdit::Keep) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < ops.size() && ops[j].kind != CharEdit::Keep) ++j;
    out.emplace_back(ops.data() + i, j - i);
    i = j;
  }
  return out;
}

inline bool all_of_kind(Segment seg, CharEdit kind) {
  for (const CharOp& op : seg)
    if (op.kind != kind) return false;
  return true;
}

inline bool unordered_pair(char32_t x, char32_t y, char32_t a, char32_t b) {
  return (x == a && y == b) || (x == b && y == a);
}

/// Orthographic cascade for one contiguous run of character edits. Returns
/// nullopt when no character rule applies.
inline std::optional<ErrorTag> classify_segment(Segment seg, std::u32string_view raw, std::u32string_view ref) {
  using namespace arabic;
  const CharOp& first = seg.front();
  const bool single = seg.size() == 1;
  const bool at_end = first.src_pos + 1 >= raw.size() && first.tgt_pos + 1 >= ref.size();

  // Hamza: substitutions inside the family, or a hamza-bearing letter added/dropped.
  bool hamza = true;
  for (const CharOp& op : seg) {
    bool ok = (op.kind == CharEdit::Sub && is_hamza_family(op.from) && is_hamza_family(op.to)) ||
              (op.kind == CharEdit::Del && is_hamza_bearing(op.from)) ||
              (op.kind == CharEdit::Ins && is_hamza_bearing(op.to));
    if (!ok) {
      hamza = false;
      break;
    }
  }
  if (hamza) return ErrorTag::OH;

  if (single && first.kind == CharEdit::Sub && at_end) {
    if (unordered_pair(first.from, first.to, kAlifMaqsura, kYa) ||
        unordered_pair(first.from, first.to, kAlifMaqsura, kAlif))
      return ErrorTag::OA;
    if (unordered_pair(first.from, first.to, kTaMarbuta, kHa) || unordered_pair(first.from, first.to, kTaMarbuta, kTa))
      return ErrorTag::OT;
  }

  // Alif Fariqa: final alif after waw present in one word only.
  if (single && first.kind == CharEdit::Del && first.from == kAlif && first.src_pos + 1 == raw.size() &&
      first.src_pos > 0 && raw[first.src_pos - 1] == kWaw)
    return ErrorTag::OW;
  if (single && first.kind == CharEdit::Ins && first.to == kAlif && first.tgt_pos + 1 == ref.size() &&
      first.tgt_pos > 0 && ref[first.tgt_pos - 1] == kWaw)
    return ErrorTag::OW;

  if (single) {
    if ((first.kind == CharEdit::Del && first.from == kTanwinFatha) ||
        (first.kind == CharEdit::Ins && first.to == kTanwinFatha) ||
        (first.kind == CharEdit::Sub && unordered_pair(first.from, first.to, kTanwinFatha, kNun)))
      return ErrorTag::ON;
  }

  if (seg.size() == 2 && all_of_kind(seg, CharEdit::Sub) && seg[1].src_pos == seg[0].src_pos + 1 &&
      seg[0].from == seg[1].to && seg[1].from == seg[0].to)
    return ErrorTag::OC;

  // Raw carries extra characters (deletions fix it) or lacks some (insertions fix it).
  if (all_of_kind(seg, CharEdit::Del)) {
    bool vowels = true;
    for (const CharOp& op : seg) vowels = vowels && is_long_vowel(op.from);
    return vowels ? ErrorTag::OG : ErrorTag::OD;
  }
  if (all_of_kind(seg, CharEdit::Ins)) {
    bool vowels = true;
    for (const CharOp& op : seg) vowels = vowels && is_long_vowel(op.to);
    return vowels ? ErrorTag::OS : ErrorTag::OM;
  }
  return std::nullopt;
}

inline EditClassification classify_word_replace(std::string_view raw_word, std::string_view ref_word,
                                                 const RuleTable& rules) {
  EditClassification out;
  if (auto hit = rules.lookup(raw_word, ref_word)) {
    out.tags = *hit;
    return out;
  }
  std::u32string raw = utf8::to_u32(raw_word), ref = utf8::to_u32(ref_word);
  if (!arabic::contains_letter(raw) || !arabic::contains_letter(ref)) {
    out.unknown = true;
    return out;
  }
  CharEditScript script = char_edit_script(raw, ref);
  bool leftover = false;
  for (Segment seg : edit_segments(script)) {
    if (auto tag = classify_segment(seg, raw, ref))
      out.tags.insert(*tag);
    else
      leftover = true;
  }
  if (leftover || out.tags.empty())
    out.tags.insert(normalized_levenshtein(raw, ref) <= 0.5 ? ErrorTag::OR : ErrorTag::SW);
  return out;
}

}  // namespace detail

/// Tags for one alignment edit. KEEP yields the empty set; an edit no rule
/// covers is returned with `unknown` set and no tags.
inline EditClassification classify_edit(const EditOp& edit, std::span<const Token> raw, std::span<const Token> ref,
                                         const RuleTable& rules = {}) {
  EditClassification out;
  switch (edit.kind) {
    case EditKind::Keep:
      break;
    case EditKind::Merge:
      out.tags.insert(ErrorTag::MG);
      break;
    case EditKind::Split:
      out.tags.insert(ErrorTag::SP);
      break;
    case EditKind::Insert:
      out.tags.insert(is_punct_token(ref[edit.tgt.begin]) ? ErrorTag::PM : ErrorTag::XM);
      break;
    case EditKind::Delete:
      out.tags.insert(is_punct_token(raw[edit.src.begin]) ? ErrorTag::PT : ErrorTag::XT);
      break;
    case EditKind::Replace: {
      const Token& a = raw[edit.src.begin];
      const Token& b = ref[edit.tgt.begin];
      const bool pa = is_punct_token(a), pb = is_punct_token(b);
      if (pa && pb)
        out.tags.insert(ErrorTag::PC);
      else if (!pa && !pb)
        out = detail::classify_word_replace(a, b, rules);
      else
        out.unknown = true;
      break;
    }
  }
  return out;
}

struct AnnotatedPair {
  Sentence raw;
  Sentence reference;
  Alignment alignment;
  std::vector<TagSet> edit_tags;  // parallel to alignment.ops
  TagSet sentence_tags;
  std::size_t unknown_count = 0;
};

inline AnnotatedPair annotate(const Sentence& raw, const Sentence& reference, const RuleTable& rules = {}) {
  AnnotatedPair out{raw, reference, align(raw.tokens, reference.tokens), {}, {}, 0};
  out.edit_tags.reserve(out.alignment.ops.size());
  for (const EditOp& op : out.alignment.ops) {
    EditClassification c = classify_edit(op, raw.tokens, reference.tokens, rules);
    if (c.unknown) ++out.unknown_count;
    out.sentence_tags |= c.tags;
    out.edit_tags.push_back(c.tags);
  }
  return out;
}

struct CorpusAnnotation {
  LabelMatrix rows;
  std::array<std::size_t, kTagCount> frequency{};  // sentences containing each tag
  std::size_t edits = 0;                           // non-KEEP edits
  std::size_t unknown_edits = 0;

  double unknown_rate() const { return edits == 0 ? 0.0 : static_cast<double>(unknown_edits) / edits; }
};

/// Annotates every pair; row i of the result always belongs to pair i.
inline CorpusAnnotation annotate_corpus(std::span<const std::pair<Sentence, Sentence>> pairs,
                                        const RuleTable& rules = {}, std::size_t threads = 1) {
  CorpusAnnotation out;
  out.rows.resize(pairs.size());
  std::vector<std::size_t> edits(pairs.size()), unknown(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    AnnotatedPair a = annotate(pairs[i].first, pairs[i].second, rules);
    out.rows[i] = a.sentence_tags;
    unknown[i] = a.unknown_count;
    for (const EditOp& op : a.alignment.ops)
      if (op.kind != EditKind::Keep) ++edits[i];
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t t = 0; t < kTagCount; ++t)
      if (out.rows[i].test(t)) ++out.frequency[t];
    out.edits += edits[i];
    out.unknown_edits += unknown[i];
  }
  return out;
}

}  // namespace gecforge
