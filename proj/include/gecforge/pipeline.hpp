#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gecforge/arabic.hpp"
#include "gecforge/error.hpp"
#include "gecforge/metrics.hpp"
#include "gecforge/sentence.hpp"
#include "gecforge/tags.hpp"
#include "gecforge/utf8.hpp"

// Monolingual corpus preparation: ingestion, normalization and filtering.
namespace gecforge {

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

enum class SourceKind { XmlText, Numbered, Plain };

inline SourceKind parse_source_kind(std::string_view s) {
  if (s == "xml") return SourceKind::XmlText;
  if (s == "numbered") return SourceKind::Numbered;
  if (s == "plain") return SourceKind::Plain;
  throw MalformedInput("unknown input kind: " + std::string(s));
}

struct CorpusSource {
  SourceKind kind = SourceKind::Plain;
  std::vector<std::string> paths;
};

struct Record {
  std::string text;
  bool valid_utf8 = true;
};

struct IngestStats {
  std::uint64_t files = 0;
  std::uint64_t records = 0;
  std::uint64_t invalid_utf8 = 0;
  std::uint64_t malformed_elements = 0;
};

using RecordSink = std::function<void(Record)>;

namespace detail {

inline std::string decode_entities(std::string_view s) {
  static const std::array<std::pair<std::string_view, std::string_view>, 5> kEntities{{
      {"&amp;", "&"}, {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""}, {"&apos;", "'"}}};
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    bool hit = false;
    if (s[i] == '&') {
      for (const auto& [from, to] : kEntities) {
        if (s.substr(i, from.size()) == from) {
          out += to;
          i += from.size();
          hit = true;
          break;
        }
      }
    }
    if (!hit) out += s[i++];
  }
  return out;
}

inline std::string strip_markup(std::string_view s) {
  std::string out;
  bool in_tag = false;
  for (char c : s) {
    if (c == '<')
      in_tag = true;
    else if (c == '>' && in_tag)
      in_tag = false;
    else if (!in_tag)
      out += c;
  }
  return out;
}

// Position of the next `<text>` or `<text ...>` opening tag at or after `from`.
inline std::size_t find_text_open(std::string_view s, std::size_t from) {
  for (std::size_t p = s.find("<text", from); p != std::string_view::npos; p = s.find("<text", p + 1)) {
    std::size_t after = p + 5;
    if (after == s.size() || s[after] == '>' || s[after] == ' ' || s[after] == '\t' || s[after] == '\n') return p;
  }
  return std::string_view::npos;
}

inline void emit_lines(std::string_view content, const RecordSink& sink, IngestStats& stats) {
  std::string text = decode_entities(strip_markup(content));
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Record r{line, utf8::is_valid(line)};
    ++stats.records;
    if (!r.valid_utf8) ++stats.invalid_utf8;
    sink(std::move(r));
  }
}

// Streams the contents of <text> elements. An element opened inside another,
// or never closed, is skipped and counted as malformed.
inline void ingest_xml(std::istream& in, const RecordSink& sink, IngestStats& stats) {
  std::string line, pending, carry;  // carry: an opening tag whose '>' is on a later line
  bool inside = false;
  while (std::getline(in, line)) {
    if (!carry.empty()) {
      line = carry + '\n' + line;
      carry.clear();
    }
    std::string_view rest = line;
    while (!rest.empty()) {
      if (!inside) {
        std::size_t open = find_text_open(rest, 0);
        if (open == std::string_view::npos) break;
        std::size_t gt = rest.find('>', open);
        if (gt == std::string_view::npos) {
          carry = std::string(rest.substr(open));
          break;
        }
        inside = true;
        pending.clear();
        rest.remove_prefix(gt + 1);
      } else {
        std::size_t close = rest.find("</text>");
        std::size_t nested = find_text_open(rest, 0);
        if (nested != std::string_view::npos && (close == std::string_view::npos || nested < close)) {
          ++stats.malformed_elements;
          inside = false;
          rest.remove_prefix(nested);
          continue;
        }
        if (close == std::string_view::npos) {
          pending.append(rest);
          break;
        }
        pending.append(rest.substr(0, close));
        emit_lines(pending, sink, stats);
        pending.clear();
        inside = false;
        rest.remove_prefix(close + 7);
      }
    }
    if (inside) pending += '\n';
  }
  if (inside || !carry.empty()) ++stats.malformed_elements;
}

// Removes a leading sequence number such as "17 ", "17\t", "17. " or "17) ".
inline std::string strip_sequence_number(std::string_view line) {
  std::u32string cps = utf8::to_u32(line);
  std::size_t i = 0;
  while (i < cps.size() && arabic::is_space(cps[i])) ++i;
  std::size_t digits = i;
  while (i < cps.size() && arabic::is_digit(cps[i])) ++i;
  if (i == digits) return std::string(line);
  std::size_t sep = i;
  while (i < cps.size() && (cps[i] == U'.' || cps[i] == U')' || cps[i] == U':' || cps[i] == U'-')) ++i;
  bool spaced = false;
  while (i < cps.size() && arabic::is_space(cps[i])) {
    ++i;
    spaced = true;
  }
  if (!spaced && i == sep && i < cps.size()) return std::string(line);  // "2020abc" is not numbered
  return utf8::encode(std::u32string_view(cps).substr(i));
}

}  // namespace detail

inline void ingest_stream(std::istream& in, SourceKind kind, const RecordSink& sink, IngestStats& stats) {
  if (kind == SourceKind::XmlText) {
    detail::ingest_xml(in, sink, stats);
    return;
  }
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Record r;
    r.valid_utf8 = utf8::is_valid(line);
    r.text = (kind == SourceKind::Numbered && r.valid_utf8) ? detail::strip_sequence_number(line) : line;
    ++stats.records;
    if (!r.valid_utf8) ++stats.invalid_utf8;
    sink(std::move(r));
  }
}

/// Streams every record of every file in order. Unreadable files throw IoError.
inline IngestStats ingest(const CorpusSource& source, const RecordSink& sink) {
  IngestStats stats;
  for (const auto& path : source.paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input", path);
    ++stats.files;
    ingest_stream(in, source.kind, sink, stats);
    if (in.bad()) throw IoError("read failed", path);
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

/// Spelling repairs applied to clean monolingual text. `substring` rules rewrite
/// inside words; `word` rules replace whole words.
struct SpellingRules {
  struct Rule {
    std::string from, to;
  };
  std::vector<Rule> substring;
  std::map<std::string, std::string> word;

  static SpellingRules parse(std::istream& in, const std::string& origin = "<spelling rules>") {
    SpellingRules r;
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
      if (cols.size() != 3 || cols[1].empty())
        throw MalformedInput(origin + ":" + std::to_string(lineno) + ": expected kind<TAB>from<TAB>to");
      if (cols[0] == "substring")
        r.substring.push_back({cols[1], cols[2]});
      else if (cols[0] == "word")
        r.word[cols[1]] = cols[2];
      else
        throw MalformedInput(origin + ":" + std::to_string(lineno) + ": unknown rule kind '" + cols[0] + "'");
    }
    return r;
  }

  static SpellingRules load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spelling rules", path);
    return parse(in, path);
  }
};

// Mirrors data/spelling_rules.tsv.
inline constexpr std::string_view kDefaultSpellingRules =
    "# kind\tfrom\tto\n"
    "# fatha tanwin sits on the letter before a final alif\n"
    "substring\tاً\tًا\n"
    "# final ya / alif maqsura\n"
    "word\tالي\tإلى\n"
    "word\tحتي\tحتى\n"
    "word\tمتي\tمتى\n"
    "word\tمستشفي\tمستشفى\n"
    "word\tفى\tفي\n"
    "word\tالذى\tالذي\n"
    "word\tالتى\tالتي\n"
    "# hamza\n"
    "word\tالى\tإلى\n"
    "word\tانت\tأنت\n"
    "word\tانا\tأنا\n"
    "word\tاذا\tإذا\n"
    "word\tايضا\tأيضا\n"
    "word\tاول\tأول\n"
    "word\tاكثر\tأكثر\n"
    "word\tامام\tأمام\n"
    "word\tاخرى\tأخرى\n"
    "word\tاحمد\tأحمد\n";

inline const SpellingRules& default_spelling_rules() {
  static const SpellingRules rules = [] {
    std::istringstream in{std::string(kDefaultSpellingRules)};
    return SpellingRules::parse(in, "<builtin>");
  }();
  return rules;
}

struct NormalizeOptions {
  bool dedup_punct = true;
  bool canonicalize_punct = true;
  bool fix_spacing = true;
  bool spelling = true;
  bool collapse_spaces = true;
};

namespace detail {

// Spacing-sensitive marks; quotes and brackets are left alone.
inline bool is_spaced_punct(char32_t c) { return arabic::is_punct(c) && c != U'"' && c != U'(' && c != U')'; }

inline bool is_arabic_char(char32_t c) { return arabic::is_letter(c) || arabic::is_diacritic(c); }

inline std::u32string dedup_punct(const std::u32string& s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char32_t c = s[i];
    out.push_back(c);
    if (!arabic::is_punct(c)) continue;
    std::size_t j = i + 1;
    while (true) {
      std::size_t k = j;
      while (k < s.size() && arabic::is_space(s[k])) ++k;
      if (k < s.size() && s[k] == c)
        j = k + 1;
      else
        break;
    }
    i = j - 1;
  }
  return out;
}

inline std::u32string canonicalize_punct(const std::u32string& s) {
  std::u32string out = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char32_t target = 0;
    if (s[i] == U',') target = arabic::kArabicComma;
    if (s[i] == U';') target = arabic::kArabicSemicolon;
    if (s[i] == U'?') target = arabic::kArabicQuestion;
    if (!target) continue;
    std::size_t p = i;
    while (p > 0 && arabic::is_space(s[p - 1])) --p;
    std::size_t n = i + 1;
    while (n < s.size() && arabic::is_space(s[n])) ++n;
    bool before = p > 0 && is_arabic_char(s[p - 1]);
    bool after = n == s.size() || is_arabic_char(s[n]);
    if (before && after) out[i] = target;
  }
  return out;
}

inline std::u32string fix_spacing(const std::u32string& s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char32_t c = s[i];
    if (!is_spaced_punct(c)) {
      out.push_back(c);
      continue;
    }
    // 3.5, 1,000 and similar stay untouched.
    if (i > 0 && i + 1 < s.size() && arabic::is_digit(s[i - 1]) && arabic::is_digit(s[i + 1])) {
      out.push_back(c);
      continue;
    }
    while (!out.empty() && arabic::is_space(out.back())) out.pop_back();
    out.push_back(c);
    std::size_t n = i + 1;
    while (n < s.size() && arabic::is_space(s[n])) ++n;
    if (n < s.size() && !is_spaced_punct(s[n])) out.push_back(U' ');
    i = n - 1;
  }
  return out;
}

inline std::u32string apply_spelling(const std::u32string& s, const SpellingRules& rules) {
  std::u32string text = s;
  for (const auto& r : rules.substring) {
    std::u32string from = utf8::to_u32(r.from), to = utf8::to_u32(r.to);
    std::u32string out;
    for (std::size_t i = 0; i < text.size();) {
      if (text.compare(i, from.size(), from) == 0) {
        out += to;
        i += from.size();
      } else {
        out.push_back(text[i++]);
      }
    }
    text = std::move(out);
  }
  if (rules.word.empty()) return text;
  std::u32string out;
  for (std::size_t i = 0; i < text.size();) {
    if (arabic::is_space(text[i]) || arabic::is_punct(text[i])) {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !arabic::is_space(text[j]) && !arabic::is_punct(text[j])) ++j;
    std::string word = utf8::encode(std::u32string_view(text).substr(i, j - i));
    auto it = rules.word.find(word);
    out += it == rules.word.end() ? text.substr(i, j - i) : utf8::to_u32(it->second);
    i = j;
  }
  return out;
}

inline std::u32string collapse_spaces(const std::u32string& s) {
  std::u32string out;
  for (char32_t c : s) {
    if (arabic::is_space(c)) {
      if (!out.empty() && out.back() != U' ') out.push_back(U' ');
    } else {
      out.push_back(c);
    }
  }
  while (!out.empty() && out.back() == U' ') out.pop_back();
  return out;
}

inline std::u32string normalize_once(const std::u32string& s, const NormalizeOptions& o, const SpellingRules& r) {
  std::u32string t = s;
  if (o.dedup_punct) t = dedup_punct(t);
  if (o.canonicalize_punct) t = canonicalize_punct(t);
  if (o.fix_spacing) t = fix_spacing(t);
  if (o.spelling) t = apply_spelling(t, r);
  if (o.collapse_spaces) t = collapse_spaces(t);
  return t;
}

}  // namespace detail

/// Punctuation dedup, Arabic punctuation shapes, spacing around punctuation,
/// spelling repairs and whitespace collapsing, in that order. The sequence is
/// repeated until the text stops changing, so normalize is idempotent.
inline std::string normalize(std::string_view text, const NormalizeOptions& options = {},
                             const SpellingRules& rules = default_spelling_rules()) {
  std::u32string cur = utf8::to_u32(text);
  for (int round = 0; round < 8; ++round) {
    std::u32string next = detail::normalize_once(cur, options, rules);
    if (next == cur) break;
    cur = std::move(next);
  }
  return utf8::encode(cur);
}

// ---------------------------------------------------------------------------
// Filtering
// ---------------------------------------------------------------------------

struct CleanConfig {
  std::size_t min_words = 10;
  std::size_t max_words = 400;
  bool drop_empty = true;
  bool strip_links_mentions_hashtags = true;
  bool normalize = true;
  NormalizeOptions normalize_options;
  SpellingRules spelling = default_spelling_rules();
};

struct DropStats {
  std::uint64_t lines_in = 0;
  std::uint64_t kept = 0;
  std::uint64_t empty = 0;
  std::uint64_t too_short = 0;
  std::uint64_t too_long = 0;
  std::uint64_t encoding = 0;

  std::uint64_t dropped() const { return empty + too_short + too_long + encoding; }

  DropStats& operator+=(const DropStats& o) {
    lines_in += o.lines_in, kept += o.kept, empty += o.empty, too_short += o.too_short, too_long += o.too_long,
        encoding += o.encoding;
    return *this;
  }

  nlohmann::ordered_json to_json() const {
    return {{"lines_in", lines_in},   {"kept", kept},         {"dropped", dropped()},
            {"empty", empty},         {"too_short", too_short}, {"too_long", too_long},
            {"encoding", encoding}};
  }
};

inline std::string strip_links_mentions_hashtags(std::string_view text) {
  std::string out;
  std::istringstream ss{std::string(text)};
  std::string tok;
  while (ss >> tok) {
    if (tok.starts_with("http://") || tok.starts_with("https://") || tok.starts_with("www.") || tok[0] == '@' ||
        tok[0] == '#')
      continue;
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

/// Returns the cleaned text or an empty optional when the record is dropped;
/// the drop reason is counted in `stats`.
inline std::optional<std::string> clean_record(const Record& rec, const CleanConfig& cfg, DropStats& stats) {
  ++stats.lines_in;
  if (!rec.valid_utf8) {
    ++stats.encoding;
    return std::nullopt;
  }
  std::string text = rec.text;
  if (cfg.strip_links_mentions_hashtags) text = strip_links_mentions_hashtags(text);
  if (cfg.normalize) text = normalize(text, cfg.normalize_options, cfg.spelling);
  TokenList toks = tokenize(text);
  if (toks.empty()) {
    if (cfg.drop_empty) {
      ++stats.empty;
      return std::nullopt;
    }
  } else {
    std::size_t words = word_count(toks);
    if (words < cfg.min_words) {
      ++stats.too_short;
      return std::nullopt;
    }
    if (words > cfg.max_words) {
      ++stats.too_long;
      return std::nullopt;
    }
  }
  ++stats.kept;
  return text;
}

inline std::vector<std::string> clean_filter(const std::vector<Record>& records, const CleanConfig& cfg,
                                             DropStats& stats) {
  std::vector<std::string> out;
  for (const auto& r : records)
    if (auto t = clean_record(r, cfg, stats)) out.push_back(std::move(*t));
  return out;
}

// ---------------------------------------------------------------------------
// Label statistics
// ---------------------------------------------------------------------------

struct CorpusStats {
  std::uint64_t sentences = 0;
  std::array<std::uint64_t, kTagCount> counts{};
  std::array<double, kTagCount> percentages{};
  ClassWeightTable weights;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json tags = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < kTagCount; ++i) {
      tags.push_back({{"tag", code_of(tag_at(i))},
                      {"category", category_name(category_of(tag_at(i)))},
                      {"count", counts[i]},
                      {"percentage", percentages[i]},
                      {"weight", weights.weights.empty() ? 0.0 : weights.weights[i]}});
    }
    return {{"sentences", sentences}, {"tags", tags}};
  }
};

/// Sentence count per tag, its share of all sentences, and rebalance weights.
inline CorpusStats corpus_stats(std::span<const TagSet> rows) {
  CorpusStats s;
  s.sentences = rows.size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < kTagCount; ++i)
      if (r.test(i)) ++s.counts[i];
  for (std::size_t i = 0; i < kTagCount; ++i)
    s.percentages[i] = s.sentences == 0 ? 0.0 : 100.0 * static_cast<double>(s.counts[i]) / s.sentences;
  s.weights = class_weights(s.counts, std::max<std::uint64_t>(s.sentences, 1));
  return s;
}

}  // namespace gecforge
