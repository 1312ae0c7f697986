#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gecforge/align.hpp"
#include "gecforge/arabic.hpp"
#include "gecforge/areta.hpp"
#include "gecforge/error.hpp"
#include "gecforge/rng.hpp"
#include "gecforge/sentence.hpp"
#include "gecforge/tags.hpp"
#include "gecforge/utf8.hpp"

// Tag-conditioned corruption of correct sentences. Every injection is the exact
// inverse of the annotation rule for the same tag, so annotating
// (corrupted, correct) recovers the requested tags.
namespace gecforge {

enum class InjectionKind : std::uint8_t {
  SubstituteChar,
  DeleteChar,
  InsertChar,
  SwapChars,     // pos and pos + 1
  ReplaceToken,  // token becomes `text`
  DeleteToken,
  InsertToken,   // `text` inserted before index `token`
  SplitToken,    // at code point `pos`
  JoinTokens,    // token and token + 1
};

inline constexpr std::string_view injection_name(InjectionKind k) {
  switch (k) {
    case InjectionKind::SubstituteChar: return "substitute_char";
    case InjectionKind::DeleteChar: return "delete_char";
    case InjectionKind::InsertChar: return "insert_char";
    case InjectionKind::SwapChars: return "swap_chars";
    case InjectionKind::ReplaceToken: return "replace_token";
    case InjectionKind::DeleteToken: return "delete_token";
    case InjectionKind::InsertToken: return "insert_token";
    case InjectionKind::SplitToken: return "split_token";
    case InjectionKind::JoinTokens: return "join_tokens";
  }
  return "";
}

/// Token indices refer to the token list as it stands when the step runs.
struct CorruptionStep {
  ErrorTag tag;
  std::size_t token = 0;
  InjectionKind kind = InjectionKind::SubstituteChar;
  std::size_t pos = 0;     // code point index inside the token
  char32_t from = 0;       // expected character (substitute/delete/swap)
  char32_t to = 0;         // new character (substitute/insert)
  std::string text;        // token payload (replace/insert)

  friend bool operator==(const CorruptionStep&, const CorruptionStep&) = default;
};

struct CorruptionPlan {
  std::vector<CorruptionStep> steps;
  std::uint64_t seed = 0;

  bool empty() const { return steps.empty(); }
};

struct CorruptionReport {
  TagSet requested;
  TagSet fulfilled;
  TagSet unfulfilled;
  CorruptionPlan plan;
};

/// Tags the built-in engine knows how to inject without a lexicon.
inline TagSet injectable_tags() {
  using enum ErrorTag;
  return TagSet{OH, OA, OT, OW, ON, OC, OD, OM, OG, OS, OR, PC, PM, PT, MG, SP, XM, XT, SW};
}

namespace detail {

// Arabic keyboard rows; '-' marks the lam-alif key.
inline constexpr std::array<std::u32string_view, 3> kKeyboardRows{
    U"ضصثقفغعهخحجد",
    U"شسيبلاتنمكط",
    U"ئءؤر-ىةوزظ",
};

inline std::u32string keyboard_neighbours(char32_t c) {
  std::u32string out;
  for (std::size_t r = 0; r < kKeyboardRows.size(); ++r) {
    auto col = kKeyboardRows[r].find(c);
    if (col == std::u32string_view::npos) continue;
    auto add = [&](std::size_t rr, std::ptrdiff_t cc) {
      if (cc < 0 || static_cast<std::size_t>(cc) >= kKeyboardRows[rr].size()) return;
      char32_t n = kKeyboardRows[rr][static_cast<std::size_t>(cc)];
      if (n != c && arabic::is_plain_consonant(n) && out.find(n) == std::u32string::npos) out.push_back(n);
    };
    auto ci = static_cast<std::ptrdiff_t>(col);
    add(r, ci - 1);
    add(r, ci + 1);
    if (r > 0) add(r - 1, ci);
    if (r + 1 < kKeyboardRows.size()) add(r + 1, ci);
  }
  return out;
}

inline constexpr std::array<std::u32string_view, 6> kPunctInventory{U".", U"،", U"؛", U"؟", U"!", U":"};

struct WorkingSentence {
  TokenList tokens;
  std::vector<bool> frozen;  // already carries an injection or borders a structural one

  bool is_word(std::size_t i) const { return !is_punct_token(tokens[i]); }
  bool free_word(std::size_t i) const { return !frozen[i] && is_word(i); }
};

inline std::u32string cps(const Token& t) { return utf8::to_u32(t); }

inline void apply_step(TokenList& tokens, const CorruptionStep& s) {
  auto need_token = [&](std::size_t extra) {
    if (s.token + extra >= tokens.size()) throw InvalidPlan("step token index out of range");
  };
  auto need_char = [&](const std::u32string& w, std::size_t at, char32_t expect) {
    if (at >= w.size() || w[at] != expect) throw InvalidPlan("step does not match sentence (stale plan)");
  };
  switch (s.kind) {
    case InjectionKind::SubstituteChar: {
      need_token(0);
      auto w = cps(tokens[s.token]);
      need_char(w, s.pos, s.from);
      w[s.pos] = s.to;
      tokens[s.token] = utf8::encode(w);
      break;
    }
    case InjectionKind::DeleteChar: {
      need_token(0);
      auto w = cps(tokens[s.token]);
      need_char(w, s.pos, s.from);
      if (w.size() < 2) throw InvalidPlan("cannot delete the only character of a token");
      w.erase(s.pos, 1);
      tokens[s.token] = utf8::encode(w);
      break;
    }
    case InjectionKind::InsertChar: {
      need_token(0);
      auto w = cps(tokens[s.token]);
      if (s.pos > w.size()) throw InvalidPlan("insert position out of range");
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(s.pos), s.to);
      tokens[s.token] = utf8::encode(w);
      break;
    }
    case InjectionKind::SwapChars: {
      need_token(0);
      auto w = cps(tokens[s.token]);
      need_char(w, s.pos, s.from);
      if (s.pos + 1 >= w.size()) throw InvalidPlan("swap position out of range");
      std::swap(w[s.pos], w[s.pos + 1]);
      tokens[s.token] = utf8::encode(w);
      break;
    }
    case InjectionKind::ReplaceToken:
      need_token(0);
      tokens[s.token] = s.text;
      break;
    case InjectionKind::DeleteToken:
      need_token(0);
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(s.token));
      break;
    case InjectionKind::InsertToken:
      if (s.token > tokens.size()) throw InvalidPlan("insert index out of range");
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(s.token), s.text);
      break;
    case InjectionKind::SplitToken: {
      need_token(0);
      auto w = cps(tokens[s.token]);
      if (s.pos == 0 || s.pos >= w.size()) throw InvalidPlan("split position out of range");
      Token left = utf8::encode(w.substr(0, s.pos)), right = utf8::encode(w.substr(s.pos));
      tokens[s.token] = std::move(left);
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(s.token) + 1, std::move(right));
      break;
    }
    case InjectionKind::JoinTokens:
      need_token(1);
      tokens[s.token] += tokens[s.token + 1];
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(s.token) + 1);
      break;
  }
}

// Keeps `frozen` parallel to `tokens` after a step.
inline void apply_step(WorkingSentence& ws, const CorruptionStep& s) {
  apply_step(ws.tokens, s);
  auto& f = ws.frozen;
  auto freeze = [&](std::size_t i) {
    if (i < f.size()) f[i] = true;
  };
  const auto at = [](std::size_t i) { return static_cast<std::ptrdiff_t>(i); };
  switch (s.kind) {
    case InjectionKind::SubstituteChar:
    case InjectionKind::DeleteChar:
    case InjectionKind::InsertChar:
    case InjectionKind::SwapChars:
    case InjectionKind::ReplaceToken:
      freeze(s.token);
      break;
    case InjectionKind::DeleteToken:
      f.erase(f.begin() + at(s.token));
      if (s.token > 0) freeze(s.token - 1);
      freeze(s.token);
      break;
    case InjectionKind::InsertToken:
      f.insert(f.begin() + at(s.token), true);
      if (s.token > 0) freeze(s.token - 1);
      freeze(s.token + 1);
      break;
    case InjectionKind::SplitToken:
      f.insert(f.begin() + at(s.token) + 1, true);
      freeze(s.token);
      if (s.token > 0) freeze(s.token - 1);
      freeze(s.token + 2);
      break;
    case InjectionKind::JoinTokens:
      f.erase(f.begin() + at(s.token) + 1);
      freeze(s.token);
      if (s.token > 0) freeze(s.token - 1);
      freeze(s.token + 1);
      break;
  }
}

inline CorruptionStep char_step(ErrorTag tag, std::size_t token, InjectionKind kind, std::size_t pos, char32_t from,
                                char32_t to = 0) {
  CorruptionStep s;
  s.tag = tag;
  s.token = token;
  s.kind = kind;
  s.pos = pos;
  s.from = from;
  s.to = to;
  return s;
}

inline CorruptionStep token_step(ErrorTag tag, std::size_t token, InjectionKind kind, std::string text = {},
                                 std::size_t pos = 0) {
  CorruptionStep s;
  s.tag = tag;
  s.token = token;
  s.kind = kind;
  s.text = std::move(text);
  s.pos = pos;
  return s;
}

/// Every place `tag` could be injected into the current working sentence.
inline std::vector<CorruptionStep> candidate_sites(const WorkingSentence& ws, ErrorTag tag, const RuleTable& table) {
  using namespace arabic;
  using enum ErrorTag;
  using K = InjectionKind;
  std::vector<CorruptionStep> out;
  const std::size_t n = ws.tokens.size();

  for (std::size_t i = 0; i < n; ++i) {
    const bool word = ws.is_word(i);
    const bool punct = !word;
    if (ws.frozen[i]) continue;
    const std::u32string w = cps(ws.tokens[i]);
    const std::size_t len = w.size();
    const bool arabic_word = word && contains_letter(w);

    switch (tag) {
      case OH:
        if (!arabic_word) break;
        for (std::size_t p = 0; p < len; ++p) {
          if (w[p] == kAlifHamzaAbove || w[p] == kAlifHamzaBelow || w[p] == kAlifMadda)
            out.push_back(char_step(tag, i, K::SubstituteChar, p, w[p], kAlif));
        }
        break;
      case OA:
        if (!arabic_word || len < 2) break;
        if (w.back() == kAlifMaqsura) out.push_back(char_step(tag, i, K::SubstituteChar, len - 1, w.back(), kYa));
        if (w.back() == kYa) out.push_back(char_step(tag, i, K::SubstituteChar, len - 1, w.back(), kAlifMaqsura));
        break;
      case OT:
        if (!arabic_word || len < 2) break;
        if (w.back() == kTaMarbuta) out.push_back(char_step(tag, i, K::SubstituteChar, len - 1, w.back(), kHa));
        if (w.back() == kHa) out.push_back(char_step(tag, i, K::SubstituteChar, len - 1, w.back(), kTaMarbuta));
        break;
      case OW:
        if (!arabic_word || len < 2) break;
        if (len >= 3 && w[len - 1] == kAlif && w[len - 2] == kWaw)
          out.push_back(char_step(tag, i, K::DeleteChar, len - 1, kAlif));
        if (w.back() == kWaw) out.push_back(char_step(tag, i, K::InsertChar, len, 0, kAlif));
        break;
      case ON:
        if (!arabic_word) break;
        for (std::size_t p = 0; p < len; ++p) {
          if (w[p] != kTanwinFatha) continue;
          if (len >= 2) out.push_back(char_step(tag, i, K::DeleteChar, p, w[p]));
          out.push_back(char_step(tag, i, K::SubstituteChar, p, w[p], kNun));
        }
        break;
      case OC:
        if (!arabic_word) break;
        for (std::size_t p = 0; p + 1 < len; ++p) {
          if (w[p] != w[p + 1] && is_letter(w[p]) && is_letter(w[p + 1]) && !is_hamza_family(w[p]) &&
              !is_hamza_family(w[p + 1]))
            out.push_back(char_step(tag, i, K::SwapChars, p, w[p]));
        }
        break;
      case OD:
        if (!arabic_word) break;
        for (std::size_t p = 0; p < len; ++p)
          if (is_plain_consonant(w[p])) out.push_back(char_step(tag, i, K::InsertChar, p + 1, 0, w[p]));
        break;
      case OM:
        if (!arabic_word || len < 3) break;
        for (std::size_t p = 1; p < len; ++p)
          if (is_plain_consonant(w[p])) out.push_back(char_step(tag, i, K::DeleteChar, p, w[p]));
        break;
      case OG:
        if (!arabic_word) break;
        for (std::size_t p = 0; p < len; ++p)
          if (is_plain_consonant(w[p])) out.push_back(char_step(tag, i, K::InsertChar, p + 1, 0, kAlif));
        break;
      case OS:
        if (!arabic_word || len < 3) break;
        for (std::size_t p = 1; p + 1 < len; ++p)
          if (is_long_vowel(w[p])) out.push_back(char_step(tag, i, K::DeleteChar, p, w[p]));
        break;
      case OR:
        if (!arabic_word || len < 2) break;
        for (std::size_t p = 0; p < len; ++p) {
          if (!is_plain_consonant(w[p])) continue;
          for (char32_t r : keyboard_neighbours(w[p])) out.push_back(char_step(tag, i, K::SubstituteChar, p, w[p], r));
        }
        break;
      case PC:
        if (!punct) break;
        for (auto p : kPunctInventory) {
          std::string alt = utf8::encode(p);
          if (alt != ws.tokens[i]) out.push_back(token_step(tag, i, K::ReplaceToken, alt));
        }
        break;
      case PM:
        if (punct) out.push_back(token_step(tag, i, K::DeleteToken));
        break;
      case PT:
        if (punct) out.push_back(token_step(tag, i + 1, K::InsertToken, ws.tokens[i]));
        break;
      case MG:
        if (!arabic_word || len < 6) break;
        for (std::size_t p = 2; p + 2 <= len; ++p) out.push_back(token_step(tag, i, K::SplitToken, {}, p));
        break;
      case SP:
        if (word && i + 1 < n && ws.free_word(i + 1)) out.push_back(token_step(tag, i, K::JoinTokens));
        break;
      case XM:
        if (word && i > 0) out.push_back(token_step(tag, i, K::DeleteToken));
        break;
      case XT:
        if (word) out.push_back(token_step(tag, i + 1, K::InsertToken, ws.tokens[i]));
        break;
      case SW: {
        if (!arabic_word) break;
        std::vector<std::string> seen;
        for (std::size_t j = 0; j < n; ++j) {
          const Token& other = ws.tokens[j];
          if (j == i || other == ws.tokens[i] || !ws.is_word(j)) continue;
          if (std::find(seen.begin(), seen.end(), other) != seen.end()) continue;
          std::u32string o = cps(other);
          if (!contains_letter(o) || normalized_levenshtein(w, o) <= 0.5) continue;
          seen.push_back(other);
          out.push_back(token_step(tag, i, K::ReplaceToken, other));
        }
        break;
      }
      default:
        break;
    }

    // User substitution table, applied from the reference side.
    if (word) {
      for (const auto& rule : table.rules())
        if (rule.tag == tag && rule.reference == ws.tokens[i] && rule.raw != rule.reference)
          out.push_back(token_step(tag, i, K::ReplaceToken, rule.raw));
    }
  }
  return out;
}

}  // namespace detail

/// Chooses one injection site per requested tag (slot order) with a
/// counter-based generator keyed by (seed, tag slot). Tags without an
/// applicable site are reported unfulfilled.
inline CorruptionReport plan(const Sentence& correct, const TagSet& tags, std::uint64_t seed,
                             const RuleTable& table = {}) {
  CorruptionReport report;
  report.requested = tags;
  report.plan.seed = seed;
  detail::WorkingSentence ws{correct.tokens, std::vector<bool>(correct.tokens.size(), false)};
  for (ErrorTag tag : tags.members()) {
    auto sites = detail::candidate_sites(ws, tag, table);
    if (sites.empty()) {
      report.unfulfilled.insert(tag);
      continue;
    }
    auto pick = bounded(counter_draw(seed, index_of(tag), 0), sites.size());
    const CorruptionStep& step = sites[pick];
    detail::apply_step(ws, step);
    report.plan.steps.push_back(step);
    report.fulfilled.insert(tag);
  }
  return report;
}

namespace detail {

// Keeps the separator before each token in step with a structural edit.
inline void shift_gaps(std::vector<std::string>& gaps, const TokenList& after, const CorruptionStep& s) {
  const auto at = [](std::size_t i) { return static_cast<std::ptrdiff_t>(i); };
  switch (s.kind) {
    case InjectionKind::DeleteToken: {
      std::string removed = gaps[s.token];
      gaps.erase(gaps.begin() + at(s.token));
      if (s.token < gaps.size() && gaps[s.token].empty()) gaps[s.token] = removed;
      break;
    }
    case InjectionKind::InsertToken: {
      std::string gap = " ";
      if (is_punct_token(s.text) && s.token > 0 && is_punct_token(after[s.token - 1])) gap = gaps[s.token - 1];
      gaps.insert(gaps.begin() + at(s.token), gap);
      break;
    }
    case InjectionKind::SplitToken:
      gaps.insert(gaps.begin() + at(s.token) + 1, " ");
      break;
    case InjectionKind::JoinTokens:
      gaps.erase(gaps.begin() + at(s.token) + 1);
      break;
    default:
      break;
  }
  if (!gaps.empty()) gaps[0].clear();
}

}  // namespace detail

/// Replays a plan. Throws InvalidPlan when a step does not fit the sentence.
/// Whitespace between untouched tokens is carried over from the input text.
inline Sentence apply(const Sentence& correct, const CorruptionPlan& p) {
  if (p.empty()) return correct;
  TokenList tokens = correct.tokens;
  std::vector<std::string> gaps = token_gaps(correct.text);
  bool keep_spacing = gaps.size() == tokens.size();
  for (const CorruptionStep& s : p.steps) {
    detail::apply_step(tokens, s);
    if (keep_spacing) detail::shift_gaps(gaps, tokens, s);
  }
  if (keep_spacing) {
    Sentence out;
    out.text = detokenize(tokens, gaps);
    if (tokenize(out.text) == tokens) {
      out.tokens = std::move(tokens);
      return out;
    }
  }
  return Sentence::from_tokens(std::move(tokens));
}

inline std::pair<Sentence, CorruptionReport> corrupt(const Sentence& correct, const TagSet& tags, std::uint64_t seed,
                                                     const RuleTable& table = {}) {
  CorruptionReport report = plan(correct, tags, seed, table);
  Sentence out = apply(correct, report.plan);
  return {std::move(out), std::move(report)};
}

}  // namespace gecforge
