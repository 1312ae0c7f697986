#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecforge/arabic.hpp"
#include "gecforge/tags.hpp"
#include "gecforge/utf8.hpp"

namespace gecforge {

using Token = std::string;
using TokenList = std::vector<Token>;

/// Splits on whitespace; every punctuation character becomes its own token.
/// Invalid UTF-8 bytes are kept inside the surrounding word.
inline TokenList tokenize(std::string_view text) {
  TokenList out;
  std::u32string cps = utf8::to_u32(text);
  std::u32string word;
  auto flush = [&] {
    if (!word.empty()) {
      out.push_back(utf8::encode(word));
      word.clear();
    }
  };
  for (char32_t c : cps) {
    if (arabic::is_space(c)) {
      flush();
    } else if (arabic::is_punct(c)) {
      flush();
      out.push_back(utf8::encode(std::u32string_view(&c, 1)));
    } else {
      word.push_back(c);
    }
  }
  flush();
  return out;
}

inline std::string join(std::span<const Token> tokens, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

/// The whitespace found before each token of `text` ("" for the first token
/// and for punctuation written flush against its neighbour).
inline std::vector<std::string> token_gaps(std::string_view text) {
  std::vector<std::string> gaps;
  std::u32string cps = utf8::to_u32(text);
  std::u32string gap;
  bool in_word = false;
  for (char32_t c : cps) {
    if (arabic::is_space(c)) {
      in_word = false;
      gap.push_back(c);
    } else if (arabic::is_punct(c)) {
      in_word = false;
      gaps.push_back(gaps.empty() ? std::string() : utf8::encode(gap));
      gap.clear();
    } else {
      if (!in_word) {
        gaps.push_back(gaps.empty() ? std::string() : utf8::encode(gap));
        gap.clear();
      }
      in_word = true;
    }
  }
  return gaps;
}

inline std::string detokenize(std::span<const Token> tokens, std::span<const std::string> gaps) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += i < gaps.size() ? gaps[i] : std::string(" ");
    out += tokens[i];
  }
  return out;
}

inline bool is_punct_token(std::string_view tok) {
  std::u32string cps = utf8::to_u32(tok);
  return cps.size() == 1 && arabic::is_punct(cps[0]);
}

inline std::size_t word_count(std::span<const Token> tokens) {
  std::size_t n = 0;
  for (const auto& t : tokens)
    if (!is_punct_token(t)) ++n;
  return n;
}

/// Raw text plus its tokenization. Both are kept because downstream models may
/// consume either.
struct Sentence {
  std::string text;
  TokenList tokens;

  Sentence() = default;
  explicit Sentence(std::string t) : text(std::move(t)), tokens(tokenize(text)) {}

  static Sentence from_tokens(TokenList toks) {
    Sentence s;
    s.text = join(toks);
    s.tokens = std::move(toks);
    return s;
  }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct ParallelExample {
  Sentence correct;
  Sentence corrupted;
  TagSet tags;
  std::optional<std::uint64_t> seed;  // absent for human-annotated data
};

}  // namespace gecforge
