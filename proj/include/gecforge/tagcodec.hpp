#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gecforge/error.hpp"
#include "gecforge/sentence.hpp"
#include "gecforge/tags.hpp"

// Conditioning-prefix codec:
//
//   grammar_error [<26 x 'a'|'b'>] <correct text>
//
// Slot i of the mask is 'b' iff tag i (taxonomy order, OA first, SP last) is
// present. One ASCII space separates the prefix, the bracketed mask and the text.
namespace gecforge {

inline constexpr std::string_view kTaskPrefix = "grammar_error";

inline std::string encode_mask(const TagSet& tags) {
  std::string out(kTagCount, 'a');
  for (std::size_t i = 0; i < kTagCount; ++i)
    if (tags.test(i)) out[i] = 'b';
  return out;
}

inline TagSet decode_mask(std::string_view mask) {
  if (mask.size() != kTagCount)
    throw MalformedMask("mask must have " + std::to_string(kTagCount) + " characters, got " +
                        std::to_string(mask.size()));
  TagSet out;
  for (std::size_t i = 0; i < kTagCount; ++i) {
    if (mask[i] == 'b')
      out.set(i);
    else if (mask[i] != 'a')
      throw MalformedMask("mask character at slot " + std::to_string(i) + " is not 'a' or 'b'");
  }
  return out;
}

struct TrainingLine {
  TagSet tags;
  std::string correct_text;
  std::optional<std::string> target_text;

  friend bool operator==(const TrainingLine&, const TrainingLine&) = default;
};

namespace detail {
inline void require_single_line(std::string_view payload, std::string_view what) {
  if (payload.find_first_of("\r\n") != std::string_view::npos)
    throw MalformedInput(std::string(what) + " contains a line break");
}
}  // namespace detail

inline std::string format_source_line(const TagSet& tags, std::string_view correct_text) {
  detail::require_single_line(correct_text, "correct text");
  std::string out;
  out.reserve(kTaskPrefix.size() + kTagCount + 4 + correct_text.size());
  out += kTaskPrefix;
  out += " [";
  out += encode_mask(tags);
  out += "] ";
  out += correct_text;
  return out;
}

/// Source line, plus the target line when a corrupted sentence is given.
inline std::pair<std::string, std::optional<std::string>> format_training_line(
    const TagSet& tags, const Sentence& correct, const Sentence* corrupted = nullptr) {
  std::pair<std::string, std::optional<std::string>> out{format_source_line(tags, correct.text), std::nullopt};
  if (corrupted) {
    detail::require_single_line(corrupted->text, "corrupted text");
    out.second = corrupted->text;
  }
  return out;
}

inline TrainingLine parse_training_line(std::string_view line) {
  if (!line.starts_with(kTaskPrefix)) throw MalformedLine("missing 'grammar_error' prefix", 0);
  std::size_t pos = kTaskPrefix.size();
  if (pos >= line.size() || line[pos] != ' ') throw MalformedLine("expected space after prefix", pos);
  ++pos;
  if (pos >= line.size() || line[pos] != '[') throw MalformedLine("missing '['", pos);
  ++pos;
  std::size_t close = line.find(']', pos);
  if (close == std::string_view::npos) throw MalformedLine("missing ']'", line.size());
  TrainingLine out;
  try {
    out.tags = decode_mask(line.substr(pos, close - pos));
  } catch (const MalformedMask& e) {
    throw MalformedLine(std::string("malformed mask: ") + e.what(), pos);
  }
  pos = close + 1;
  if (pos >= line.size() || line[pos] != ' ') throw MalformedLine("expected space after ']'", pos);
  ++pos;
  std::string_view text = line.substr(pos);
  if (auto nl = text.find_first_of("\r\n"); nl != std::string_view::npos)
    throw MalformedLine("line break inside text", pos + nl);
  out.correct_text = std::string(text);
  return out;
}

// ---------------------------------------------------------------------------
// Parallel corpus files
// ---------------------------------------------------------------------------

enum class CorpusFormat { Tsv, SrcTgt };

inline CorpusFormat parse_corpus_format(std::string_view s) {
  if (s == "tsv") return CorpusFormat::Tsv;
  if (s == "srctgt" || s == "src-tgt") return CorpusFormat::SrcTgt;
  throw MalformedInput("unknown corpus format: " + std::string(s));
}

/// Writes (source, target) line pairs either as `<base>.tsv` or as the pair
/// `<base>.src` / `<base>.tgt`.
class ParallelWriter {
 public:
  ParallelWriter(const std::string& base, CorpusFormat format) : format_(format) {
    if (format_ == CorpusFormat::Tsv) {
      paths_ = {base + ".tsv"};
    } else {
      paths_ = {base + ".src", base + ".tgt"};
    }
    for (const auto& p : paths_) {
      streams_.emplace_back(p, std::ios::binary | std::ios::trunc);
      if (!streams_.back()) throw IoError("cannot open for writing", p);
    }
  }

  void write(std::string_view source, std::string_view target) {
    detail::require_single_line(source, "source line");
    detail::require_single_line(target, "target line");
    if (format_ == CorpusFormat::Tsv) {
      if (source.find('\t') != std::string_view::npos || target.find('\t') != std::string_view::npos)
        throw MalformedInput("tab inside TSV payload");
      streams_[0] << source << '\t' << target << '\n';
    } else {
      streams_[0] << source << '\n';
      streams_[1] << target << '\n';
    }
    ++lines_;
  }

  void close() {
    for (std::size_t i = 0; i < streams_.size(); ++i) {
      streams_[i].close();
      if (!streams_[i]) throw IoError("write failed", paths_[i]);
    }
  }

  const std::vector<std::string>& paths() const { return paths_; }
  std::size_t lines() const { return lines_; }

 private:
  CorpusFormat format_;
  std::vector<std::string> paths_;
  std::vector<std::ofstream> streams_;
  std::size_t lines_ = 0;
};

inline std::vector<std::pair<std::string, std::string>> read_parallel(const std::string& base, CorpusFormat format) {
  std::vector<std::pair<std::string, std::string>> out;
  auto open = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open", p);
    return in;
  };
  std::string a, b;
  if (format == CorpusFormat::Tsv) {
    auto in = open(base + ".tsv");
    while (std::getline(in, a)) {
      auto tab = a.find('\t');
      if (tab == std::string::npos) throw MalformedInput("TSV line without tab");
      out.emplace_back(a.substr(0, tab), a.substr(tab + 1));
    }
  } else {
    auto src = open(base + ".src");
    auto tgt = open(base + ".tgt");
    while (std::getline(src, a)) {
      if (!std::getline(tgt, b)) throw MalformedInput("target file shorter than source file");
      out.emplace_back(a, b);
    }
    if (std::getline(tgt, b)) throw MalformedInput("target file longer than source file");
  }
  return out;
}

}  // namespace gecforge
