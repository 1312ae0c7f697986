#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "gecforge/error.hpp"

namespace gecforge {

enum class Category : std::uint8_t { Orthography, Morphology, Syntax, Semantics, Punctuation, Merge, Split };

// Slot order is the taxonomy table order, top to bottom. It fixes the bit
// order of every mask this library reads or writes, so never reorder it.
enum class ErrorTag : std::uint8_t {
  OA, OC, OD, OG, OH, OM, ON, OR, OS, OT, OW,  // orthography
  MI, MT,                                      // morphology
  XC, XF, XG, XM, XN, XT,                      // syntax
  SF, SW,                                      // semantics
  PC, PM, PT,                                  // punctuation
  MG,                                          // merge
  SP,                                          // split
};

inline constexpr std::size_t kTagCount = 26;

struct TagInfo {
  std::string_view code;
  Category category;
  std::string_view description;
};

inline constexpr std::array<TagInfo, kTagCount> kTagTable{{
    {"OA", Category::Orthography, "Alif, Ya & Alif-Maqsura"},
    {"OC", Category::Orthography, "Char order"},
    {"OD", Category::Orthography, "Additional char"},
    {"OG", Category::Orthography, "Lengthening short vowels"},
    {"OH", Category::Orthography, "Hamza error"},
    {"OM", Category::Orthography, "Missing char(s)"},
    {"ON", Category::Orthography, "Nun & Tanwin confusion"},
    {"OR", Category::Orthography, "Char replacement"},
    {"OS", Category::Orthography, "Shortening long vowels"},
    {"OT", Category::Orthography, "Ha/Ta/Ta-Marbuta confusion"},
    {"OW", Category::Orthography, "Confusion in Alif Fariqa"},
    {"MI", Category::Morphology, "Word inflection"},
    {"MT", Category::Morphology, "Verb tense"},
    {"XC", Category::Syntax, "Case"},
    {"XF", Category::Syntax, "Definiteness"},
    {"XG", Category::Syntax, "Gender"},
    {"XM", Category::Syntax, "Missing word"},
    {"XN", Category::Syntax, "Number"},
    {"XT", Category::Syntax, "Unnecessary word"},
    {"SF", Category::Semantics, "Conjunction error"},
    {"SW", Category::Semantics, "Word selection error"},
    {"PC", Category::Punctuation, "Punctuation confusion"},
    {"PM", Category::Punctuation, "Missing punctuation"},
    {"PT", Category::Punctuation, "Unnecessary punctuation"},
    {"MG", Category::Merge, "Merge"},
    {"SP", Category::Split, "Split"},
}};

constexpr std::size_t index_of(ErrorTag t) noexcept { return static_cast<std::size_t>(t); }
constexpr ErrorTag tag_at(std::size_t slot) noexcept { return static_cast<ErrorTag>(slot); }
constexpr std::string_view code_of(ErrorTag t) noexcept { return kTagTable[index_of(t)].code; }
constexpr Category category_of(ErrorTag t) noexcept { return kTagTable[index_of(t)].category; }

constexpr std::string_view category_name(Category c) noexcept {
  switch (c) {
    case Category::Orthography: return "Orthography";
    case Category::Morphology: return "Morphology";
    case Category::Syntax: return "Syntax";
    case Category::Semantics: return "Semantics";
    case Category::Punctuation: return "Punctuation";
    case Category::Merge: return "Merge";
    case Category::Split: return "Split";
  }
  return "";
}

/// Canonical slot of a two-letter code. Throws UnknownTag for anything else.
inline std::size_t tag_index(std::string_view code) {
  for (std::size_t i = 0; i < kTagCount; ++i)
    if (kTagTable[i].code == code) return i;
  throw UnknownTag(std::string(code));
}

inline ErrorTag parse_tag(std::string_view code) { return tag_at(tag_index(code)); }

/// Presence vector over the 26 tags.
class TagSet {
 public:
  TagSet() = default;
  TagSet(std::initializer_list<ErrorTag> tags) {
    for (ErrorTag t : tags) insert(t);
  }

  static TagSet from_bits(std::uint32_t bits) {
    TagSet s;
    s.bits_ = std::bitset<kTagCount>(bits);
    return s;
  }

  void insert(ErrorTag t) { bits_.set(index_of(t)); }
  void erase(ErrorTag t) { bits_.reset(index_of(t)); }
  bool contains(ErrorTag t) const { return bits_.test(index_of(t)); }
  bool test(std::size_t slot) const { return bits_.test(slot); }
  void set(std::size_t slot, bool value = true) { bits_.set(slot, value); }

  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  std::uint32_t to_bits() const { return static_cast<std::uint32_t>(bits_.to_ulong()); }

  bool includes(const TagSet& other) const { return (other.bits_ & ~bits_).none(); }

  std::vector<ErrorTag> members() const {
    std::vector<ErrorTag> out;
    for (std::size_t i = 0; i < kTagCount; ++i)
      if (bits_.test(i)) out.push_back(tag_at(i));
    return out;
  }

  /// Codes joined by ',' in slot order; "" for the empty set.
  std::string codes() const {
    std::string out;
    for (ErrorTag t : members()) {
      if (!out.empty()) out += ',';
      out += code_of(t);
    }
    return out;
  }

  TagSet& operator|=(const TagSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  TagSet& operator&=(const TagSet& o) {
    bits_ &= o.bits_;
    return *this;
  }
  friend TagSet operator|(TagSet a, const TagSet& b) { return a |= b; }
  friend TagSet operator&(TagSet a, const TagSet& b) { return a &= b; }
  friend TagSet operator-(TagSet a, const TagSet& b) {
    a.bits_ &= ~b.bits_;
    return a;
  }
  friend bool operator==(const TagSet&, const TagSet&) = default;

 private:
  std::bitset<kTagCount> bits_;
};

/// Gold or binarized prediction rows, one TagSet per sentence.
using LabelMatrix = std::vector<TagSet>;

using ProbabilityRow = std::array<double, kTagCount>;

/// Per-sentence tag probabilities; every value is checked to lie in [0,1].
class ProbabilityMatrix {
 public:
  ProbabilityMatrix() = default;
  explicit ProbabilityMatrix(std::vector<ProbabilityRow> rows) : rows_(std::move(rows)) {
    for (const auto& r : rows_) check(r);
  }

  void push_back(const ProbabilityRow& r) {
    check(r);
    rows_.push_back(r);
  }

  std::size_t size() const { return rows_.size(); }
  const ProbabilityRow& operator[](std::size_t i) const { return rows_[i]; }
  const std::vector<ProbabilityRow>& rows() const { return rows_; }

  /// Positive iff probability >= threshold.
  LabelMatrix binarize(double threshold) const {
    LabelMatrix out(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < kTagCount; ++j)
        if (rows_[i][j] >= threshold) out[i].set(j);
    return out;
  }

 private:
  static void check(const ProbabilityRow& r) {
    for (double p : r)
      if (!(p >= 0.0 && p <= 1.0)) throw MalformedInput("probability outside [0,1]: " + std::to_string(p));
  }
  std::vector<ProbabilityRow> rows_;
};

}  // namespace gecforge
