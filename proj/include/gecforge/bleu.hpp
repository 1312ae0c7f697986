#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gecforge/sentence.hpp"

namespace gecforge {

inline constexpr std::size_t kBleuOrder = 4;

/// Sufficient statistics for BLEU-4; summing stats over sentences gives the
/// corpus score.
struct BleuStats {
  std::array<std::uint64_t, kBleuOrder> matches{};
  std::array<std::uint64_t, kBleuOrder> totals{};
  std::uint64_t candidate_length = 0;
  std::uint64_t reference_length = 0;

  BleuStats& operator+=(const BleuStats& o) {
    for (std::size_t n = 0; n < kBleuOrder; ++n) {
      matches[n] += o.matches[n];
      totals[n] += o.totals[n];
    }
    candidate_length += o.candidate_length;
    reference_length += o.reference_length;
    return *this;
  }
};

struct BleuScore {
  double bleu4 = 0;
  double brevity_penalty = 0;
  std::array<double, kBleuOrder> precisions{};
  std::array<double, kBleuOrder> weights{0.25, 0.25, 0.25, 0.25};
  std::uint64_t candidate_length = 0;
  std::uint64_t reference_length = 0;
  bool degenerate = false;  // empty candidate
};

inline BleuStats bleu_stats(std::span<const Token> candidate, std::span<const Token> reference) {
  BleuStats s;
  s.candidate_length = candidate.size();
  s.reference_length = reference.size();
  for (std::size_t n = 1; n <= kBleuOrder; ++n) {
    std::map<std::vector<Token>, std::uint64_t> ref_counts, cand_counts;
    for (std::size_t i = 0; i + n <= reference.size(); ++i)
      ++ref_counts[std::vector<Token>(reference.begin() + i, reference.begin() + i + n)];
    for (std::size_t i = 0; i + n <= candidate.size(); ++i)
      ++cand_counts[std::vector<Token>(candidate.begin() + i, candidate.begin() + i + n)];
    std::uint64_t clipped = 0, total = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) clipped += std::min(count, it->second);
    }
    s.matches[n - 1] = clipped;
    s.totals[n - 1] = total;
  }
  return s;
}

/// BP * exp(sum w_n log P_n) with BP = 1 if c >= r else exp(1 - r/c).
/// A zero higher-order precision is floored at 1 / (2 * max(ngrams, 1)) as long
/// as unigram precision is positive; P_1 = 0 gives a score of exactly 0.
inline BleuScore bleu_from_stats(const BleuStats& s) {
  BleuScore out;
  out.candidate_length = s.candidate_length;
  out.reference_length = s.reference_length;
  if (s.candidate_length == 0) {
    out.degenerate = true;
    return out;
  }
  const double c = static_cast<double>(s.candidate_length), r = static_cast<double>(s.reference_length);
  out.brevity_penalty = c >= r ? 1.0 : std::exp(1.0 - r / c);
  for (std::size_t n = 0; n < kBleuOrder; ++n)
    out.precisions[n] = s.totals[n] == 0 ? 0.0 : static_cast<double>(s.matches[n]) / static_cast<double>(s.totals[n]);
  if (out.precisions[0] == 0.0) return out;
  double log_sum = 0;
  for (std::size_t n = 0; n < kBleuOrder; ++n) {
    double p = out.precisions[n];
    if (p == 0.0) {
      p = 1.0 / (2.0 * static_cast<double>(std::max<std::uint64_t>(s.totals[n], 1)));
      out.precisions[n] = p;
    }
    log_sum += out.weights[n] * std::log(p);
  }
  out.bleu4 = out.brevity_penalty * std::exp(log_sum);
  return out;
}

inline BleuScore bleu4(const Sentence& candidate, const Sentence& reference) {
  return bleu_from_stats(bleu_stats(candidate.tokens, reference.tokens));
}

}  // namespace gecforge
