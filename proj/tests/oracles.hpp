#pragma once

// Independent reference implementations used to check the library. They are
// written for clarity, not speed, and share no code with the library beyond
// the tag/TagSet types and the tokenizer's punctuation set.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gecforge/arabic.hpp"
#include "gecforge/tags.hpp"
#include "gecforge/utf8.hpp"

namespace oracle {

// Plain recursive-free Levenshtein over code points, full matrix.
inline std::size_t lev(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

inline std::size_t lev(const std::string& a, const std::string& b) {
  return lev(gecforge::utf8::to_u32(a), gecforge::utf8::to_u32(b));
}

inline bool punct(const std::string& t) {
  auto c = gecforge::utf8::to_u32(t);
  return c.size() == 1 && gecforge::arabic::is_punct(c[0]);
}

// Link costs written out from the documented cost table. Negative = not allowed.
inline double one_to_one(const std::string& a, const std::string& b) {
  if (a == b) return 0.0;
  if (punct(a) != punct(b)) return -1;
  auto ua = gecforge::utf8::to_u32(a), ub = gecforge::utf8::to_u32(b);
  return static_cast<double>(lev(ua, ub)) / static_cast<double>(std::max(ua.size(), ub.size()));
}

inline double two_to_one(const std::string& a1, const std::string& a2, const std::string& b) {
  if (punct(a1) || punct(a2) || punct(b)) return -1;
  return static_cast<double>(lev(a1 + a2, b)) + 0.1;
}

/// Minimum cost over every monotone segmentation into 1:1, 2:1, 1:2, 1:0 and
/// 0:1 blocks, by explicit enumeration of all paths.
inline double brute_force_align_cost(const std::vector<std::string>& raw, const std::vector<std::string>& ref) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
    if (i == raw.size() && j == ref.size()) {
      best = std::min(best, acc);
      return;
    }
    if (i < raw.size() && j < ref.size()) {
      double c = one_to_one(raw[i], ref[j]);
      if (c >= 0) walk(i + 1, j + 1, acc + c);
    }
    if (i + 1 < raw.size() && j < ref.size()) {
      double c = two_to_one(raw[i], raw[i + 1], ref[j]);
      if (c >= 0) walk(i + 2, j + 1, acc + c);
    }
    if (i < raw.size() && j + 1 < ref.size()) {
      double c = two_to_one(ref[j], ref[j + 1], raw[i]);
      if (c >= 0) walk(i + 1, j + 2, acc + c);
    }
    if (i < raw.size()) walk(i + 1, j, acc + 1.0);
    if (j < ref.size()) walk(i, j + 1, acc + 1.0);
  };
  walk(0, 0, 0.0);
  return best;
}

// ---------------------------------------------------------------------------
// Multi-label metrics, cell by cell.
// ---------------------------------------------------------------------------

struct Cells {
  std::array<double, gecforge::kTagCount> tp{}, fp{}, fn{}, tn{};
};

inline Cells count_cells(const std::vector<gecforge::TagSet>& pred, const std::vector<gecforge::TagSet>& gold) {
  Cells c;
  for (std::size_t r = 0; r < pred.size(); ++r)
    for (std::size_t l = 0; l < gecforge::kTagCount; ++l) {
      bool p = pred[r].test(l), g = gold[r].test(l);
      if (p && g) c.tp[l] += 1;
      if (p && !g) c.fp[l] += 1;
      if (!p && g) c.fn[l] += 1;
      if (!p && !g) c.tn[l] += 1;
    }
  return c;
}

inline double div0(double a, double b) { return b == 0 ? 0 : a / b; }

struct Scores {
  double p = 0, r = 0, f1 = 0, f05 = 0;
};

inline Scores scores(double tp, double fp, double fn) {
  Scores s;
  s.p = div0(tp, tp + fp);
  s.r = div0(tp, tp + fn);
  s.f1 = div0(2 * s.p * s.r, s.p + s.r);
  s.f05 = div0(1.25 * s.p * s.r, 0.25 * s.p + s.r);
  return s;
}

struct Naive {
  std::array<Scores, gecforge::kTagCount> label;
  Scores micro, macro, weighted;
  double hamming = 0;
};

inline Naive naive_metrics(const std::vector<gecforge::TagSet>& pred, const std::vector<gecforge::TagSet>& gold) {
  Naive n;
  Cells c = count_cells(pred, gold);
  double TP = 0, FP = 0, FN = 0, TN = 0;
  double active = 0, support_total = 0;
  for (std::size_t l = 0; l < gecforge::kTagCount; ++l) {
    n.label[l] = scores(c.tp[l], c.fp[l], c.fn[l]);
    TP += c.tp[l], FP += c.fp[l], FN += c.fn[l], TN += c.tn[l];
    if (c.tp[l] + c.fp[l] + c.fn[l] > 0) {
      active += 1;
      n.macro.p += n.label[l].p, n.macro.r += n.label[l].r, n.macro.f1 += n.label[l].f1, n.macro.f05 += n.label[l].f05;
    }
    double w = c.tp[l] + c.fn[l];
    support_total += w;
    n.weighted.p += w * n.label[l].p, n.weighted.r += w * n.label[l].r;
    n.weighted.f1 += w * n.label[l].f1, n.weighted.f05 += w * n.label[l].f05;
  }
  n.micro = scores(TP, FP, FN);
  n.macro = {div0(n.macro.p, active), div0(n.macro.r, active), div0(n.macro.f1, active), div0(n.macro.f05, active)};
  n.weighted = {div0(n.weighted.p, support_total), div0(n.weighted.r, support_total),
                div0(n.weighted.f1, support_total), div0(n.weighted.f05, support_total)};
  n.hamming = div0(FP + FN, TP + FP + FN + TN);
  return n;
}

/// Micro F1 at every threshold k * step (plus 1.0), best = first maximum.
struct SweepOracle {
  double best_t = 0, best_f1 = -1;
  std::vector<std::pair<double, double>> curve;
};

inline SweepOracle exhaustive_sweep(const std::vector<std::array<double, gecforge::kTagCount>>& probs,
                                    const std::vector<gecforge::TagSet>& gold, std::size_t steps) {
  SweepOracle o;
  for (std::size_t k = 0; k <= steps; ++k) {
    double t = static_cast<double>(k) / static_cast<double>(steps);
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t r = 0; r < probs.size(); ++r)
      for (std::size_t l = 0; l < gecforge::kTagCount; ++l) {
        bool p = probs[r][l] >= t, g = gold[r].test(l);
        tp += p && g, fp += p && !g, fn += !p && g;
      }
    double f1 = scores(tp, fp, fn).f1;
    o.curve.emplace_back(t, f1);
    if (f1 > o.best_f1) o.best_f1 = f1, o.best_t = t;
  }
  return o;
}

inline std::vector<gecforge::TagSet> random_labels(std::mt19937_64& rng, std::size_t rows, double density) {
  std::bernoulli_distribution bit(density);
  std::vector<gecforge::TagSet> out(rows);
  for (auto& r : out)
    for (std::size_t l = 0; l < gecforge::kTagCount; ++l)
      if (bit(rng)) r.set(l);
  return out;
}

}  // namespace oracle
