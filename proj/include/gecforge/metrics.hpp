#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gecforge/error.hpp"
#include "gecforge/tags.hpp"

// Multi-label tagging metrics: per-label precision/recall/F-scores, micro,
// macro and support-weighted aggregates, Hamming loss, threshold sweeping and
// class-rebalance weights.
//
// Every ratio with a zero denominator is defined as 0.
namespace gecforge {

struct LabelCounts {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::uint64_t support() const { return tp + fn; }
  std::uint64_t total() const { return tp + fp + fn + tn; }
  bool active() const { return tp + fp + fn > 0; }

  LabelCounts& operator+=(const LabelCounts& o) {
    tp += o.tp, fp += o.fp, fn += o.fn, tn += o.tn;
    return *this;
  }
  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

/// Per-label confusion counts. Shards computed separately sum to the counts
/// of the concatenated input.
struct ConfusionCounts {
  std::array<LabelCounts, kTagCount> labels{};
  std::uint64_t sentences = 0;

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    for (std::size_t i = 0; i < kTagCount; ++i) labels[i] += o.labels[i];
    sentences += o.sentences;
    return *this;
  }

  LabelCounts summed() const {
    LabelCounts s;
    for (const auto& l : labels) s += l;
    return s;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

inline ConfusionCounts confusion(std::span<const TagSet> pred, std::span<const TagSet> gold) {
  if (pred.size() != gold.size())
    throw ShapeError("prediction has " + std::to_string(pred.size()) + " rows, gold has " +
                     std::to_string(gold.size()));
  ConfusionCounts c;
  c.sentences = pred.size();
  for (std::size_t r = 0; r < pred.size(); ++r) {
    const std::uint32_t p = pred[r].to_bits(), g = gold[r].to_bits();
    for (std::size_t i = 0; i < kTagCount; ++i) {
      const bool pi = (p >> i) & 1u, gi = (g >> i) & 1u;
      auto& l = c.labels[i];
      if (pi && gi)
        ++l.tp;
      else if (pi)
        ++l.fp;
      else if (gi)
        ++l.fn;
      else
        ++l.tn;
    }
  }
  return c;
}

inline double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

/// F_beta = (1 + beta^2) P R / (beta^2 P + R).
inline double f_beta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  return safe_ratio((1.0 + b2) * precision * recall, b2 * precision + recall);
}

/// The F0.5 expression exactly as it is commonly misprinted:
/// 1.25 P R / (0.25 (P + R)), which equals 2.5 F1 and can exceed 1.
/// Reported next to the standard F0.5 so the two can be compared.
inline double f05_as_printed(double precision, double recall) {
  return safe_ratio(1.25 * precision * recall, 0.25 * (precision + recall));
}

struct Prf {
  double precision = 0, recall = 0, f1 = 0, f05 = 0;
};

inline Prf prf_from(double precision, double recall) {
  return {precision, recall, f_beta(precision, recall, 1.0), f_beta(precision, recall, 0.5)};
}

inline Prf prf(const LabelCounts& c) {
  const double p = safe_ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
  const double r = safe_ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
  return prf_from(p, r);
}

/// Precision, recall and F_beta for one set of counts.
struct PrfBeta {
  double precision = 0, recall = 0, f = 0;
};

inline PrfBeta prf(const LabelCounts& c, double beta) {
  Prf base = prf(c);
  return {base.precision, base.recall, f_beta(base.precision, base.recall, beta)};
}

enum class Averaging { Micro, Macro, Weighted };

/// Micro sums counts before dividing; macro is the unweighted mean over labels
/// that occur in gold or prediction; weighted is the mean over labels weighted
/// by gold support.
inline Prf aggregate(const ConfusionCounts& counts, Averaging mode) {
  if (mode == Averaging::Micro) return prf(counts.summed());
  Prf sum;
  double weight_total = 0;
  for (const auto& l : counts.labels) {
    double w = mode == Averaging::Macro ? (l.active() ? 1.0 : 0.0) : static_cast<double>(l.support());
    if (w == 0.0) continue;
    Prf s = prf(l);
    sum.precision += w * s.precision;
    sum.recall += w * s.recall;
    sum.f1 += w * s.f1;
    sum.f05 += w * s.f05;
    weight_total += w;
  }
  if (weight_total == 0.0) return {};
  return {sum.precision / weight_total, sum.recall / weight_total, sum.f1 / weight_total, sum.f05 / weight_total};
}

/// Fraction of (sentence, label) cells predicted wrongly.
inline double hamming_loss(const ConfusionCounts& counts) {
  LabelCounts s = counts.summed();
  return safe_ratio(static_cast<double>(s.fp + s.fn), static_cast<double>(s.total()));
}

inline double hamming_loss(std::span<const TagSet> pred, std::span<const TagSet> gold) {
  return hamming_loss(confusion(pred, gold));
}

struct LabelReport {
  ErrorTag tag;
  LabelCounts counts;
  Prf scores;
  double f05_printed = 0;
};

struct MetricsReport {
  std::array<LabelReport, kTagCount> labels;
  Prf micro, macro, weighted;
  double micro_f05_printed = 0;
  double hamming_loss = 0;
  std::uint64_t sentences = 0;
};

inline MetricsReport metrics_report(const ConfusionCounts& counts) {
  MetricsReport r;
  for (std::size_t i = 0; i < kTagCount; ++i) {
    const auto& c = counts.labels[i];
    Prf s = prf(c);
    r.labels[i] = {tag_at(i), c, s, f05_as_printed(s.precision, s.recall)};
  }
  r.micro = aggregate(counts, Averaging::Micro);
  r.macro = aggregate(counts, Averaging::Macro);
  r.weighted = aggregate(counts, Averaging::Weighted);
  r.micro_f05_printed = f05_as_printed(r.micro.precision, r.micro.recall);
  r.hamming_loss = hamming_loss(counts);
  r.sentences = counts.sentences;
  return r;
}

inline MetricsReport metrics_report(std::span<const TagSet> pred, std::span<const TagSet> gold) {
  return metrics_report(confusion(pred, gold));
}

// ---------------------------------------------------------------------------
// Threshold sweep
// ---------------------------------------------------------------------------

struct ThresholdPoint {
  double threshold = 0, precision = 0, recall = 0, f1 = 0;
};

struct ThresholdSweepResult {
  double best_threshold = 0;
  double best_f1 = 0;
  std::vector<ThresholdPoint> curve;
};

/// Grid {0, step, 2 step, ..., 1}. When 1/step is an integer n the points are
/// computed as k/n so that refining the grid reproduces coarse points exactly.
inline std::vector<double> threshold_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw BadGrid("threshold step must lie in (0, 1]");
  std::vector<double> grid;
  const double n = std::round(1.0 / step);
  if (std::abs(n * step - 1.0) < 1e-9) {
    for (std::int64_t k = 0; k <= static_cast<std::int64_t>(n); ++k) grid.push_back(static_cast<double>(k) / n);
  } else {
    for (std::int64_t k = 0;; ++k) {
      double t = static_cast<double>(k) * step;
      if (t > 1.0) break;
      grid.push_back(t);
    }
    if (grid.back() < 1.0) grid.push_back(1.0);
  }
  return grid;
}

/// Micro-F1 at every grid threshold (positive iff p >= t); the best threshold
/// is the smallest one attaining the maximum.
inline ThresholdSweepResult sweep_threshold(const ProbabilityMatrix& probs, std::span<const TagSet> gold,
                                            double step = 0.01) {
  if (probs.size() != gold.size()) throw ShapeError("probability and gold row counts differ");
  ThresholdSweepResult out;
  bool first = true;
  for (double t : threshold_grid(step)) {
    LabelMatrix pred = probs.binarize(t);
    Prf s = aggregate(confusion(pred, gold), Averaging::Micro);
    out.curve.push_back({t, s.precision, s.recall, s.f1});
    if (first || s.f1 > out.best_f1) {
      out.best_f1 = s.f1;
      out.best_threshold = t;
      first = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Class-rebalance weights
// ---------------------------------------------------------------------------

struct ClassWeightTable {
  std::vector<std::uint64_t> counts;
  std::vector<double> weights;
};

/// weight_i proportional to total / max(count_i, 1), scaled so the mean weight is 1.
inline ClassWeightTable class_weights(std::span<const std::uint64_t> counts, std::uint64_t total) {
  ClassWeightTable t;
  t.counts.assign(counts.begin(), counts.end());
  if (counts.empty()) return t;
  for (auto c : counts)
    if (c > total) throw MalformedInput("label count exceeds sentence total");
  double sum = 0;
  for (auto c : counts) {
    double w = static_cast<double>(total) / static_cast<double>(c == 0 ? 1 : c);
    t.weights.push_back(w);
    sum += w;
  }
  const double mean = sum / static_cast<double>(counts.size());
  for (double& w : t.weights) w = mean > 0 ? w / mean : 1.0;
  return t;
}

}  // namespace gecforge
