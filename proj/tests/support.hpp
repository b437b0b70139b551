#pragma once

// Shared test helpers: random instance generators and an oracle that works
// from raw samples only (no loss matrix, no candidate indices).

#include "otl/datagen.hpp"
#include "otl/labeling.hpp"
#include "otl/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace otl::testing {

using S = Sample<double>;

inline std::vector<double> oracle_candidates(const std::vector<S>& samples) {
  std::vector<double> scores;
  for (const auto& s : samples) scores.push_back(s.score);
  std::sort(scores.begin(), scores.end());
  scores.erase(std::unique(scores.begin(), scores.end()), scores.end());
  std::vector<double> c{-std::numeric_limits<double>::infinity()};
  for (std::size_t j = 1; j < scores.size(); ++j) c.push_back((scores[j - 1] + scores[j]) / 2);
  c.push_back(std::numeric_limits<double>::infinity());
  return c;
}

/// Minimum summed risk over every tuple in candidates^{K-1}, ordered or not,
/// evaluated by labeling each sample directly. Exponential; tiny inputs only.
inline double oracle_min_risk(const std::vector<S>& samples, const LossSpec<double>& loss) {
  const auto c = oracle_candidates(samples);
  const Index picks = loss.classes() - 1;
  std::vector<std::size_t> digits(picks, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    Vector<double> t(picks);
    for (Index k = 0; k < picks; ++k) t(k) = c[digits[k]];
    const ThresholdVector<double> tv(t);
    double sum = 0;
    for (const auto& s : samples) sum += loss(threshold_label(s.score, tv), s.label);
    best = std::min(best, sum);
    Index k = 0;
    while (k < picks && ++digits[k] == c.size()) digits[k++] = 0;
    if (k == picks) break;
  }
  return best;
}

/// Scores drawn from `levels` half-integer values so duplicates are common.
inline std::vector<S> random_samples(Rng& rng, Index n, Index classes, int levels) {
  std::vector<S> out;
  for (Index i = 0; i < n; ++i) {
    out.push_back({0.5 * double(rng.below(levels)) - 3.0, 1 + int(rng.below(classes))});
  }
  return out;
}

/// Samples with a positive score/label association plus noise.
inline std::vector<S> random_ordinal_samples(Rng& rng, Index n, Index classes, int levels) {
  std::vector<S> out;
  for (Index i = 0; i < n; ++i) {
    const auto level = rng.below(levels);
    int label = 1 + int(double(level) * double(classes) / double(levels));
    if (rng.uniform() < 0.4) label = 1 + int(rng.below(classes));
    out.push_back({0.25 * double(level), std::clamp(label, 1, int(classes))});
  }
  return out;
}

/// Integer table with nonnegative second differences in the prediction
/// argument, column by column.
inline LossSpec<double> random_convex_integer_loss(Rng& rng, Index classes) {
  Matrix<double> t(classes, classes);
  for (Index l = 0; l < classes; ++l) {
    double value = 0;
    double step = double(rng.below(11)) - 5.0;
    for (Index k = 0; k < classes; ++k) {
      t(k, l) = value;
      value += step;
      step += double(rng.below(4));
    }
    const double shift = t.col(l).minCoeff() - double(rng.below(3));
    t.col(l).array() -= shift;
  }
  return LossSpec<double>::custom(t);
}

inline LossSpec<double> random_integer_loss(Rng& rng, Index classes) {
  Matrix<double> t(classes, classes);
  for (Index l = 0; l < classes; ++l) {
    for (Index k = 0; k < classes; ++k) t(k, l) = double(rng.below(6));
  }
  return LossSpec<double>::custom(t);
}

inline LossSpec<double> random_fractional_loss(Rng& rng, Index classes) {
  Matrix<double> t(classes, classes);
  for (Index l = 0; l < classes; ++l) {
    for (Index k = 0; k < classes; ++k) t(k, l) = rng.uniform(0.0, 3.0);
  }
  return LossSpec<double>::custom(t);
}

inline std::vector<Index> random_nondecreasing_indices(Rng& rng, Index candidates, Index count) {
  std::vector<Index> idx(count);
  for (auto& i : idx) i = Index(rng.below(candidates));
  std::sort(idx.begin(), idx.end());
  return idx;
}

inline bool close_rel(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace otl::testing
