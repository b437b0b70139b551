#pragma once

#include "otl/common.hpp"
#include "otl/labeling.hpp"
#include "otl/losses.hpp"
#include "otl/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace otl {

/// Output of the preparation step: sorted unique scores, per-score label
/// counts, the loss matrix and the candidate thresholds.
///
/// Row j of `loss_matrix` holds, for every predicted class k, the summed loss
/// of all samples whose score equals unique_scores(j). `candidates` has N+1
/// entries: -inf, the midpoints between consecutive unique scores, +inf.
template <typename Scalar = double>
struct PreparedProblem {
  LossSpec<Scalar> loss;
  Vector<Scalar> unique_scores;
  CountMatrix label_counts;      // N x K
  Matrix<Scalar> loss_matrix;    // N x K
  Vector<Scalar> candidates;     // N + 1
  Index n = 0;

  Index classes() const noexcept { return loss.classes(); }
  Index unique_count() const noexcept { return unique_scores.size(); }
};

/// M(j, k) = sum_l counts(j, l) * loss(k, l), summed in ascending l. Zero
/// counts are skipped, which leaves every sum bit-identical to the dense
/// formula. Rows are split into fixed tiles so any worker count gives the same
/// matrix.
template <typename Scalar>
Matrix<Scalar> loss_matrix_parallel(const CountMatrix& label_counts,
                                    const LossSpec<Scalar>& loss, int workers = 1) {
  const Index rows = label_counts.rows();
  const Index classes = loss.classes();
  if (label_counts.cols() != classes) {
    throw InvalidArgument("label count matrix has " + std::to_string(label_counts.cols()) +
                          " columns, loss has " + std::to_string(classes) + " classes");
  }
  Matrix<Scalar> m = Matrix<Scalar>::Zero(rows, classes);
  const auto& table = loss.table();
  parallel_for(rows, resolve_workers(workers), [&](Index begin, Index end) {
    for (Index j = begin; j < end; ++j) {
      for (Index l = 0; l < classes; ++l) {
        const std::int64_t c = label_counts(j, l);
        if (c == 0) continue;
        for (Index k = 0; k < classes; ++k) m(j, k) += Scalar(c) * table(k, l);
      }
    }
  });
  return m;
}

template <typename Scalar>
PreparedProblem<Scalar> prepare(std::span<const Sample<Scalar>> samples,
                                const LossSpec<Scalar>& loss, int workers = 1) {
  const Index classes = loss.classes();
  detail::check_samples(samples, classes);
  for (const auto& s : samples) {
    if (!std::isfinite(s.score)) throw InvalidArgument("sample score is not finite");
  }

  // -0.0 and +0.0 are the same score.
  std::vector<Sample<Scalar>> sorted(samples.begin(), samples.end());
  for (auto& s : sorted) s.score += Scalar(0);
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.score < b.score || (a.score == b.score && a.label < b.label);
  });

  Index unique = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || sorted[i].score != sorted[i - 1].score) ++unique;
  }

  PreparedProblem<Scalar> prep{loss, Vector<Scalar>(unique), CountMatrix::Zero(unique, classes),
                               Matrix<Scalar>(), Vector<Scalar>(unique + 1),
                               Index(samples.size())};
  Index j = -1;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || sorted[i].score != sorted[i - 1].score) prep.unique_scores(++j) = sorted[i].score;
    ++prep.label_counts(j, sorted[i].label - 1);
  }

  prep.loss_matrix = loss_matrix_parallel(prep.label_counts, loss, workers);

  // Adjacent doubles have no representable midpoint; the upper score is then
  // used, which keeps the labeling of training scores unchanged under >=.
  prep.candidates(0) = -std::numeric_limits<Scalar>::infinity();
  for (Index c = 1; c < unique; ++c) {
    const Scalar lo = prep.unique_scores(c - 1);
    const Scalar hi = prep.unique_scores(c);
    Scalar mid = std::midpoint(lo, hi);
    if (!(mid > lo)) mid = hi;
    prep.candidates(c) = mid;
  }
  prep.candidates(unique) = std::numeric_limits<Scalar>::infinity();
  return prep;
}

template <typename Scalar>
PreparedProblem<Scalar> prepare(const std::vector<Sample<Scalar>>& samples,
                                const LossSpec<Scalar>& loss, int workers = 1) {
  return prepare(std::span<const Sample<Scalar>>(samples), loss, workers);
}

}  // namespace otl
