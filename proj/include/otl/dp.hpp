#pragma once

#include "otl/solve_report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <vector>

namespace otl {

namespace detail {

template <typename Scalar>
Index first_argmin(const Scalar* row, Index count) {
  Index best = 0;
  for (Index k = 1; k < count; ++k) {
    if (row[k] < row[best]) best = k;
  }
  return best;
}

/// Cumulative-cost table: cost(j, k) is the least loss over unique scores
/// 0..j when score j gets class k+1 and labels are nondecreasing in j.
template <typename Scalar>
RowMajorMatrix<Scalar> dp_cost_table(const Matrix<Scalar>& m) {
  const Index rows = m.rows();
  const Index classes = m.cols();
  RowMajorMatrix<Scalar> cost(rows, classes);
  for (Index k = 0; k < classes; ++k) cost(0, k) = m(0, k);
  for (Index j = 1; j < rows; ++j) {
    const Scalar* prev = cost.data() + (j - 1) * classes;
    Scalar* cur = cost.data() + j * classes;
    Scalar running = std::numeric_limits<Scalar>::infinity();
    for (Index k = 0; k < classes; ++k) {
      if (prev[k] < running) running = prev[k];
      cur[k] = running + m(j, k);
    }
  }
  return cost;
}

/// Backward extraction; ties go to the smallest class index.
template <typename Scalar>
std::vector<Index> dp_backtrack(const RowMajorMatrix<Scalar>& cost) {
  const Index rows = cost.rows();
  const Index classes = cost.cols();
  const Index top = rows;  // index of the +inf candidate
  std::vector<Index> indices(classes - 1, 0);

  Index current = first_argmin(cost.data() + (rows - 1) * classes, classes);
  for (Index k = current; k < classes - 1; ++k) indices[k] = top;
  for (Index j = rows - 2; j >= 0; --j) {
    const Index next = first_argmin(cost.data() + j * classes, current + 1);
    if (next != current) {
      for (Index k = next; k < current; ++k) indices[k] = j + 1;
      current = next;
    }
  }
  for (Index k = 0; k < current; ++k) indices[k] = 0;
  return indices;
}

/// Same program as dp_cost_table + dp_backtrack, keeping only two cost rows
/// and a table of back pointers: back(j, k) is the first argmin of
/// cost(j - 1, 0..k). Rows of M are read through a small row-major tile.
template <typename Pointer, typename Scalar>
std::vector<Index> dp_back_pointers(const Matrix<Scalar>& m) {
  constexpr Index kTile = 64;
  const Index rows = m.rows();
  const Index classes = m.cols();
  std::vector<Pointer> back(std::size_t(rows * classes));
  std::vector<Scalar> prev(static_cast<std::size_t>(classes));
  std::vector<Scalar> cur(prev.size());
  for (Index k = 0; k < classes; ++k) prev[k] = m(0, k);

  RowMajorMatrix<Scalar> tile(kTile, classes);
  for (Index j0 = 1; j0 < rows; j0 += kTile) {
    const Index height = std::min(kTile, rows - j0);
    for (Index k = 0; k < classes; ++k)
      for (Index i = 0; i < height; ++i) tile(i, k) = m(j0 + i, k);
    for (Index i = 0; i < height; ++i) {
      const Scalar* row = tile.data() + i * classes;
      Pointer* out = back.data() + (j0 + i) * classes;
      Scalar running = prev[0];
      Index best = 0;
      for (Index k = 0; k < classes; ++k) {
        const bool lower = prev[k] < running;
        running = lower ? prev[k] : running;
        best = lower ? k : best;
        out[k] = Pointer(best);
        cur[k] = running + row[k];
      }
      prev.swap(cur);
    }
  }

  const Index top = rows;
  std::vector<Index> indices(classes - 1, 0);
  Index current = first_argmin(prev.data(), classes);
  for (Index k = current; k < classes - 1; ++k) indices[k] = top;
  for (Index j = rows - 1; j >= 1; --j) {
    const Index next = back[std::size_t(j * classes + current)];
    for (Index k = next; k < current; ++k) indices[k] = j;
    current = next;
  }
  return indices;
}

template <typename Scalar>
std::vector<Index> dp_indices(const Matrix<Scalar>& m) {
  if (m.cols() <= 256) return dp_back_pointers<std::uint8_t>(m);
  if (m.cols() <= 65536) return dp_back_pointers<std::uint16_t>(m);
  return dp_back_pointers<std::uint32_t>(m);
}

}  // namespace detail

/// Sequential dynamic program over (unique score, class). Globally optimal for
/// any loss; output thresholds are nondecreasing by construction.
template <typename Scalar>
SolveReport<Scalar> solve_dp(const PreparedProblem<Scalar>& prep) {
  const auto start = std::chrono::steady_clock::now();
  auto report = detail::make_report(prep, detail::dp_indices(prep.loss_matrix), Algorithm::Dp);
  report.order_ok = true;
  report.optimal_claimed = true;
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace otl
