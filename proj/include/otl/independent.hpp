#pragma once

#include "otl/dp.hpp"
#include "otl/parallel.hpp"
#include "otl/solve_report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <vector>

namespace otl {

/// Column k (0-based, 0 <= k <= K-2) of the IO risk table: entry j is
/// n * (R_k(c_j) - R_k(c_0)), the change in summed loss when the threshold
/// between classes k+1 and k+2 moves from -inf to candidate j.
template <typename Scalar>
Vector<Scalar> risk_column(const PreparedProblem<Scalar>& prep, Index k) {
  if (k < 0 || k > prep.classes() - 2) {
    throw InvalidArgument("risk column " + std::to_string(k) + " out of range");
  }
  const auto& m = prep.loss_matrix;
  Vector<Scalar> r(m.rows() + 1);
  r(0) = Scalar(0);
  for (Index j = 0; j < m.rows(); ++j) r(j + 1) = r(j) + (m(j, k) - m(j, k + 1));
  return r;
}

/// Block decomposition of the N+1 risk rows used by the block-parallel solver.
struct PioPlan {
  Index total;        // N + 1
  Index length;       // L
  Index blocks;       // ceil(total / L)
  Index full_blocks;  // floor(total / L)
  Index remainder;    // total - L * full_blocks

  Index block_start(Index l) const { return l * length; }
  Index block_size(Index l) const { return l < full_blocks ? length : remainder; }
};

/// ceil(sqrt(N + 1)).
inline Index default_block_length(Index total) {
  auto root = Index(std::sqrt(double(total)));
  while (root * root < total) ++root;
  while (root > 1 && (root - 1) * (root - 1) >= total) --root;
  return std::max<Index>(root, 1);
}

inline PioPlan make_pio_plan(Index total, Index length) {
  if (length < 1) throw InvalidArgument("block length must be >= 1");
  if (total < 1) throw InvalidArgument("risk table must have at least one row");
  const Index full = total / length;
  return PioPlan{total, length, (total + length - 1) / length, full, total - length * full};
}

namespace detail {

template <typename Scalar>
SolveReport<Scalar> apply_order_policy(const PreparedProblem<Scalar>& prep,
                                       std::vector<Index> indices, Algorithm algorithm,
                                       OrderPolicy policy) {
  auto report = make_report(prep, std::move(indices), algorithm);
  if (report.order_ok) {
    report.optimal_claimed = true;
    return report;
  }
  switch (policy) {
    case OrderPolicy::Error: {
      std::string where;
      for (std::size_t k = 1; k < report.chosen_indices.size(); ++k) {
        if (report.chosen_indices[k - 1] > report.chosen_indices[k]) {
          where = "t_" + std::to_string(k) + " > t_" + std::to_string(k + 1);
          break;
        }
      }
      throw OrderViolated("independent thresholds are not nondecreasing (" + where + ")");
    }
    case OrderPolicy::ReturnRaw:
      report.optimal_claimed = false;
      return report;
    case OrderPolicy::FallbackDp: {
      auto dp = solve_dp(prep);
      dp.algorithm = algorithm;
      dp.fallback_used = true;
      return dp;
    }
  }
  return report;
}

}  // namespace detail

/// Independent per-threshold minimization. Each of the K-1 columns is a prefix
/// sum followed by a first-argmin; columns run in parallel with no
/// communication. The result is optimal whenever it comes out nondecreasing,
/// which a loss convex in the prediction guarantees.
template <typename Scalar>
SolveReport<Scalar> solve_io(const PreparedProblem<Scalar>& prep, int workers = 0,
                             OrderPolicy policy = OrderPolicy::FallbackDp) {
  const auto start = std::chrono::steady_clock::now();
  const auto& m = prep.loss_matrix;
  const Index rows = m.rows();
  const Index columns = prep.classes() - 1;
  std::vector<Index> indices(columns, 0);

  parallel_for(columns, resolve_workers(workers), [&](Index begin, Index end) {
    for (Index k = begin; k < end; ++k) {
      const Scalar* lower = m.col(k).data();
      const Scalar* upper = m.col(k + 1).data();
      Scalar r(0);
      Scalar best(0);
      Index arg = 0;
      for (Index j = 0; j < rows; ++j) {
        r = r + (lower[j] - upper[j]);
        if (r < best) {
          best = r;
          arg = j + 1;
        }
      }
      indices[k] = arg;
    }
  });

  auto report = detail::apply_order_policy(prep, std::move(indices), Algorithm::Io, policy);
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

/// IO with each column's prefix sum split into blocks: block totals first,
/// then per-block offsets, then each block rescans its local prefix shifted by
/// its offset and keeps its first argmin; the block minima are reduced in
/// block order. Parallel over (column, block) pairs. `block_length` <= 0
/// selects ceil(sqrt(N + 1)).
template <typename Scalar>
SolveReport<Scalar> solve_pio(const PreparedProblem<Scalar>& prep, Index block_length = 0,
                              int workers = 0, OrderPolicy policy = OrderPolicy::FallbackDp) {
  const auto start = std::chrono::steady_clock::now();
  const auto& m = prep.loss_matrix;
  const Index rows = m.rows();
  const Index total = rows + 1;
  const Index columns = prep.classes() - 1;
  const PioPlan plan =
      make_pio_plan(total, block_length > 0 ? block_length : default_block_length(total));

  // Row j of a column is the sum of steps 0..j-1, step j being
  // m(j, k) - m(j, k + 1).
  Matrix<Scalar> sums(plan.blocks, columns);
  Matrix<Scalar> best(plan.blocks, columns);
  Matrix<Index> where(plan.blocks, columns);
  std::vector<Index> indices(columns, 0);

  // A block total includes the step out of its last row.
  auto block_totals = [&](Index begin, Index end) {
    for (Index task = begin; task < end; ++task) {
      const Index k = task / plan.blocks;
      const Index l = task % plan.blocks;
      const Index first = plan.block_start(l);
      const Index last = std::min(first + plan.block_size(l), rows);
      const Scalar* lower = m.col(k).data();
      const Scalar* upper = m.col(k + 1).data();
      Scalar q(0);
      for (Index j = first; j < last; ++j) q = q + (lower[j] - upper[j]);
      sums(l, k) = q;
    }
  };

  // Exclusive running sum, in place.
  auto block_offsets = [&](Index begin, Index end) {
    for (Index k = begin; k < end; ++k) {
      Scalar s(0);
      for (Index l = 0; l < plan.blocks; ++l) {
        const Scalar t = sums(l, k);
        sums(l, k) = s;
        s = s + t;
      }
    }
  };

  auto block_argmin = [&](Index begin, Index end) {
    for (Index task = begin; task < end; ++task) {
      const Index k = task / plan.blocks;
      const Index l = task % plan.blocks;
      const Index first = plan.block_start(l);
      const Index stop = first + plan.block_size(l);
      const Scalar* lower = m.col(k).data();
      const Scalar* upper = m.col(k + 1).data();
      const Scalar offset = sums(l, k);
      Scalar q(0);
      Scalar low = offset + q;
      Index arg = first;
      for (Index j = first + 1; j < stop; ++j) {
        q = q + (lower[j - 1] - upper[j - 1]);
        const Scalar value = offset + q;
        if (value < low) {
          low = value;
          arg = j;
        }
      }
      best(l, k) = low;
      where(l, k) = arg;
    }
  };

  auto reduce = [&](Index begin, Index end) {
    for (Index k = begin; k < end; ++k) {
      Index pick = 0;
      for (Index l = 1; l < plan.blocks; ++l) {
        if (best(l, k) < best(pick, k)) pick = l;
      }
      indices[k] = where(pick, k);
    }
  };

  const Index pair_tasks = columns * plan.blocks;
  const int threads = int(std::min<Index>(resolve_workers(workers), std::max<Index>(pair_tasks, 1)));
  run_phases(threads, {Phase{pair_tasks, block_totals}, Phase{columns, block_offsets},
                       Phase{pair_tasks, block_argmin}, Phase{columns, reduce}});

  auto report = detail::apply_order_policy(prep, std::move(indices), Algorithm::Pio, policy);
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace otl
