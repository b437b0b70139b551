#pragma once

#include "otl/common.hpp"
#include "otl/labeling.hpp"
#include "otl/prepare.hpp"

#include <algorithm>
#include <chrono>
#include <span>
#include <string_view>
#include <vector>

namespace otl {

enum class Algorithm { Dp, Io, Pio, Brute };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Dp: return "dp";
    case Algorithm::Io: return "io";
    case Algorithm::Pio: return "pio";
    case Algorithm::Brute: return "brute";
  }
  return "dp";
}

inline Algorithm parse_algorithm(std::string_view name) {
  if (name == "dp") return Algorithm::Dp;
  if (name == "io") return Algorithm::Io;
  if (name == "pio") return Algorithm::Pio;
  if (name == "brute") return Algorithm::Brute;
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

/// What IO/PIO do when their raw thresholds are not nondecreasing.
enum class OrderPolicy { Error, FallbackDp, ReturnRaw };

inline std::string_view to_string(OrderPolicy p) {
  switch (p) {
    case OrderPolicy::Error: return "error";
    case OrderPolicy::FallbackDp: return "fallback_dp";
    case OrderPolicy::ReturnRaw: return "return_raw";
  }
  return "fallback_dp";
}

inline OrderPolicy parse_order_policy(std::string_view name) {
  if (name == "error") return OrderPolicy::Error;
  if (name == "fallback_dp" || name == "fallback") return OrderPolicy::FallbackDp;
  if (name == "return_raw" || name == "raw") return OrderPolicy::ReturnRaw;
  throw InvalidArgument("unknown order policy '" + std::string(name) + "'");
}

/// Result of one solver call. `chosen_indices` are 0-based positions into
/// `PreparedProblem::candidates`, and thresholds[k] == candidates[chosen_indices[k]].
template <typename Scalar = double>
struct SolveReport {
  ThresholdVector<Scalar> thresholds;
  std::vector<Index> chosen_indices;
  Scalar risk_sum{};
  Scalar risk_mean{};
  Algorithm algorithm = Algorithm::Dp;
  bool order_ok = false;
  bool optimal_claimed = false;
  bool fallback_used = false;
  std::chrono::nanoseconds wall_time{0};
};

namespace detail {

/// n-scaled risk of the candidate-index tuple, in any order. Unique score j
/// gets label 1 + #{k : idx_k <= j} because c_j <= score_j < c_{j+1}; summed
/// in ascending j.
template <typename Scalar>
Scalar risk_of_indices(const PreparedProblem<Scalar>& prep, std::span<const Index> indices) {
  std::vector<Index> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  const Index rows = prep.unique_count();
  Scalar sum(0);
  Index passed = 0;
  for (Index j = 0; j < rows; ++j) {
    while (passed < Index(sorted.size()) && sorted[passed] <= j) ++passed;
    sum += prep.loss_matrix(j, passed);
  }
  return sum;
}

template <typename Scalar>
SolveReport<Scalar> make_report(const PreparedProblem<Scalar>& prep, std::vector<Index> indices,
                                Algorithm algorithm) {
  Vector<Scalar> values(Index(indices.size()));
  for (Index k = 0; k < values.size(); ++k) values(k) = prep.candidates(indices[k]);
  SolveReport<Scalar> report;
  report.thresholds = ThresholdVector<Scalar>(std::move(values));
  report.risk_sum = risk_of_indices<Scalar>(prep, indices);
  report.risk_mean = report.risk_sum / Scalar(prep.n);
  report.chosen_indices = std::move(indices);
  report.algorithm = algorithm;
  report.order_ok = std::is_sorted(report.chosen_indices.begin(), report.chosen_indices.end());
  return report;
}

inline void check_index_range(std::span<const Index> indices, Index candidate_count,
                              Index expected_size) {
  if (Index(indices.size()) != expected_size) {
    throw InvalidArgument("expected " + std::to_string(expected_size) + " indices, got " +
                          std::to_string(indices.size()));
  }
  for (Index i : indices) {
    if (i < 0 || i >= candidate_count) {
      throw InvalidArgument("candidate index " + std::to_string(i) + " out of range");
    }
  }
}

}  // namespace detail

/// n-scaled empirical risk of thresholds (candidates[indices[k]]). Indices are
/// 0-based and must be nondecreasing.
template <typename Scalar>
Scalar risk_from_indices(const PreparedProblem<Scalar>& prep, std::span<const Index> indices) {
  detail::check_index_range(indices, prep.candidates.size(), prep.classes() - 1);
  if (!std::is_sorted(indices.begin(), indices.end())) {
    throw InvalidArgument("candidate indices must be nondecreasing");
  }
  return detail::risk_of_indices(prep, indices);
}

template <typename Scalar>
Scalar risk_from_indices(const PreparedProblem<Scalar>& prep, const std::vector<Index>& indices) {
  return risk_from_indices(prep, std::span<const Index>(indices));
}

}  // namespace otl
