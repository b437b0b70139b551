#pragma once

#include "otl/solve_report.hpp"

#include <chrono>
#include <limits>
#include <sstream>
#include <vector>

namespace otl {

inline constexpr double kDefaultBruteCap = 5e6;

/// Number of nondecreasing (K-1)-tuples over N+1 candidates, C(N+K-1, K-1),
/// as a double so that huge instances compare against the cap without overflow.
inline double nondecreasing_tuple_count(Index candidates, Index picks) {
  double count = 1.0;
  for (Index i = 1; i <= picks; ++i) count = count * double(candidates - 1 + i) / double(i);
  return count;
}

namespace detail {

template <typename Scalar>
class BruteSearch {
 public:
  explicit BruteSearch(const PreparedProblem<Scalar>& prep)
      : rows_(prep.unique_count()), classes_(prep.classes()), prefix_(rows_ + 1, classes_),
        current_(classes_ - 1, 0), best_(classes_ - 1, 0) {
    for (Index c = 0; c < classes_; ++c) {
      prefix_(0, c) = Scalar(0);
      for (Index j = 0; j < rows_; ++j) prefix_(j + 1, c) = prefix_(j, c) + prep.loss_matrix(j, c);
    }
  }

  std::vector<Index> run() {
    visit(0, 0, Scalar(0));
    return best_;
  }

 private:
  // Class `k` covers unique scores [lower, current_[k]).
  void visit(Index k, Index lower, Scalar partial) {
    if (k == classes_ - 1) {
      const Scalar total = partial + (prefix_(rows_, k) - prefix_(lower, k));
      if (total < best_value_) {
        best_value_ = total;
        best_ = current_;
      }
      return;
    }
    for (Index i = lower; i <= rows_; ++i) {
      current_[k] = i;
      visit(k + 1, i, partial + (prefix_(i, k) - prefix_(lower, k)));
    }
  }

  Index rows_;
  Index classes_;
  Matrix<Scalar> prefix_;
  std::vector<Index> current_;
  std::vector<Index> best_;
  Scalar best_value_ = std::numeric_limits<Scalar>::infinity();
};

}  // namespace detail

/// Exhaustive search over every nondecreasing candidate-index tuple. Returns
/// the lexicographically smallest minimizer. Test oracle; exponential in K.
template <typename Scalar>
SolveReport<Scalar> solve_brute(const PreparedProblem<Scalar>& prep,
                                double cap = kDefaultBruteCap) {
  const double count = nondecreasing_tuple_count(prep.candidates.size(), prep.classes() - 1);
  if (count > cap) {
    std::ostringstream msg;
    msg << "brute force needs " << count << " tuples, cap is " << cap;
    throw InstanceTooLarge(msg.str());
  }
  const auto start = std::chrono::steady_clock::now();
  auto report = detail::make_report(prep, detail::BruteSearch<Scalar>(prep).run(), Algorithm::Brute);
  report.order_ok = true;
  report.optimal_claimed = true;
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace otl
