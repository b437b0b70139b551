#pragma once

#include "otl/brute.hpp"
#include "otl/dp.hpp"
#include "otl/independent.hpp"
#include "otl/solve_report.hpp"

namespace otl {

struct SolveOptions {
  Algorithm algorithm = Algorithm::Dp;
  int workers = 0;            // <= 0: hardware concurrency
  Index block_length = 0;     // pio only; <= 0: ceil(sqrt(N + 1))
  OrderPolicy policy = OrderPolicy::FallbackDp;
  double brute_cap = kDefaultBruteCap;
};

template <typename Scalar>
SolveReport<Scalar> solve(const PreparedProblem<Scalar>& prep, const SolveOptions& options = {}) {
  switch (options.algorithm) {
    case Algorithm::Dp: return solve_dp(prep);
    case Algorithm::Io: return solve_io(prep, options.workers, options.policy);
    case Algorithm::Pio:
      return solve_pio(prep, options.block_length, options.workers, options.policy);
    case Algorithm::Brute: return solve_brute(prep, options.brute_cap);
  }
  return solve_dp(prep);
}

}  // namespace otl
