#pragma once

#include "otl/common.hpp"
#include "otl/losses.hpp"
#include "otl/solve_report.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace otl {

/// Solvers disagreed on the optimal risk of a bench cell.
class RiskMismatch : public Error {
 public:
  using Error::Error;
};

struct BenchConfig {
  std::vector<Index> n_list{1000};
  std::vector<Index> k_list{10};
  std::vector<int> workers{1};
  std::vector<Index> block_lengths{0};  // 0: ceil(sqrt(N + 1))
  int repetitions = 5;
  int warmup = 1;
  std::uint64_t seed = 1;
  LossFamily loss = LossFamily::Absolute;

  void validate() const;
};

struct BenchRow {
  Index unique_count;  // N
  Index n;
  Index classes;       // K
  Algorithm algorithm;
  int workers;
  Index block_length;  // 0 unless pio
  double median_ms;
  double min_ms;
  double mean_ms;
  double risk_sum;
  double ratio_to_dp;  // median / median(dp) of the same cell
  double prepare_ms;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;
};

/// Synthetic OLR instance used by the benchmarks: n uniform scores on
/// [-10, 10] (so N = n almost surely) and evenly spaced biases.
std::vector<Sample<double>> bench_instance(Index n, Index classes, std::uint64_t seed);

/// Times dp, io and pio (per worker count and block length) on one seeded
/// instance per (N, K) cell. Only the solver call is timed; the preparation
/// step gets its own column. Throws RiskMismatch if any run disagrees with dp.
BenchReport run_bench(const BenchConfig& config);

struct ScalingPoint {
  Index unique_count;
  double dp_median_ms;
};

std::vector<ScalingPoint> scaling_probe(const std::vector<Index>& n_list, Index classes,
                                        int repetitions = 5, std::uint64_t seed = 1,
                                        LossFamily loss = LossFamily::Absolute);

void write_bench_csv(std::ostream& out, const BenchReport& report);
nlohmann::json bench_json(const BenchReport& report);

double median(std::vector<double> values);

}  // namespace otl
