#include "otl/bench.hpp"

#include "otl/datagen.hpp"
#include "otl/formats.hpp"
#include "otl/prepare.hpp"
#include "otl/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <sstream>

namespace otl {

namespace {

using Milliseconds = std::chrono::duration<double, std::milli>;

struct Timing {
  std::vector<double> ms;
  double risk_sum = 0;
};

template <typename Solver>
Timing time_solver(const BenchConfig& config, double expected_risk, bool check, const char* label,
                   Solver&& run) {
  for (int w = 0; w < config.warmup; ++w) run();
  Timing t;
  for (int r = 0; r < config.repetitions; ++r) {
    const auto report = run();
    t.ms.push_back(Milliseconds(report.wall_time).count());
    t.risk_sum = report.risk_sum;
    if (check && report.risk_sum != expected_risk) {
      std::ostringstream msg;
      msg << label << " risk_sum " << report.risk_sum << " differs from dp risk_sum "
          << expected_risk;
      throw RiskMismatch(msg.str());
    }
  }
  return t;
}

}  // namespace

void BenchConfig::validate() const {
  if (n_list.empty() || k_list.empty() || workers.empty() || block_lengths.empty()) {
    throw InvalidArgument("bench lists must be nonempty");
  }
  if (repetitions < 3) throw InvalidArgument("bench needs at least 3 repetitions");
  if (warmup < 0) throw InvalidArgument("warmup count must be >= 0");
  if (loss == LossFamily::Custom) throw InvalidArgument("bench uses built-in loss families only");
  for (Index n : n_list) {
    if (n < 1) throw InvalidArgument("bench sample counts must be >= 1");
  }
  for (Index k : k_list) {
    if (k < 2) throw InvalidArgument("bench class counts must be >= 2");
  }
  for (int w : workers) {
    if (w < 1) throw InvalidArgument("bench worker counts must be >= 1");
  }
  for (Index l : block_lengths) {
    if (l < 0) throw InvalidArgument("bench block lengths must be >= 0");
  }
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<Sample<double>> bench_instance(Index n, Index classes, std::uint64_t seed) {
  OlrParams params;
  params.classes = classes;
  params.biases = OlrParams::even_biases(classes, -9.0, 9.0);
  params.scores = ScoreDistribution::uniform(-10.0, 10.0);
  params.seed = seed;
  return gen_olr(n, params);
}

BenchReport run_bench(const BenchConfig& config) {
  config.validate();
  BenchReport report{config, {}};

  for (Index n : config.n_list) {
    for (Index classes : config.k_list) {
      const auto samples = bench_instance(n, classes, config.seed);
      const auto loss = LossSpec<double>::build(config.loss, classes);

      const auto prep_start = std::chrono::steady_clock::now();
      const auto prep = prepare(samples, loss);
      const double prepare_ms = Milliseconds(std::chrono::steady_clock::now() - prep_start).count();

      auto row = [&](Algorithm a, int workers, Index block, const Timing& t) {
        return BenchRow{prep.unique_count(), prep.n, classes, a, workers, block,
                        median(t.ms), *std::min_element(t.ms.begin(), t.ms.end()),
                        std::accumulate(t.ms.begin(), t.ms.end(), 0.0) / double(t.ms.size()),
                        t.risk_sum, 0.0, prepare_ms};
      };

      std::vector<BenchRow> cell;
      const Timing dp = time_solver(config, 0, false, "dp", [&] { return solve_dp(prep); });
      cell.push_back(row(Algorithm::Dp, 1, 0, dp));

      for (int workers : config.workers) {
        const Timing io = time_solver(config, dp.risk_sum, true, "io",
                                      [&] { return solve_io(prep, workers); });
        cell.push_back(row(Algorithm::Io, workers, 0, io));
      }
      for (int workers : config.workers) {
        for (Index block : config.block_lengths) {
          const Index length = block > 0 ? block : default_block_length(prep.unique_count() + 1);
          const Timing pio = time_solver(config, dp.risk_sum, true, "pio",
                                         [&] { return solve_pio(prep, length, workers); });
          cell.push_back(row(Algorithm::Pio, workers, length, pio));
        }
      }

      const double dp_median = cell.front().median_ms;
      for (auto& r : cell) r.ratio_to_dp = dp_median > 0 ? r.median_ms / dp_median : 0.0;
      report.rows.insert(report.rows.end(), cell.begin(), cell.end());
    }
  }

  std::stable_sort(report.rows.begin(), report.rows.end(), [](const BenchRow& a, const BenchRow& b) {
    if (a.unique_count != b.unique_count) return a.unique_count < b.unique_count;
    if (a.classes != b.classes) return a.classes < b.classes;
    return int(a.algorithm) < int(b.algorithm);
  });
  return report;
}

std::vector<ScalingPoint> scaling_probe(const std::vector<Index>& n_list, Index classes,
                                        int repetitions, std::uint64_t seed, LossFamily loss) {
  if (n_list.empty()) throw InvalidArgument("scaling probe needs at least one N");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw InvalidArgument("scaling probe N list must be increasing");
  }
  if (repetitions < 1) throw InvalidArgument("scaling probe needs at least one repetition");

  const auto loss_spec = LossSpec<double>::build(loss, classes);
  std::vector<ScalingPoint> points;
  for (Index n : n_list) {
    const auto prep = prepare(bench_instance(n, classes, seed), loss_spec);
    solve_dp(prep);
    std::vector<double> ms;
    for (int r = 0; r < repetitions; ++r) ms.push_back(Milliseconds(solve_dp(prep).wall_time).count());
    points.push_back({prep.unique_count(), median(ms)});
  }
  return points;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "N,n,K,algorithm,workers,block_length,median_ms,min_ms,mean_ms,risk_sum,ratio_to_dp,"
         "prepare_ms\n";
  for (const auto& r : report.rows) {
    out << r.unique_count << ',' << r.n << ',' << r.classes << ',' << to_string(r.algorithm) << ','
        << r.workers << ',' << r.block_length << ',' << format_number(r.median_ms) << ','
        << format_number(r.min_ms) << ',' << format_number(r.mean_ms) << ','
        << format_number(r.risk_sum) << ',' << format_number(r.ratio_to_dp) << ','
        << format_number(r.prepare_ms) << '\n';
  }
}

nlohmann::json bench_json(const BenchReport& report) {
  const auto& c = report.config;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"N", r.unique_count},
                    {"n", r.n},
                    {"K", r.classes},
                    {"algorithm", std::string(to_string(r.algorithm))},
                    {"workers", r.workers},
                    {"block_length", r.block_length},
                    {"median_ms", r.median_ms},
                    {"min_ms", r.min_ms},
                    {"mean_ms", r.mean_ms},
                    {"risk_sum", r.risk_sum},
                    {"ratio_to_dp", r.ratio_to_dp},
                    {"prepare_ms", r.prepare_ms}});
  }
  return {{"generator", std::string(kGeneratorName)},
          {"seed", c.seed},
          {"loss", std::string(to_string(c.loss))},
          {"repetitions", c.repetitions},
          {"warmup", c.warmup},
          {"rows", rows}};
}

}  // namespace otl
