// Acceptance suite: one PASS/FAIL line per exit criterion. Exit status is
// nonzero if any criterion fails.

#include "otl/bench.hpp"
#include "otl/datagen.hpp"
#include "otl/formats.hpp"
#include "otl/otl.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

using namespace otl;
using testing::S;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass;
  std::string detail;
};

struct Instance {
  std::vector<S> samples;
  LossSpec<double> loss;
  std::string loss_name;
};

/// The small random family shared by the oracle and order criteria:
/// n in [1, 40], K in {2..6}, losses cycling abs, sq, zo, random convex.
std::vector<Instance> small_family(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Index k = 2 + Index(rng.below(5));
    const Index n = 1 + Index(rng.below(40));
    const int levels = 2 + int(rng.below(40));
    auto samples = i % 2 ? testing::random_samples(rng, n, k, levels)
                         : testing::random_ordinal_samples(rng, n, k, levels);
    switch (i % 4) {
      case 0: out.push_back({std::move(samples), build_loss("abs", k), "abs"}); break;
      case 1: out.push_back({std::move(samples), build_loss("sq", k), "sq"}); break;
      case 2: out.push_back({std::move(samples), build_loss("zo", k), "zo"}); break;
      default:
        out.push_back({std::move(samples), testing::random_convex_integer_loss(rng, k), "convex"});
        break;
    }
  }
  return out;
}

/// n-scaled two-class risk: sum of loss(k + [score >= thresh], y).
double two_class_sum(const std::vector<S>& samples, int k, double thresh, const LossSpec<double>& loss) {
  double sum = 0;
  for (const auto& s : samples) sum += loss(k + (s.score >= thresh ? 1 : 0), s.label);
  return sum;
}

bool same(double a, double b, bool exact) { return exact ? a == b : testing::close_rel(a, b); }

Outcome oracle_optimality() {
  const auto start = std::chrono::steady_clock::now();
  const auto family = small_family(600, 2024);
  std::size_t agree = 0;
  for (const auto& inst : family) {
    const auto prep = prepare(inst.samples, inst.loss);
    if (solve_dp(prep).risk_sum == solve_brute(prep).risk_sum) ++agree;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << agree << "/" << family.size() << " instances dp == brute, " << secs << " s (limit 60 s)";
  return {agree == family.size() && secs < 60.0, d.str()};
}

Outcome convex_order_guarantee() {
  const auto family = small_family(600, 2024);
  std::size_t convex = 0, ordered = 0, optimal = 0;
  for (const auto& inst : family) {
    if (!is_convex_loss(inst.loss)) continue;
    ++convex;
    const auto prep = prepare(inst.samples, inst.loss);
    const auto io = solve_io(prep, 2, OrderPolicy::ReturnRaw);
    if (io.order_ok && io.thresholds.is_nondecreasing()) ++ordered;
    if (io.risk_sum == solve_brute(prep).risk_sum) ++optimal;
  }
  std::ostringstream d;
  d << convex << " convex instances: " << ordered << " ordered, " << optimal << " optimal";
  return {convex >= 400 && ordered == convex && optimal == convex, d.str()};
}

Outcome conditional_optimality() {
  const auto family = small_family(600, 2024);
  std::size_t ordered = 0, optimal = 0, unordered = 0;
  for (const auto& inst : family) {
    const auto prep = prepare(inst.samples, inst.loss);
    const auto io = solve_io(prep, 2, OrderPolicy::ReturnRaw);
    if (!io.order_ok) {
      ++unordered;
      continue;
    }
    ++ordered;
    if (io.risk_sum == solve_brute(prep).risk_sum) ++optimal;
  }

  const auto prep = prepare(std::vector<S>{{0, 2}, {1, 1}, {2, 1}}, build_loss("zo", 3));
  const auto raw = solve_io(prep, 1, OrderPolicy::ReturnRaw);
  const auto fallback = solve_io(prep, 1, OrderPolicy::FallbackDp);
  const bool regression = raw.thresholds == ThresholdVector<double>{kInf, 0.5} && !raw.order_ok &&
                          fallback.fallback_used && fallback.risk_sum == 1.0;

  std::ostringstream d;
  d << ordered << " ordered outputs, " << optimal << " optimal; " << unordered
    << " unordered (zero-one); regression instance raw=(" << format_threshold(raw.thresholds[0]) << ","
    << format_threshold(raw.thresholds[1]) << ") fallback risk " << fallback.risk_sum;
  return {ordered == optimal && regression, d.str()};
}

Outcome io_pio_equivalence() {
  Rng rng(77);
  std::size_t instances = 0, mismatches = 0, comparisons = 0;
  Index largest = 0;
  for (int i = 0; i < 220; ++i) {
    const Index k = 2 + Index(rng.below(9));
    // The first 20 have continuous scores, so N is the full 10^4.
    const Index n = i < 20 ? 10000 : 1 + Index(rng.below(i % 3 ? 300 : 10000));
    const int levels = 1 + int(rng.below(std::uint64_t(std::min<Index>(2 * n, 20000))));
    const auto samples = i < 20 ? bench_instance(n, k, rng.below(1u << 30))
                                : testing::random_ordinal_samples(rng, n, k, levels);
    LossSpec<double> loss = build_loss("abs", k);
    switch (i % 4) {
      case 1: loss = build_loss("sq", k); break;
      case 2: loss = build_loss("zo", k); break;
      case 3: loss = testing::random_integer_loss(rng, k); break;
      default: break;
    }
    const auto prep = prepare(samples, loss);
    const Index total = prep.unique_count() + 1;
    largest = std::max(largest, prep.unique_count());
    ++instances;
    for (int workers : {1, 4}) {
      const auto io = solve_io(prep, workers, OrderPolicy::ReturnRaw);
      for (Index length : {Index(1), Index(2), Index(3), default_block_length(total), total}) {
        const auto pio = solve_pio(prep, length, workers, OrderPolicy::ReturnRaw);
        ++comparisons;
        if (pio.chosen_indices != io.chosen_indices || pio.risk_sum != io.risk_sum) ++mismatches;
      }
    }
  }
  std::ostringstream d;
  d << instances << " instances (max N " << largest << "), " << comparisons << " comparisons, "
    << mismatches << " mismatches";
  return {instances >= 200 && largest >= 9000 && mismatches == 0, d.str()};
}

Outcome decomposition_identities() {
  Rng rng(99);
  std::size_t instances = 0, checks = 0, failures = 0;
  for (int i = 0; i < 120; ++i) {
    const Index k = 2 + Index(rng.below(6));
    const auto samples = testing::random_samples(rng, 1 + Index(rng.below(60)), k, 2 + int(rng.below(30)));
    const bool fractional = i % 3 == 2;
    const auto loss = fractional ? testing::random_fractional_loss(rng, k)
                                 : (i % 3 ? testing::random_integer_loss(rng, k) : build_loss("sq", k));
    const bool exact = !fractional;
    const auto prep = prepare(samples, loss);
    ++instances;

    // R_{j,k} = n (R_k(c_j) - R_k(c_1)) for every j and k.
    std::vector<Vector<double>> columns;
    for (int kk = 1; kk <= k - 1; ++kk) {
      columns.push_back(risk_column(prep, kk - 1));
      const double base = two_class_sum(samples, kk, prep.candidates(0), loss);
      for (Index j = 0; j < prep.candidates.size(); ++j) {
        ++checks;
        if (!same(columns.back()(j), two_class_sum(samples, kk, prep.candidates(j), loss) - base, exact)) ++failures;
      }
    }

    double constant = 0;
    for (int kk = 1; kk <= k - 1; ++kk) constant += two_class_sum(samples, kk, prep.candidates(0), loss);
    for (int kk = 2; kk <= k - 1; ++kk) constant -= two_class_sum(samples, kk, kInf, loss);

    for (int pick = 0; pick < 25; ++pick) {
      const auto idx = testing::random_nondecreasing_indices(rng, prep.candidates.size(), k - 1);
      Vector<double> t(k - 1);
      for (Index m = 0; m < k - 1; ++m) t(m) = prep.candidates(idx[m]);
      const double direct = empirical_risk<double>(samples, ThresholdVector<double>(t), loss).sum;

      // Risk as a sum of independent two-class risks.
      double decomposed = 0;
      for (int kk = 1; kk <= k - 1; ++kk) decomposed += two_class_sum(samples, kk, t(kk - 1), loss);
      for (int kk = 2; kk <= k - 1; ++kk) decomposed -= two_class_sum(samples, kk, kInf, loss);

      // Risk via the column table plus the index-free constant.
      double bridged = constant;
      for (Index m = 0; m < k - 1; ++m) bridged += columns[m](idx[m]);

      checks += 3;
      if (!same(direct, decomposed, exact)) ++failures;
      if (!same(direct, bridged, exact)) ++failures;
      if (!same(direct, risk_from_indices(prep, idx), exact)) ++failures;
    }
  }
  std::ostringstream d;
  d << instances << " instances, " << checks << " identity checks, " << failures << " failures";
  return {failures == 0, d.str()};
}

Outcome determinism() {
  Rng rng(5);
  std::size_t failures = 0;
  for (int i = 0; i < 50; ++i) {
    const Index k = 2 + Index(rng.below(5));
    const auto samples = i % 2 ? testing::random_samples(rng, 1 + Index(rng.below(40)), k, 20)
                               : gen_adversarial(1 + Index(rng.below(40)), k, rng.uniform(), rng.below(1000));
    const auto loss = i % 3 == 0 ? build_loss("zo", k) : testing::random_integer_loss(rng, k);
    const auto prep = prepare(samples, loss);
    const auto reference_dp = solve_dp(prep).chosen_indices;
    const auto reference_io = solve_io(prep, 1, OrderPolicy::ReturnRaw).chosen_indices;
    const auto reference_pio = solve_pio(prep, 0, 1, OrderPolicy::ReturnRaw).chosen_indices;
    const auto reference_brute = solve_brute(prep).chosen_indices;
    for (int run = 0; run < 5; ++run) {
      for (int workers : {1, 2, 4, 8}) {
        if (prepare(samples, loss, workers).loss_matrix != prep.loss_matrix) ++failures;
        if (solve_dp(prep).chosen_indices != reference_dp) ++failures;
        if (solve_io(prep, workers, OrderPolicy::ReturnRaw).chosen_indices != reference_io) ++failures;
        if (solve_pio(prep, 0, workers, OrderPolicy::ReturnRaw).chosen_indices != reference_pio) ++failures;
        if (solve_brute(prep).chosen_indices != reference_brute) ++failures;
      }
    }
  }
  return {failures == 0, "50 instances x 5 runs x workers {1,2,4,8}: " + std::to_string(failures) + " differences"};
}

Outcome performance(const std::string& report_prefix) {
  BenchConfig config;
  config.n_list = {100000};
  config.k_list = {50};
  config.workers = {1, 4};
  config.block_lengths = {0};
  config.repetitions = 10;
  config.warmup = 2;
  config.seed = 2024;
  config.loss = LossFamily::Absolute;
  const auto report = run_bench(config);

  std::ofstream csv(report_prefix + ".csv");
  write_bench_csv(csv, report);
  std::ofstream(report_prefix + ".json") << bench_json(report).dump(2) << '\n';

  double dp = 0, io1 = 0, pio4 = 0;
  Index unique = 0;
  for (const auto& r : report.rows) {
    unique = r.unique_count;
    if (r.algorithm == Algorithm::Dp) dp = r.median_ms;
    if (r.algorithm == Algorithm::Io && r.workers == 1) io1 = r.median_ms;
    if (r.algorithm == Algorithm::Pio && r.workers == 4) pio4 = r.median_ms;
  }
  const double pio_ratio = pio4 / dp;
  const double io_ratio = io1 / dp;
  std::ostringstream d;
  d << "N=" << unique << " K=50: t_DP=" << dp << " ms, t_IO(1)=" << io1 << " ms, t_PIO(4)=" << pio4
    << " ms; t_PIO/t_DP=" << pio_ratio << " (<= 0.8), t_IO/t_DP=" << io_ratio << " (in [0.5, 2.0]); "
    << std::thread::hardware_concurrency() << " hardware threads; report " << report_prefix << ".{csv,json}";
  return {unique >= 99990 && pio_ratio <= 0.8 && io_ratio >= 0.5 && io_ratio <= 2.0, d.str()};
}

Outcome dp_scaling() {
  const auto points = scaling_probe({100000, 200000}, 50, 10, 2024);
  const double ratio = points[1].dp_median_ms / points[0].dp_median_ms;
  std::ostringstream d;
  d << "N " << points[0].unique_count << " -> " << points[1].unique_count << " at K=50: " << points[0].dp_median_ms
    << " ms -> " << points[1].dp_median_ms << " ms, ratio " << ratio << " (in [1.2, 3.0])";
  return {ratio >= 1.2 && ratio <= 3.0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string report_prefix = argc > 1 ? argv[1] : "acceptance_bench";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle-optimality", oracle_optimality},
      {"convex-order-guarantee", convex_order_guarantee},
      {"conditional-optimality", conditional_optimality},
      {"io-pio-equivalence", io_pio_equivalence},
      {"decomposition-identities", decomposition_identities},
      {"determinism", determinism},
      {"performance", [&] { return performance(report_prefix); }},
      {"dp-scaling", dp_scaling},
  };

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
