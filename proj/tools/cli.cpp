#include "cli.hpp"

#include "otl/bench.hpp"
#include "otl/datagen.hpp"
#include "otl/formats.hpp"
#include "otl/otl.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace otl::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Writes to the file at `path`, or to `fallback` when the path is empty.
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw ParseError("cannot write '" + path + "'");
  write(file);
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

/// --loss accepts zo | abs | sq (or their long names) | file:<path>.
LossSpec<double> resolve_loss(const std::string& flag, std::optional<Index> classes,
                              Index observed_max) {
  if (flag.rfind("file:", 0) == 0) {
    auto loss = read_loss_csv(std::filesystem::path(flag.substr(5)));
    if (classes && *classes != loss.classes()) {
      throw UsageError("--classes " + std::to_string(*classes) + " does not match the " +
                       std::to_string(loss.classes()) + "x" + std::to_string(loss.classes()) +
                       " loss file");
    }
    return loss;
  }
  LossFamily family;
  try {
    family = parse_loss_family(flag);
  } catch (const InvalidLoss& e) {
    throw UsageError(e.what());
  }
  if (family == LossFamily::Custom) throw UsageError("use --loss file:<path> for custom losses");
  const Index k = classes.value_or(observed_max);
  if (k < 2) throw UsageError("need at least 2 classes; pass --classes");
  return LossSpec<double>::build(family, k);
}

int cmd_solve(const std::string& input, const std::string& output, const std::string& loss_flag,
              std::optional<Index> classes, const SolveOptions& options, std::ostream& out) {
  const auto samples = read_samples(std::filesystem::path(input));
  if (samples.empty()) throw ParseError("'" + input + "' contains no samples");
  int max_label = 0;
  for (const auto& s : samples) max_label = std::max(max_label, s.label);

  const auto loss = resolve_loss(loss_flag, classes, max_label);
  if (max_label > loss.classes()) {
    throw ParseError("label " + std::to_string(max_label) + " exceeds K = " +
                     std::to_string(loss.classes()));
  }
  const auto prep = prepare(samples, loss, options.workers);
  const auto report = solve(prep, options);
  with_output(output, out, [&](std::ostream& os) { os << solve_output_json(report, prep).dump(2) << '\n'; });
  return kOk;
}

int cmd_label(const std::string& thresholds_path, const std::string& input,
              const std::string& output, std::ostream& out) {
  auto tin = open_file(thresholds_path);
  const auto thresholds = read_thresholds(tin);
  std::vector<double> scores;
  if (input.empty() || input == "-") {
    scores = read_scores(std::cin);
  } else {
    auto sin = open_file(input);
    scores = read_scores(sin);
  }
  with_output(output, out, [&](std::ostream& os) {
    for (double u : scores) os << threshold_label(u, thresholds) << '\n';
  });
  return kOk;
}

int cmd_check_loss(const std::string& loss_flag, std::optional<Index> classes, std::ostream& out) {
  if (loss_flag.rfind("file:", 0) != 0 && !classes) throw UsageError("--classes is required for built-in losses");
  const auto loss = resolve_loss(loss_flag, classes, 0);
  const bool convex = is_convex_loss(loss);
  out << (convex ? "convex" : "not convex") << ": " << loss.name() << " loss, K = " << loss.classes()
      << (convex ? " (independent thresholds are guaranteed ordered)\n"
                 : " (independent thresholds may violate the order condition)\n");
  return convex ? kOk : kNonConvex;
}

struct GenFlags {
  std::string model = "olr";
  Index n = 0;
  Index classes = 0;
  std::uint64_t seed = 0;
  std::vector<double> biases;
  std::string score_dist = "uniform";
  double score_a = -5.0;
  double score_b = 5.0;
  double duplicate_fraction = 0.5;
  std::string output;
};

int cmd_gen(const GenFlags& f, std::ostream& out) {
  if (f.classes < 2) throw UsageError("--classes must be >= 2");
  if (f.n < 1) throw UsageError("--n must be >= 1");

  std::vector<Sample<double>> samples;
  std::ostringstream meta;
  meta << "generator=" << kGeneratorName << " model=" << f.model << " seed=" << f.seed
       << " n=" << f.n << " classes=" << f.classes;
  if (f.model == "olr") {
    OlrParams params;
    params.classes = f.classes;
    params.biases = f.biases.empty() ? OlrParams::even_biases(f.classes, -4.0, 4.0) : f.biases;
    if (f.score_dist == "uniform") {
      params.scores = ScoreDistribution::uniform(f.score_a, f.score_b);
    } else if (f.score_dist == "normal") {
      params.scores = ScoreDistribution::normal(f.score_a, f.score_b);
    } else {
      throw UsageError("--score-dist must be uniform or normal");
    }
    params.seed = f.seed;
    try {
      params.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    samples = gen_olr(f.n, params);
    meta << " score_dist=" << f.score_dist;
  } else if (f.model == "adversarial") {
    if (!(f.duplicate_fraction >= 0.0 && f.duplicate_fraction <= 1.0)) {
      throw UsageError("--duplicate-fraction must lie in [0, 1]");
    }
    samples = gen_adversarial(f.n, f.classes, f.duplicate_fraction, f.seed);
    meta << " duplicate_fraction=" << format_number(f.duplicate_fraction);
  } else {
    throw UsageError("--model must be olr or adversarial");
  }
  with_output(f.output, out, [&](std::ostream& os) { write_samples(os, samples, meta.str()); });
  return kOk;
}

int cmd_bench(const BenchConfig& config, const std::string& csv, const std::string& json,
              std::ostream& out) {
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const auto report = run_bench(config);
  if (!csv.empty()) with_output(csv, out, [&](std::ostream& os) { write_bench_csv(os, report); });
  if (!json.empty()) with_output(json, out, [&](std::ostream& os) { os << bench_json(report).dump(2) << '\n'; });
  if (csv.empty() && json.empty()) write_bench_csv(out, report);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal threshold labeling for ordinal regression", "otl"};
  app.require_subcommand(1);

  // solve
  std::string input, output, loss_flag = "abs", algo = "dp", policy = "fallback_dp";
  Index classes_value = 0;
  Index block_size = 0;
  int workers = 0;
  double brute_cap = kDefaultBruteCap;
  auto* solve_cmd = app.add_subcommand("solve", "Optimal thresholds for a CSV of score,label samples");
  solve_cmd->add_option("--input", input, "Sample CSV (score,label)")->required();
  solve_cmd->add_option("--output", output, "JSON output path (default stdout)");
  solve_cmd->add_option("--loss", loss_flag, "zo | abs | sq | file:<path>")->capture_default_str();
  auto* solve_classes = solve_cmd->add_option("--classes", classes_value, "Class count K (default: max label)");
  solve_cmd->add_option("--algo", algo, "dp | io | pio | brute")->capture_default_str();
  solve_cmd->add_option("--block-size", block_size, "PIO block length (0: ceil(sqrt(N+1)))");
  solve_cmd->add_option("--workers", workers, "Worker threads (0: hardware concurrency)");
  solve_cmd->add_option("--policy", policy, "error | fallback_dp | return_raw")->capture_default_str();
  solve_cmd->add_option("--brute-cap", brute_cap, "Maximum tuples for --algo brute");

  // label
  std::string thresholds_path, label_input, label_output;
  auto* label_cmd = app.add_subcommand("label", "Label scores with a threshold vector");
  label_cmd->add_option("--thresholds", thresholds_path, "Solve JSON or CSV of thresholds")->required();
  label_cmd->add_option("--input", label_input, "Score CSV (first column; default stdin)");
  label_cmd->add_option("--output", label_output, "Label output path (default stdout)");

  // check-loss
  std::string check_loss_flag;
  Index check_classes_value = 0;
  auto* check_cmd = app.add_subcommand("check-loss", "Test a loss for convexity in the prediction");
  check_cmd->add_option("--loss", check_loss_flag, "zo | abs | sq | file:<path>")->required();
  auto* check_classes = check_cmd->add_option("--classes", check_classes_value, "Class count K");

  // gen
  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate synthetic samples");
  gen_cmd->add_option("--model", gen.model, "olr | adversarial")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Sample count")->required();
  gen_cmd->add_option("--classes", gen.classes, "Class count K")->required();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--biases", gen.biases, "OLR biases, nondecreasing")->delimiter(',');
  gen_cmd->add_option("--score-dist", gen.score_dist, "uniform | normal")->capture_default_str();
  gen_cmd->add_option("--score-a", gen.score_a, "Uniform lower bound or normal mean")->capture_default_str();
  gen_cmd->add_option("--score-b", gen.score_b, "Uniform upper bound or normal stddev")->capture_default_str();
  gen_cmd->add_option("--duplicate-fraction", gen.duplicate_fraction, "Adversarial tie fraction")
      ->capture_default_str();
  gen_cmd->add_option("--output", gen.output, "CSV output path (default stdout)");

  // bench
  BenchConfig bench;
  std::string bench_loss = "abs", csv_path, json_path;
  auto* bench_cmd = app.add_subcommand("bench", "Time dp, io and pio on synthetic instances");
  bench_cmd->add_option("--n-list", bench.n_list, "Sample counts")->delimiter(',');
  bench_cmd->add_option("--k-list", bench.k_list, "Class counts")->delimiter(',');
  bench_cmd->add_option("--workers", bench.workers, "Worker counts")->delimiter(',');
  bench_cmd->add_option("--block-size", bench.block_lengths, "PIO block lengths (0: auto)")->delimiter(',');
  bench_cmd->add_option("--reps", bench.repetitions, "Timed repetitions (>= 3)")->capture_default_str();
  bench_cmd->add_option("--warmup", bench.warmup, "Untimed warmup runs")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Instance seed")->capture_default_str();
  bench_cmd->add_option("--loss", bench_loss, "zo | abs | sq")->capture_default_str();
  bench_cmd->add_option("--csv", csv_path, "CSV report path");
  bench_cmd->add_option("--json", json_path, "JSON report path");

  std::vector<const char*> argv{"otl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), const_cast<char**>(argv.data()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      SolveOptions options;
      try {
        options.algorithm = parse_algorithm(algo);
        options.policy = parse_order_policy(policy);
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
      if (block_size < 0) throw UsageError("--block-size must be >= 0");
      options.block_length = block_size;
      options.workers = workers;
      options.brute_cap = brute_cap;
      std::optional<Index> classes;
      if (solve_classes->count() > 0) classes = classes_value;
      return cmd_solve(input, output, loss_flag, classes, options, out);
    }
    if (label_cmd->parsed()) return cmd_label(thresholds_path, label_input, label_output, out);
    if (check_cmd->parsed()) {
      std::optional<Index> classes;
      if (check_classes->count() > 0) classes = check_classes_value;
      return cmd_check_loss(check_loss_flag, classes, out);
    }
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (bench_cmd->parsed()) {
      try {
        bench.loss = parse_loss_family(bench_loss);
      } catch (const InvalidLoss& e) {
        throw UsageError(e.what());
      }
      return cmd_bench(bench, csv_path, json_path, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const OrderViolated& e) {
    err << "order violated: " << e.what() << '\n';
    return kOrderViolated;
  } catch (const InstanceTooLarge& e) {
    err << "instance too large: " << e.what() << '\n';
    return kInstanceTooLarge;
  } catch (const RiskMismatch& e) {
    err << "risk mismatch: " << e.what() << '\n';
    return kRiskMismatch;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidArgument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace otl::cli
