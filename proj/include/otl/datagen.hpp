#pragma once

#include "otl/common.hpp"
#include "otl/labeling.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace otl {

/// Name of the pseudo-random engine behind every generator. std::mt19937_64
/// is fully specified by the standard; the distributions below are
/// implemented here rather than taken from <random>, whose distributions are
/// implementation-defined.
inline constexpr std::string_view kGeneratorName = "mt19937_64";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Box-Muller, one draw per call.
  double normal(double mean, double stddev);
  /// Uniform integer in [0, bound), rejection-sampled.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) std::swap(values[i - 1], values[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct ScoreDistribution {
  enum class Kind { Uniform, Normal };
  Kind kind = Kind::Uniform;
  double a = -5.0;  // uniform lower bound, or normal mean
  double b = 5.0;   // uniform upper bound, or normal stddev

  static ScoreDistribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
  static ScoreDistribution normal(double mean, double stddev) { return {Kind::Normal, mean, stddev}; }
};

/// Ordinal logistic regression: P(Y <= y | a) = sigmoid(b_y - a).
struct OlrParams {
  Index classes = 3;
  std::vector<double> biases;  // K-1 nondecreasing cut points
  ScoreDistribution scores;
  std::uint64_t seed = 0;

  /// Checks K >= 2, |biases| = K-1, finite nondecreasing biases and a valid
  /// score distribution. Throws InvalidArgument.
  void validate() const;

  /// K-1 biases spaced evenly over [lo, hi].
  static std::vector<double> even_biases(Index classes, double lo, double hi);
};

double sigmoid(double u);

Vector<double> olr_class_probs(double score, const OlrParams& params);

std::vector<Sample<double>> gen_olr(Index n, const OlrParams& params);

/// Tie-heavy instances. `duplicate_fraction` sets the number of distinct
/// scores (0 gives N = n, 1 gives N = 1); 30% of labels are noise and the
/// output order is shuffled.
std::vector<Sample<double>> gen_adversarial(Index n, Index classes, double duplicate_fraction,
                                            std::uint64_t seed);

}  // namespace otl
