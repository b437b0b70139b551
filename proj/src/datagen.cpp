#include "otl/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace otl {

double Rng::normal(double mean, double stddev) {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

void OlrParams::validate() const {
  if (classes < 2) throw InvalidArgument("OLR needs at least 2 classes");
  if (Index(biases.size()) != classes - 1) {
    throw InvalidArgument("OLR needs " + std::to_string(classes - 1) + " biases, got " +
                          std::to_string(biases.size()));
  }
  for (std::size_t k = 0; k < biases.size(); ++k) {
    if (!std::isfinite(biases[k])) throw InvalidArgument("OLR bias is not finite");
    if (k > 0 && biases[k - 1] > biases[k]) throw InvalidArgument("OLR biases must be nondecreasing");
  }
  if (!std::isfinite(scores.a) || !std::isfinite(scores.b)) {
    throw InvalidArgument("score distribution parameters must be finite");
  }
  if (scores.kind == ScoreDistribution::Kind::Uniform && !(scores.a < scores.b)) {
    throw InvalidArgument("uniform score range needs lo < hi");
  }
  if (scores.kind == ScoreDistribution::Kind::Normal && !(scores.b > 0)) {
    throw InvalidArgument("normal score stddev must be positive");
  }
}

std::vector<double> OlrParams::even_biases(Index classes, double lo, double hi) {
  std::vector<double> b(std::max<Index>(classes - 1, 0));
  for (std::size_t k = 0; k < b.size(); ++k) {
    b[k] = b.size() == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * double(k) / double(b.size() - 1);
  }
  return b;
}

double sigmoid(double u) {
  if (u >= 0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

Vector<double> olr_class_probs(double score, const OlrParams& params) {
  params.validate();
  const Index classes = params.classes;
  Vector<double> p(classes);
  double below = 0.0;
  for (Index y = 0; y < classes - 1; ++y) {
    const double cdf = sigmoid(params.biases[y] - score);
    p(y) = std::max(cdf - below, 0.0);
    below = cdf;
  }
  p(classes - 1) = 1.0 - below;
  return p;
}

std::vector<Sample<double>> gen_olr(Index n, const OlrParams& params) {
  if (n < 1) throw InvalidArgument("sample count must be >= 1");
  params.validate();
  Rng rng(params.seed);
  std::vector<Sample<double>> out;
  out.reserve(n);
  for (Index i = 0; i < n; ++i) {
    const double a = params.scores.kind == ScoreDistribution::Kind::Uniform
                         ? rng.uniform(params.scores.a, params.scores.b)
                         : rng.normal(params.scores.a, params.scores.b);
    // Inverse-CDF draw against the cumulative link.
    const double u = rng.uniform();
    int label = int(params.classes);
    for (Index y = 0; y < params.classes - 1; ++y) {
      if (u < sigmoid(params.biases[y] - a)) {
        label = int(y) + 1;
        break;
      }
    }
    out.push_back({a, label});
  }
  return out;
}

std::vector<Sample<double>> gen_adversarial(Index n, Index classes, double duplicate_fraction,
                                            std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("sample count must be >= 1");
  if (classes < 2) throw InvalidArgument("need at least 2 classes");
  if (!(duplicate_fraction >= 0.0 && duplicate_fraction <= 1.0)) {
    throw InvalidArgument("duplicate_fraction must lie in [0, 1]");
  }
  Rng rng(seed);
  const Index distinct = std::max<Index>(1, n - Index(std::llround(duplicate_fraction * double(n - 1))));

  // Distinct scores on a quarter-integer grid with random gaps: exact
  // midpoints and exactly reproducible text.
  std::vector<double> levels(distinct);
  double level = -0.25 * double(rng.below(8));
  for (Index d = 0; d < distinct; ++d) {
    levels[d] = level;
    level += 0.25 * double(1 + rng.below(4));
  }

  std::vector<Index> level_of(n);
  for (Index i = 0; i < n; ++i) level_of[i] = i < distinct ? i : Index(rng.below(distinct));

  std::vector<Sample<double>> out;
  out.reserve(n);
  for (Index i = 0; i < n; ++i) {
    const Index d = level_of[i];
    int label = 1 + int(double(classes) * double(d) / double(distinct));
    if (rng.uniform() < 0.3) label = 1 + int(rng.below(classes));
    out.push_back({levels[d], std::clamp(label, 1, int(classes))});
  }
  rng.shuffle(out);
  return out;
}

}  // namespace otl
