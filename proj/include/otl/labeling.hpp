#pragma once

#include "otl/common.hpp"
#include "otl/losses.hpp"

#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace otl {

/// One observed score with its 1-based class label.
template <typename Scalar = double>
struct Sample {
  Scalar score;
  int label;

  bool operator==(const Sample&) const = default;
};

/// K-1 extended-real thresholds. Order is not enforced; raw IO output may be
/// unsorted, so sortedness is a query.
template <typename Scalar = double>
class ThresholdVector {
 public:
  ThresholdVector() = default;

  explicit ThresholdVector(Vector<Scalar> values) : values_(std::move(values)) { validate(); }

  ThresholdVector(std::initializer_list<Scalar> values) : values_(Index(values.size())) {
    Index i = 0;
    for (Scalar v : values) values_(i++) = v;
    validate();
  }

  Index size() const noexcept { return values_.size(); }
  Index classes() const noexcept { return values_.size() + 1; }
  Scalar operator[](Index k) const { return values_(k); }
  const Vector<Scalar>& values() const noexcept { return values_; }

  bool is_nondecreasing() const {
    for (Index k = 1; k < values_.size(); ++k) {
      if (values_(k - 1) > values_(k)) return false;
    }
    return true;
  }

  bool operator==(const ThresholdVector& other) const { return values_ == other.values_; }

 private:
  void validate() const {
    for (Index k = 0; k < values_.size(); ++k) {
      if (std::isnan(values_(k))) {
        throw InvalidArgument("threshold " + std::to_string(k + 1) + " is NaN");
      }
    }
  }

  Vector<Scalar> values_;
};

template <typename Scalar>
struct RiskValue {
  Scalar sum;
  Scalar mean;
};

/// 1 + #{k : u >= t_k}. A score equal to a threshold takes the upper class.
template <typename Scalar>
int threshold_label(Scalar u, const ThresholdVector<Scalar>& t) {
  int label = 1;
  for (Index k = 0; k < t.size(); ++k) label += (u >= t[k]) ? 1 : 0;
  return label;
}

namespace detail {

template <typename Scalar>
void check_samples(std::span<const Sample<Scalar>> samples, Index classes) {
  if (samples.empty()) throw InvalidArgument("sample set is empty");
  for (const auto& s : samples) {
    if (s.label < 1 || s.label > classes) {
      throw InvalidArgument("label " + std::to_string(s.label) + " outside [1, " +
                            std::to_string(classes) + "]");
    }
  }
}

}  // namespace detail

template <typename Scalar>
RiskValue<Scalar> empirical_risk(std::span<const Sample<Scalar>> samples,
                                 const ThresholdVector<Scalar>& t, const LossSpec<Scalar>& loss) {
  if (t.classes() != loss.classes()) {
    throw InvalidArgument("threshold vector has " + std::to_string(t.size()) +
                          " entries, loss has " + std::to_string(loss.classes()) + " classes");
  }
  detail::check_samples(samples, loss.classes());
  Scalar sum(0);
  for (const auto& s : samples) sum += loss(threshold_label(s.score, t), s.label);
  return {sum, sum / Scalar(samples.size())};
}

/// Mean risk of the two-class reduction that labels scores below `thresh` as
/// class k and the rest as k+1 (k is 1-based, 1 <= k <= K-1).
template <typename Scalar>
Scalar r_k_direct(std::span<const Sample<Scalar>> samples, int k, Scalar thresh,
                  const LossSpec<Scalar>& loss) {
  if (k < 1 || k > loss.classes() - 1) {
    throw InvalidArgument("threshold index " + std::to_string(k) + " outside [1, K-1]");
  }
  detail::check_samples(samples, loss.classes());
  Scalar sum(0);
  for (const auto& s : samples) sum += loss(k + (s.score >= thresh ? 1 : 0), s.label);
  return sum / Scalar(samples.size());
}

}  // namespace otl
