#pragma once

#include "otl/common.hpp"

#include <cmath>
#include <string>
#include <string_view>

namespace otl {

enum class LossFamily { ZeroOne, Absolute, Squared, Custom };

inline std::string_view to_string(LossFamily family) {
  switch (family) {
    case LossFamily::ZeroOne: return "zero_one";
    case LossFamily::Absolute: return "absolute";
    case LossFamily::Squared: return "squared";
    case LossFamily::Custom: return "custom";
  }
  return "custom";
}

/// Accepts the long family names and the short CLI aliases (zo, abs, sq).
inline LossFamily parse_loss_family(std::string_view name) {
  if (name == "zero_one" || name == "zo") return LossFamily::ZeroOne;
  if (name == "absolute" || name == "abs") return LossFamily::Absolute;
  if (name == "squared" || name == "sq") return LossFamily::Squared;
  if (name == "custom") return LossFamily::Custom;
  throw InvalidLoss(InvalidLoss::Kind::UnknownFamily,
                    "unknown loss family '" + std::string(name) + "'");
}

/// K x K task-loss table. Entry (k-1, l-1) is the cost of predicting class k
/// when the truth is class l. Immutable once built.
template <typename Scalar = double>
class LossSpec {
 public:
  using Table = Matrix<Scalar>;

  static LossSpec build(LossFamily family, Index classes) {
    if (family == LossFamily::Custom) {
      throw InvalidLoss(InvalidLoss::Kind::UnknownFamily,
                        "custom losses are built from a table, not a family");
    }
    if (classes < 2) {
      throw InvalidLoss(InvalidLoss::Kind::TooFewClasses,
                        "loss needs at least 2 classes, got " + std::to_string(classes));
    }
    Table table(classes, classes);
    for (Index l = 0; l < classes; ++l) {
      for (Index k = 0; k < classes; ++k) {
        const Index diff = k > l ? k - l : l - k;
        switch (family) {
          case LossFamily::ZeroOne: table(k, l) = Scalar(diff != 0 ? 1 : 0); break;
          case LossFamily::Absolute: table(k, l) = Scalar(diff); break;
          default: table(k, l) = Scalar(diff * diff); break;
        }
      }
    }
    return LossSpec(family, std::move(table));
  }

  static LossSpec custom(const Eigen::Ref<const Table>& table) {
    if (table.rows() != table.cols()) {
      throw InvalidLoss(InvalidLoss::Kind::NotSquare,
                        "loss table must be square, got " + std::to_string(table.rows()) + "x" +
                            std::to_string(table.cols()));
    }
    if (table.rows() < 2) {
      throw InvalidLoss(InvalidLoss::Kind::TooFewClasses, "loss table needs at least 2 classes");
    }
    for (Index l = 0; l < table.cols(); ++l) {
      for (Index k = 0; k < table.rows(); ++k) {
        const Scalar v = table(k, l);
        if (!std::isfinite(v)) {
          throw InvalidLoss(InvalidLoss::Kind::NonFinite,
                            "loss entry (" + std::to_string(k + 1) + "," + std::to_string(l + 1) +
                                ") is not finite");
        }
        if (v < Scalar(0)) {
          throw InvalidLoss(InvalidLoss::Kind::NegativeEntry,
                            "loss entry (" + std::to_string(k + 1) + "," + std::to_string(l + 1) +
                                ") is negative");
        }
      }
    }
    return LossSpec(LossFamily::Custom, table);
  }

  Index classes() const noexcept { return table_.rows(); }
  LossFamily family() const noexcept { return family_; }
  std::string_view name() const noexcept { return to_string(family_); }
  const Table& table() const noexcept { return table_; }

  /// 1-based predicted and true labels.
  Scalar operator()(int predicted, int truth) const { return table_(predicted - 1, truth - 1); }

  bool operator==(const LossSpec& other) const {
    return family_ == other.family_ && table_ == other.table_;
  }

 private:
  LossSpec(LossFamily family, Table table) : family_(family), table_(std::move(table)) {}

  LossFamily family_;
  Table table_;
};

template <typename Scalar = double>
LossSpec<Scalar> build_loss(std::string_view name, Index classes) {
  return LossSpec<Scalar>::build(parse_loss_family(name), classes);
}

/// Second difference in the prediction argument is nonnegative everywhere.
/// Exact comparison: tables are user constants. Vacuously true for K = 2.
template <typename Scalar>
bool is_convex_loss(const LossSpec<Scalar>& loss) {
  const auto& t = loss.table();
  for (Index l = 0; l < t.cols(); ++l) {
    for (Index k = 0; k + 2 < t.rows(); ++k) {
      if (t(k, l) - Scalar(2) * t(k + 1, l) + t(k + 2, l) < Scalar(0)) return false;
    }
  }
  return true;
}

}  // namespace otl
