#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace otl {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RowMajorMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidLoss : public InvalidArgument {
 public:
  enum class Kind { UnknownFamily, TooFewClasses, NotSquare, NegativeEntry, NonFinite };

  InvalidLoss(Kind kind, const std::string& what) : InvalidArgument(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// IO output is not nondecreasing and the caller asked for an error.
class OrderViolated : public Error {
 public:
  using Error::Error;
};

/// Brute-force enumeration would exceed the configured tuple cap.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (CSV/JSON).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace otl
