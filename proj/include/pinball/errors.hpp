#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pinball {

/// Base class for every error raised by a domain precondition.
/// The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two balls whose open interiors intersect. Indices are 0-based; the
/// message uses 1-based ball numbers.
class OverlapError : public DomainError {
 public:
  OverlapError(std::size_t i, std::size_t j, double distance)
      : DomainError("balls " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                    " overlap: center distance " + std::to_string(distance) + " < 2"),
        first(i),
        second(j),
        distance(distance) {}

  std::size_t first;
  std::size_t second;
  double distance;
};

class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotTouching : public DomainError {
 public:
  NotTouching(std::size_t i, std::size_t j)
      : DomainError("balls " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                    " do not touch"),
        first(i),
        second(j) {}

  std::size_t first;
  std::size_t second;
};

class ZeroEnergyError : public DomainError {
 public:
  ZeroEnergyError() : DomainError("velocities vanish after removing total momentum") {}
};

class DisconnectedError : public DomainError {
 public:
  DisconnectedError() : DomainError("full contact graph is not connected") {}
};

class NotNormalized : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidSchedule : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoInteriorWitness : public DomainError {
 public:
  using DomainError::DomainError;
};

class TooManyEdges : public DomainError {
 public:
  TooManyEdges(std::size_t edges, std::size_t limit)
      : DomainError(std::to_string(edges) + " edges exceed the enumeration guard of " +
                    std::to_string(limit)) {}
};

class AllZero : public DomainError {
 public:
  AllZero() : DomainError("no strictly positive alpha_* candidate exists") {}
};

class DependentInput : public DomainError {
 public:
  using DomainError::DomainError;
};

class DependentEdges : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonconformingColumn : public DomainError {
 public:
  explicit NonconformingColumn(std::size_t column)
      : DomainError("column " + std::to_string(column + 1) +
                    " matches none of the admissible column patterns"),
        column(column) {}

  std::size_t column;
};

class InvalidAlpha : public DomainError {
 public:
  explicit InvalidAlpha(double alpha)
      : DomainError("alpha must lie in (0, 1], got " + std::to_string(alpha)) {}
};

class TooFewBalls : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace pinball
