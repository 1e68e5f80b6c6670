#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdo {

/// Invalid optimizer, network, or run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shape or length mismatch between vectors, matrices, or topologies.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input data (CSV cells, labels, model files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The objective returned a non-finite value.
///
/// Carries the offending point and, once it has propagated through the
/// optimizer loop, the iteration in which it happened (0 = initialization).
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::vector<double> position,
                  std::optional<std::size_t> iteration = std::nullopt)
      : std::runtime_error(what),
        position_(std::move(position)),
        iteration_(iteration) {}

  const std::vector<double>& position() const noexcept { return position_; }
  std::optional<std::size_t> iteration() const noexcept { return iteration_; }

 private:
  std::vector<double> position_;
  std::optional<std::size_t> iteration_;
};

/// Numerical divergence during gradient training.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t epoch)
      : std::runtime_error(what), epoch_(epoch) {}
  std::size_t epoch() const noexcept { return epoch_; }

 private:
  std::size_t epoch_;
};

}  // namespace fdo
