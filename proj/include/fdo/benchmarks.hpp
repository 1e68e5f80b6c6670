#pragma once

// Classical test objectives plus a uniform random-search baseline.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fdo/optimizer.hpp"

namespace fdo::bench {

template <typename Derived>
typename Derived::Scalar sphere(const Eigen::MatrixBase<Derived>& x) {
  return x.squaredNorm();
}

template <typename Derived>
typename Derived::Scalar rastrigin(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  using std::cos;
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Scalar sum = Scalar(10) * static_cast<Scalar>(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    sum += x(i) * x(i) - Scalar(10) * cos(two_pi * x(i));
  return sum;
}

template <typename Derived>
typename Derived::Scalar rosenbrock(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() < 2)
    throw DimensionError("rosenbrock needs at least 2 dimensions, got " +
                         std::to_string(x.size()));
  Scalar sum(0);
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const Scalar valley = x(i + 1) - x(i) * x(i);
    const Scalar offset = Scalar(1) - x(i);
    sum += Scalar(100) * valley * valley + offset * offset;
  }
  return sum;
}

template <typename Scalar = double>
struct BenchmarkFunction {
  std::string name;
  std::size_t dimension = 0;
  Objective<Scalar> evaluate;
  Scalar known_minimum{};
  Vector<Scalar> argmin;
  Scalar default_lower{};
  Scalar default_upper{};

  Bounds<Scalar> defaultBounds() const {
    return Bounds<Scalar>::uniform(static_cast<Eigen::Index>(dimension),
                                   default_lower, default_upper);
  }
};

/// Builds a registered function at the requested dimension.
template <typename Scalar = double>
BenchmarkFunction<Scalar> makeBenchmark(const std::string& name,
                                        std::size_t dimension) {
  if (dimension == 0) throw ConfigError("benchmark dimension must be >= 1");
  const auto d = static_cast<Eigen::Index>(dimension);
  BenchmarkFunction<Scalar> f;
  f.name = name;
  f.dimension = dimension;
  f.known_minimum = Scalar(0);
  if (name == "sphere") {
    f.evaluate = [](const Vector<Scalar>& x) { return sphere(x); };
    f.argmin = Vector<Scalar>::Zero(d);
    f.default_lower = Scalar(-100);
    f.default_upper = Scalar(100);
  } else if (name == "rastrigin") {
    f.evaluate = [](const Vector<Scalar>& x) { return rastrigin(x); };
    f.argmin = Vector<Scalar>::Zero(d);
    f.default_lower = Scalar(-5.12);
    f.default_upper = Scalar(5.12);
  } else if (name == "rosenbrock") {
    if (dimension < 2)
      throw ConfigError("rosenbrock needs at least 2 dimensions");
    f.evaluate = [](const Vector<Scalar>& x) { return rosenbrock(x); };
    f.argmin = Vector<Scalar>::Ones(d);
    f.default_lower = Scalar(-30);
    f.default_upper = Scalar(30);
  } else {
    throw ConfigError("unknown benchmark function '" + name + "'");
  }
  return f;
}

inline std::vector<std::string> benchmarkNames() {
  return {"rastrigin", "rosenbrock", "sphere"};
}

/// Best of `evaluations` uniform samples in the box.
template <typename Scalar>
Scalar randomSearch(const Objective<Scalar>& objective,
                    const Bounds<Scalar>& bounds, std::size_t evaluations,
                    Rng& rng) {
  bounds.validate();
  Scalar best = std::numeric_limits<Scalar>::infinity();
  Vector<Scalar> x(bounds.dimension());
  for (std::size_t e = 0; e < evaluations; ++e) {
    for (Eigen::Index k = 0; k < x.size(); ++k)
      x(k) = static_cast<Scalar>(
          uniformIn(rng, static_cast<double>(bounds.lower(k)),
                    static_cast<double>(bounds.upper(k))));
    const Scalar v = objective(x);
    if (v < best) best = v;
  }
  return best;
}

}  // namespace fdo::bench
