#pragma once

// Fitness Dependent Optimizer over box-constrained real vectors.
//
// Each scout bee moves by a pace whose magnitude is scaled by the fitness
// weight fw = |best / current| - wf and whose direction is random. A move is
// kept only if it improves the scout; otherwise the scout retries its last
// successful pace, and failing that stays where it is.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fdo/errors.hpp"
#include "fdo/random.hpp"

namespace fdo {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Objective = std::function<Scalar(const Vector<Scalar>&)>;

/// Per-dimension search box. lower(i) == upper(i) pins a coordinate.
template <typename Scalar = double>
struct Bounds {
  Vector<Scalar> lower;
  Vector<Scalar> upper;

  static Bounds uniform(Eigen::Index dimension, Scalar lo, Scalar hi) {
    return {Vector<Scalar>::Constant(dimension, lo),
            Vector<Scalar>::Constant(dimension, hi)};
  }

  Eigen::Index dimension() const { return lower.size(); }

  void validate() const {
    if (lower.size() != upper.size())
      throw DimensionError("bounds: lower has " + std::to_string(lower.size()) +
                           " entries but upper has " +
                           std::to_string(upper.size()));
    if (lower.size() == 0) throw ConfigError("bounds: zero-dimensional box");
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
      if (!std::isfinite(static_cast<double>(lower(i))) ||
          !std::isfinite(static_cast<double>(upper(i))) ||
          !(lower(i) <= upper(i)))
        throw ConfigError("bounds: dimension " + std::to_string(i) +
                          " is not a finite ordered interval");
    }
  }
};

template <typename Scalar = double>
struct FdoConfig {
  std::size_t population = 30;
  std::size_t max_iterations = 200;
  /// wf; 0 gives the most stable search.
  Scalar weight_factor = Scalar(0);
  Bounds<Scalar> bounds;
  std::uint64_t seed = kDefaultSeed;
  /// Worker threads for objective evaluation. Results do not depend on it.
  std::size_t threads = 1;

  void validate() const {
    if (population == 0) throw ConfigError("fdo: population must be >= 1");
    if (!(weight_factor >= Scalar(0) && weight_factor <= Scalar(1)))
      throw ConfigError("fdo: weight_factor must lie in [0, 1]");
    if (threads == 0) throw ConfigError("fdo: threads must be >= 1");
    bounds.validate();
  }
};

template <typename Scalar = double>
struct ScoutBee {
  Vector<Scalar> position;
  Scalar fitness{};
  /// Last pace that produced an improvement; zero until the first one.
  Vector<Scalar> last_pace;
};

/// Global-best fitness after each iteration.
template <typename Scalar = double>
struct ConvergenceCurve {
  std::vector<Scalar> values;

  std::size_t size() const { return values.size(); }

  bool isNonIncreasing() const {
    return std::adjacent_find(values.begin(), values.end(),
                              [](Scalar a, Scalar b) { return b > a; }) ==
           values.end();
  }
};

template <typename Scalar = double>
struct OptimizationResult {
  Vector<Scalar> best_position;
  Scalar best_fitness{};
  ConvergenceCurve<Scalar> curve;
  std::size_t iterations_run = 0;
  std::size_t evaluations = 0;
};

template <typename Scalar = double>
struct Swarm {
  std::vector<ScoutBee<Scalar>> scouts;
  ScoutBee<Scalar> best;
  std::size_t evaluations = 0;
};

/// Componentwise projection onto the box.
template <typename Scalar>
Vector<Scalar> clampToBounds(const Vector<Scalar>& position,
                             const Bounds<Scalar>& bounds) {
  if (position.size() != bounds.dimension())
    throw DimensionError("clamp: position has " +
                         std::to_string(position.size()) +
                         " entries, bounds have " +
                         std::to_string(bounds.dimension()));
  return position.cwiseMax(bounds.lower).cwiseMin(bounds.upper);
}

/// fw = |best / current| - wf. An empty result means the current fitness is
/// zero and the random pace rule applies.
template <typename Scalar>
std::optional<Scalar> fitnessWeight(Scalar current_fitness,
                                    Scalar global_best_fitness,
                                    Scalar weight_factor) {
  if (current_fitness == Scalar(0)) return std::nullopt;
  using std::abs;
  return abs(global_best_fitness / current_fitness) - weight_factor;
}

/// One direction draw per dimension, uniform in [-1, 1].
template <typename Scalar = double>
Vector<Scalar> drawDirections(Rng& rng, Eigen::Index dimension) {
  Vector<Scalar> r(dimension);
  for (Eigen::Index k = 0; k < dimension; ++k)
    r(k) = static_cast<Scalar>(uniformIn(rng, -1.0, 1.0));
  return r;
}

/// Pace for one scout given its direction draws r.
///
/// fw strictly inside (0, 1): pace_k = (x_k - best_k) * fw, negated when
/// r_k < 0. Anything else (fw of 0, 1, above 1, negative, or the zero-fitness
/// sentinel): pace_k = x_k * r_k.
template <typename Scalar>
Vector<Scalar> computePace(const Vector<Scalar>& position,
                           const Vector<Scalar>& best_position,
                           const std::optional<Scalar>& fw,
                           const Vector<Scalar>& r) {
  if (position.size() != best_position.size() || position.size() != r.size())
    throw DimensionError("pace: scout, best and direction sizes differ (" +
                         std::to_string(position.size()) + ", " +
                         std::to_string(best_position.size()) + ", " +
                         std::to_string(r.size()) + ")");
  if (!fw || !(*fw > Scalar(0) && *fw < Scalar(1)))
    return position.cwiseProduct(r);
  const Scalar w = *fw;
  Vector<Scalar> pace(position.size());
  for (Eigen::Index k = 0; k < position.size(); ++k) {
    const Scalar towards = (position(k) - best_position(k)) * w;
    pace(k) = r(k) < Scalar(0) ? towards * Scalar(-1) : towards;
  }
  return pace;
}

namespace detail {

template <typename Scalar>
std::vector<double> toStd(const Vector<Scalar>& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out[static_cast<std::size_t>(i)] = static_cast<double>(v(i));
  return out;
}

// Evaluates every point; results are in input order regardless of threads.
template <typename Scalar>
std::vector<Scalar> evaluateAll(const Objective<Scalar>& objective,
                                const std::vector<Vector<Scalar>>& points,
                                std::size_t threads) {
  std::vector<Scalar> values(points.size());
  const std::size_t workers = std::min(threads, points.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i)
      values[i] = objective(points[i]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < points.size(); i += workers)
          values[i] = objective(points[i]);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(static_cast<double>(values[i])))
      throw EvaluationError("objective returned a non-finite value",
                            toStd(points[i]));
  }
  return values;
}

template <typename Scalar>
void refreshBest(Swarm<Scalar>& swarm) {
  const ScoutBee<Scalar>* leader = &swarm.scouts.front();
  for (const auto& scout : swarm.scouts)
    if (scout.fitness < leader->fitness) leader = &scout;
  if (leader->fitness < swarm.best.fitness) swarm.best = *leader;
}

}  // namespace detail

/// Uniform random scouts inside the box, evaluated, with zero stored pace.
template <typename Scalar>
Swarm<Scalar> initializeSwarm(const FdoConfig<Scalar>& config,
                              const Objective<Scalar>& objective, Rng& rng) {
  config.validate();
  const Eigen::Index d = config.bounds.dimension();
  std::vector<Vector<Scalar>> positions(config.population);
  for (auto& p : positions) {
    p.resize(d);
    for (Eigen::Index k = 0; k < d; ++k)
      p(k) = static_cast<Scalar>(
          uniformIn(rng, static_cast<double>(config.bounds.lower(k)),
                    static_cast<double>(config.bounds.upper(k))));
    p = clampToBounds(p, config.bounds);
  }
  const auto fitness = detail::evaluateAll(objective, positions, config.threads);

  Swarm<Scalar> swarm;
  swarm.evaluations = positions.size();
  swarm.scouts.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i)
    swarm.scouts.push_back(
        {std::move(positions[i]), fitness[i], Vector<Scalar>::Zero(d)});
  swarm.best = swarm.scouts.front();
  detail::refreshBest(swarm);
  return swarm;
}

/// Draws every direction for one iteration, in scout order, and turns them
/// into paces against the current global best.
template <typename Scalar>
std::vector<Vector<Scalar>> planPaces(const Swarm<Scalar>& swarm,
                                      const FdoConfig<Scalar>& config,
                                      Rng& rng) {
  std::vector<Vector<Scalar>> paces;
  paces.reserve(swarm.scouts.size());
  for (const auto& scout : swarm.scouts) {
    const auto r = drawDirections<Scalar>(rng, scout.position.size());
    const auto fw = fitnessWeight(scout.fitness, swarm.best.fitness,
                                  config.weight_factor);
    paces.push_back(computePace(scout.position, swarm.best.position, fw, r));
  }
  return paces;
}

/// Moves every scout by its pace under the improvement-only rule, then
/// updates the global best (strict improvement; ties keep the incumbent).
/// If any evaluation fails, no scout is modified. Returns the best fitness.
template <typename Scalar>
Scalar applyPaces(Swarm<Scalar>& swarm,
                  const std::vector<Vector<Scalar>>& paces,
                  const Objective<Scalar>& objective,
                  const FdoConfig<Scalar>& config) {
  if (paces.size() != swarm.scouts.size())
    throw DimensionError("step: one pace per scout required");
  const std::size_t p = swarm.scouts.size();

  std::vector<Vector<Scalar>> fresh(p);
  for (std::size_t i = 0; i < p; ++i)
    fresh[i] = clampToBounds<Scalar>(swarm.scouts[i].position + paces[i],
                                     config.bounds);
  const auto fresh_fit = detail::evaluateAll(objective, fresh, config.threads);

  // Scouts whose new pace failed retry the stored one. A zero stored pace
  // would land on the current position, which can never strictly improve.
  std::vector<std::size_t> retry;
  std::vector<Vector<Scalar>> reuse;
  for (std::size_t i = 0; i < p; ++i) {
    const auto& scout = swarm.scouts[i];
    if (fresh_fit[i] < scout.fitness || scout.last_pace.isZero(0)) continue;
    retry.push_back(i);
    reuse.push_back(
        clampToBounds<Scalar>(scout.position + scout.last_pace, config.bounds));
  }
  const auto reuse_fit = detail::evaluateAll(objective, reuse, config.threads);
  swarm.evaluations += fresh.size() + reuse.size();

  std::size_t next_retry = 0;
  for (std::size_t i = 0; i < p; ++i) {
    auto& scout = swarm.scouts[i];
    if (fresh_fit[i] < scout.fitness) {
      scout.position = std::move(fresh[i]);
      scout.fitness = fresh_fit[i];
      scout.last_pace = paces[i];
    } else if (next_retry < retry.size() && retry[next_retry] == i) {
      if (reuse_fit[next_retry] < scout.fitness) {
        scout.position = std::move(reuse[next_retry]);
        scout.fitness = reuse_fit[next_retry];
      }
      ++next_retry;
    }
  }
  detail::refreshBest(swarm);
  return swarm.best.fitness;
}

/// One FDO iteration: plan every pace, then move.
template <typename Scalar>
Scalar step(Swarm<Scalar>& swarm, const Objective<Scalar>& objective,
            const FdoConfig<Scalar>& config, Rng& rng) {
  const auto paces = planPaces(swarm, config, rng);
  return applyPaces(swarm, paces, objective, config);
}

/// Full run: initialization followed by max_iterations steps.
template <typename Scalar>
OptimizationResult<Scalar> optimize(const Objective<Scalar>& objective,
                                    const FdoConfig<Scalar>& config,
                                    Rng& rng) {
  Swarm<Scalar> swarm;
  try {
    swarm = initializeSwarm(config, objective, rng);
  } catch (const EvaluationError& e) {
    throw EvaluationError(std::string(e.what()) + " during initialization",
                          e.position(), 0);
  }

  OptimizationResult<Scalar> result;
  result.curve.values.reserve(config.max_iterations);
  for (std::size_t t = 1; t <= config.max_iterations; ++t) {
    try {
      result.curve.values.push_back(step(swarm, objective, config, rng));
    } catch (const EvaluationError& e) {
      throw EvaluationError(
          std::string(e.what()) + " at iteration " + std::to_string(t),
          e.position(), t);
    }
  }
  result.best_position = swarm.best.position;
  result.best_fitness = swarm.best.fitness;
  result.iterations_run = config.max_iterations;
  result.evaluations = swarm.evaluations;
  return result;
}

/// Convenience overload seeding a fresh engine from config.seed.
template <typename Scalar>
OptimizationResult<Scalar> optimize(const Objective<Scalar>& objective,
                                    const FdoConfig<Scalar>& config) {
  Rng rng(config.seed);
  return optimize(objective, config, rng);
}

}  // namespace fdo
