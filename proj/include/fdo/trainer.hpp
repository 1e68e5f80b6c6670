#pragma once

// Trains the single-hidden-layer perceptron either by searching its flat
// parameter vector with FDO (MSE as fitness) or by full-batch gradient
// descent on the same MSE.

#include <cstddef>
#include <span>
#include <string>

#include "fdo/dataset.hpp"
#include "fdo/mlp.hpp"
#include "fdo/optimizer.hpp"

namespace fdo::train {

enum class Method { Fdo, Backprop };

struct BackpropConfig {
  double learning_rate = 0.5;
  std::size_t epochs = 5000;
  /// Initial weights are uniform in [-init_range, init_range].
  double init_range = 0.5;
};

struct TrainingConfig {
  Method method = Method::Fdo;
  /// Population, iteration budget, wf, seed and threads. The bounds are
  /// derived from weight_lower/weight_upper unless set explicitly.
  FdoConfig<double> fdo;
  mlp::Topology topology;
  double weight_lower = -1.0;
  double weight_upper = 1.0;
  double threshold = 0.5;
  BackpropConfig backprop;

  /// The FDO configuration actually run: weight box over every parameter.
  FdoConfig<double> resolvedFdo() const;
  void validate() const;
};

/// Named budgets: "agents40-iter75" (population 40, 75 iterations) and
/// "agents40-iter200" (population 40, 200 iterations).
TrainingConfig preset(const std::string& name, std::size_t feature_count);

/// Topology n - (2n + 1) - 1 for binary targets.
mlp::Topology defaultTopology(std::size_t feature_count);

struct TrainedModel {
  mlp::Params<double> params;
  double train_mse = 0.0;
  /// Best training MSE after each iteration (FDO) or epoch (backprop).
  ConvergenceCurve<double> curve;
  TrainingConfig config;
  std::size_t evaluations = 0;
};

/// Targets as a samples x outputs matrix: the 0/1 label for one output,
/// one-hot rows for several.
Eigen::MatrixXd targetMatrix(const data::LabeledDataset& data,
                             std::size_t outputs);

/// (1/N) * sum over samples and output units of (output - target)^2.
double mseFitness(const mlp::Params<double>& params,
                  const data::LabeledDataset& data);

/// v -> mseFitness(decode(v, topology), data). Shapes are checked on call.
Objective<double> makeObjective(const mlp::Topology& topology,
                                const data::LabeledDataset& data);

TrainedModel trainFdoMlp(const data::LabeledDataset& train_data,
                         const TrainingConfig& config, Rng& rng);

/// Analytic MSE gradient with respect to every weight and bias.
mlp::Params<double> mseGradient(const mlp::Params<double>& params,
                                const data::LabeledDataset& data);

/// Full-batch gradient descent. The returned parameters are the best seen,
/// so train_mse and the curve agree with the model.
TrainedModel trainBpMlp(const data::LabeledDataset& train_data,
                        const mlp::Topology& topology,
                        const BackpropConfig& config, Rng& rng);

/// Dispatches on config.method.
TrainedModel trainModel(const data::LabeledDataset& train_data,
                        const TrainingConfig& config, Rng& rng);

/// Predicted labels for every sample.
std::vector<int> predictLabels(const mlp::Params<double>& params,
                               const data::LabeledDataset& data,
                               double threshold = 0.5);

/// Raw first-output scores, used for ranking (AUC).
std::vector<double> outputScores(const mlp::Params<double>& params,
                                 const data::LabeledDataset& data);

enum class Direction { HigherIsBetter, LowerIsBetter };

struct RunStatistics {
  double average = 0.0;
  /// Population standard deviation.
  double std_dev = 0.0;
  double best = 0.0;
  double worst = 0.0;
};

RunStatistics runStatistics(std::span<const double> values,
                            Direction direction = Direction::HigherIsBetter);

}  // namespace fdo::train
