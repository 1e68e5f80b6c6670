#include "fdo/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "fdo/errors.hpp"

namespace fdo::train {

FdoConfig<double> TrainingConfig::resolvedFdo() const {
  FdoConfig<double> out = fdo;
  const auto d = static_cast<Eigen::Index>(mlp::vectorDimension(topology));
  if (out.bounds.dimension() == 0)
    out.bounds = Bounds<double>::uniform(d, weight_lower, weight_upper);
  return out;
}

void TrainingConfig::validate() const {
  topology.validate();
  if (!(weight_lower <= weight_upper))
    throw ConfigError("training: weight bounds are not ordered");
  const auto resolved = resolvedFdo();
  if (resolved.bounds.dimension() !=
      static_cast<Eigen::Index>(mlp::vectorDimension(topology)))
    throw DimensionError("training: search box has " +
                         std::to_string(resolved.bounds.dimension()) +
                         " dimensions but the network has " +
                         std::to_string(mlp::vectorDimension(topology)) +
                         " parameters");
  if (method == Method::Fdo) resolved.validate();
  if (!(backprop.learning_rate >= 0.0) || backprop.init_range < 0.0)
    throw ConfigError("training: learning rate and init range must be >= 0");
}

mlp::Topology defaultTopology(std::size_t feature_count) {
  return {feature_count, mlp::hiddenSizeRule(feature_count), 1};
}

TrainingConfig preset(const std::string& name, std::size_t feature_count) {
  TrainingConfig config;
  config.topology = defaultTopology(feature_count);
  config.fdo.population = 40;
  if (name == "agents40-iter75")
    config.fdo.max_iterations = 75;
  else if (name == "agents40-iter200")
    config.fdo.max_iterations = 200;
  else
    throw ConfigError("unknown training preset '" + name + "'");
  return config;
}

Eigen::MatrixXd targetMatrix(const data::LabeledDataset& data,
                             std::size_t outputs) {
  const auto n = static_cast<Eigen::Index>(data.size());
  if (outputs == 1) {
    Eigen::MatrixXd t(n, 1);
    for (Eigen::Index s = 0; s < n; ++s)
      t(s, 0) = data.labels[static_cast<std::size_t>(s)];
    return t;
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(outputs));
  for (Eigen::Index s = 0; s < n; ++s) {
    const int label = data.labels[static_cast<std::size_t>(s)];
    if (label < 0 || static_cast<std::size_t>(label) >= outputs)
      throw DataError("label " + std::to_string(label) +
                      " has no output unit among " + std::to_string(outputs));
    t(s, label) = 1.0;
  }
  return t;
}

namespace {

void checkShapes(const mlp::Topology& topology,
                 const data::LabeledDataset& data) {
  if (data.size() == 0) throw DataError("MSE over an empty dataset");
  if (data.featureCount() != topology.inputs)
    throw DimensionError("dataset has " + std::to_string(data.featureCount()) +
                         " features but the network expects " +
                         std::to_string(topology.inputs));
}

double mseAgainst(const mlp::Params<double>& params,
                  const Eigen::MatrixXd& features,
                  const Eigen::MatrixXd& targets) {
  const Eigen::MatrixXd out = mlp::forwardBatch(params, features);
  return (out - targets).squaredNorm() / static_cast<double>(features.rows());
}

}  // namespace

double mseFitness(const mlp::Params<double>& params,
                  const data::LabeledDataset& data) {
  checkShapes(params.topology, data);
  return mseAgainst(params, data.features,
                    targetMatrix(data, params.topology.outputs));
}

Objective<double> makeObjective(const mlp::Topology& topology,
                                const data::LabeledDataset& data) {
  struct Fixed {
    Eigen::MatrixXd features;
    Eigen::MatrixXd targets;
  };
  std::shared_ptr<const Fixed> fixed;
  if (data.size() > 0 && data.featureCount() == topology.inputs)
    fixed = std::make_shared<const Fixed>(
        Fixed{data.features, targetMatrix(data, topology.outputs)});
  return [topology, fixed, n = data.size(),
          width = data.featureCount()](const Vector<double>& v) {
    if (!fixed) {
      if (n == 0) throw DataError("MSE over an empty dataset");
      throw DimensionError("dataset has " + std::to_string(width) +
                           " features but the network expects " +
                           std::to_string(topology.inputs));
    }
    return mseAgainst(mlp::decode(v, topology), fixed->features,
                      fixed->targets);
  };
}

TrainedModel trainFdoMlp(const data::LabeledDataset& train_data,
                         const TrainingConfig& config, Rng& rng) {
  config.validate();
  checkShapes(config.topology, train_data);
  const auto fdo_config = config.resolvedFdo();
  const auto result =
      optimize(makeObjective(config.topology, train_data), fdo_config, rng);

  TrainedModel model;
  model.params = mlp::decode(result.best_position, config.topology);
  model.train_mse = result.best_fitness;
  model.curve = result.curve;
  model.config = config;
  model.evaluations = result.evaluations;
  return model;
}

mlp::Params<double> mseGradient(const mlp::Params<double>& params,
                                const data::LabeledDataset& data) {
  checkShapes(params.topology, data);
  const Eigen::MatrixXd& x = data.features;
  const Eigen::MatrixXd hidden = mlp::hiddenActivations(params, x);
  Eigen::MatrixXd out = hidden * params.hidden_output;
  out.rowwise() += params.output_bias.transpose();

  const bool squash =
      params.topology.output_activation == mlp::OutputActivation::Sigmoid;
  if (squash) out = out.unaryExpr([](double s) { return mlp::sigmoid(s); });

  const double n = static_cast<double>(x.rows());
  Eigen::MatrixXd delta_out =
      (2.0 / n) * (out - targetMatrix(data, params.topology.outputs));
  if (squash) delta_out.array() *= out.array() * (1.0 - out.array());

  const Eigen::MatrixXd delta_hidden =
      ((delta_out * params.hidden_output.transpose()).array() * hidden.array() *
       (1.0 - hidden.array()))
          .matrix();

  mlp::Params<double> grad = params;
  grad.hidden_output = hidden.transpose() * delta_out;
  grad.output_bias = delta_out.colwise().sum().transpose();
  grad.input_hidden = x.transpose() * delta_hidden;
  grad.hidden_bias = delta_hidden.colwise().sum().transpose();
  return grad;
}

TrainedModel trainBpMlp(const data::LabeledDataset& train_data,
                        const mlp::Topology& topology,
                        const BackpropConfig& config, Rng& rng) {
  topology.validate();
  checkShapes(topology, train_data);
  if (!(config.learning_rate >= 0.0))
    throw ConfigError("backprop: learning rate must be >= 0");

  Vector<double> flat(static_cast<Eigen::Index>(mlp::vectorDimension(topology)));
  for (Eigen::Index i = 0; i < flat.size(); ++i)
    flat(i) = uniformIn(rng, -config.init_range, config.init_range);
  auto params = mlp::decode(flat, topology);

  auto best = params;
  double best_loss = mseFitness(params, train_data);
  TrainedModel model;
  model.curve.values.reserve(config.epochs);
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto grad = mseGradient(params, train_data);
    params.input_hidden -= config.learning_rate * grad.input_hidden;
    params.hidden_bias -= config.learning_rate * grad.hidden_bias;
    params.hidden_output -= config.learning_rate * grad.hidden_output;
    params.output_bias -= config.learning_rate * grad.output_bias;
    const double loss = mseFitness(params, train_data);
    if (!std::isfinite(loss))
      throw DivergenceError(
          "backprop diverged at epoch " + std::to_string(epoch), epoch);
    if (loss < best_loss) {
      best_loss = loss;
      best = params;
    }
    model.curve.values.push_back(best_loss);
  }

  model.params = std::move(best);
  model.train_mse = best_loss;
  model.config.method = Method::Backprop;
  model.config.topology = topology;
  model.config.backprop = config;
  model.evaluations = config.epochs + 1;
  return model;
}

TrainedModel trainModel(const data::LabeledDataset& train_data,
                        const TrainingConfig& config, Rng& rng) {
  if (config.method == Method::Backprop) {
    auto model = trainBpMlp(train_data, config.topology, config.backprop, rng);
    model.config = config;
    return model;
  }
  return trainFdoMlp(train_data, config, rng);
}

std::vector<int> predictLabels(const mlp::Params<double>& params,
                               const data::LabeledDataset& data,
                               double threshold) {
  checkShapes(params.topology, data);
  const Eigen::MatrixXd out = mlp::forwardBatch(params, data.features);
  std::vector<int> labels(data.size());
  for (Eigen::Index s = 0; s < out.rows(); ++s)
    labels[static_cast<std::size_t>(s)] = mlp::predictClass(out.row(s), threshold);
  return labels;
}

std::vector<double> outputScores(const mlp::Params<double>& params,
                                 const data::LabeledDataset& data) {
  checkShapes(params.topology, data);
  const Eigen::MatrixXd out = mlp::forwardBatch(params, data.features);
  const Eigen::Index column = out.cols() == 1 ? 0 : 1;
  std::vector<double> scores(data.size());
  for (Eigen::Index s = 0; s < out.rows(); ++s)
    scores[static_cast<std::size_t>(s)] = out(s, column);
  return scores;
}

RunStatistics runStatistics(std::span<const double> values,
                            Direction direction) {
  if (values.empty()) throw ConfigError("run statistics need at least one run");
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t count = 0;
  for (double v : values) {
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  RunStatistics stats;
  stats.average = mean;
  stats.std_dev = std::sqrt(m2 / static_cast<double>(count));
  stats.best = direction == Direction::HigherIsBetter ? *hi : *lo;
  stats.worst = direction == Direction::HigherIsBetter ? *lo : *hi;
  return stats;
}

}  // namespace fdo::train
