#pragma once

// Single-hidden-layer perceptron: sigmoid hidden units, linear output sums
// (optionally squashed), and the flat parameter vector a scout bee carries.
//
// Flat layout, for n inputs, m hidden and o outputs:
//   for each hidden j:  W(0,j) ... W(n-1,j), hidden_bias(j)
//   for each output k:  V(0,k) ... V(m-1,k), output_bias(k)
// giving (n + 1) * m + (m + 1) * o entries.

#include <cmath>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "fdo/errors.hpp"
#include "fdo/optimizer.hpp"

namespace fdo::mlp {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class OutputActivation { Linear, Sigmoid };

struct Topology {
  std::size_t inputs = 1;
  std::size_t hidden = 1;
  std::size_t outputs = 1;
  OutputActivation output_activation = OutputActivation::Linear;

  void validate() const {
    if (inputs == 0 || hidden == 0 || outputs == 0)
      throw ConfigError("topology: every layer needs at least one unit (got " +
                        std::to_string(inputs) + "-" + std::to_string(hidden) +
                        "-" + std::to_string(outputs) + ")");
  }

  friend bool operator==(const Topology&, const Topology&) = default;
};

/// Number of weights and biases: (n + 1) m + (m + 1) o.
constexpr std::size_t vectorDimension(const Topology& t) {
  return (t.inputs + 1) * t.hidden + (t.hidden + 1) * t.outputs;
}

/// Hidden width 2N + 1 for N input features.
constexpr std::size_t hiddenSizeRule(std::size_t feature_count) {
  return 2 * feature_count + 1;
}

template <typename Scalar = double>
struct Params {
  Topology topology;
  Matrix<Scalar> input_hidden;   // n x m, column j feeds hidden unit j
  Vector<Scalar> hidden_bias;    // m
  Matrix<Scalar> hidden_output;  // m x o, column k feeds output k
  Vector<Scalar> output_bias;    // o

  static Params zeros(const Topology& t) {
    t.validate();
    const auto n = static_cast<Eigen::Index>(t.inputs);
    const auto m = static_cast<Eigen::Index>(t.hidden);
    const auto o = static_cast<Eigen::Index>(t.outputs);
    return {t, Matrix<Scalar>::Zero(n, m), Vector<Scalar>::Zero(m),
            Matrix<Scalar>::Zero(m, o), Vector<Scalar>::Zero(o)};
  }

  bool operator==(const Params& other) const {
    return topology == other.topology && input_hidden == other.input_hidden &&
           hidden_bias == other.hidden_bias &&
           hidden_output == other.hidden_output &&
           output_bias == other.output_bias;
  }
};

template <typename Scalar>
Params<Scalar> decode(const Vector<Scalar>& flat, const Topology& topology) {
  topology.validate();
  const auto expected = static_cast<Eigen::Index>(vectorDimension(topology));
  if (flat.size() != expected)
    throw DimensionError("decode: expected a vector of length " +
                         std::to_string(expected) + ", got " +
                         std::to_string(flat.size()));
  auto params = Params<Scalar>::zeros(topology);
  const Eigen::Index n = params.input_hidden.rows();
  const Eigen::Index m = params.input_hidden.cols();
  const Eigen::Index o = params.hidden_output.cols();
  Eigen::Index at = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    params.input_hidden.col(j) = flat.segment(at, n);
    params.hidden_bias(j) = flat(at + n);
    at += n + 1;
  }
  for (Eigen::Index k = 0; k < o; ++k) {
    params.hidden_output.col(k) = flat.segment(at, m);
    params.output_bias(k) = flat(at + m);
    at += m + 1;
  }
  return params;
}

template <typename Scalar>
Vector<Scalar> encode(const Params<Scalar>& params) {
  const Eigen::Index n = params.input_hidden.rows();
  const Eigen::Index m = params.input_hidden.cols();
  const Eigen::Index o = params.hidden_output.cols();
  if (params.hidden_bias.size() != m || params.hidden_output.rows() != m ||
      params.output_bias.size() != o)
    throw DimensionError("encode: parameter blocks have inconsistent shapes");
  Vector<Scalar> flat((n + 1) * m + (m + 1) * o);
  Eigen::Index at = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    flat.segment(at, n) = params.input_hidden.col(j);
    flat(at + n) = params.hidden_bias(j);
    at += n + 1;
  }
  for (Eigen::Index k = 0; k < o; ++k) {
    flat.segment(at, m) = params.hidden_output.col(k);
    flat(at + m) = params.output_bias(k);
    at += m + 1;
  }
  return flat;
}

template <typename Scalar>
Scalar sigmoid(Scalar s) {
  using std::exp;
  return Scalar(1) / (Scalar(1) + exp(-s));
}

/// Hidden activations for a batch (one sample per row): samples x m.
template <typename Scalar>
Matrix<Scalar> hiddenActivations(const Params<Scalar>& params,
                                 const Matrix<Scalar>& inputs) {
  if (inputs.cols() != params.input_hidden.rows())
    throw DimensionError("forward: expected " +
                         std::to_string(params.input_hidden.rows()) +
                         " input features, got " +
                         std::to_string(inputs.cols()));
  Matrix<Scalar> sums = inputs * params.input_hidden;
  sums.rowwise() += params.hidden_bias.transpose();
  return sums.unaryExpr([](Scalar s) { return sigmoid(s); });
}

/// Network outputs for a batch (one sample per row): samples x o.
template <typename Scalar>
Matrix<Scalar> forwardBatch(const Params<Scalar>& params,
                            const Matrix<Scalar>& inputs) {
  Matrix<Scalar> out = hiddenActivations(params, inputs) * params.hidden_output;
  out.rowwise() += params.output_bias.transpose();
  if (params.topology.output_activation == OutputActivation::Sigmoid)
    out = out.unaryExpr([](Scalar s) { return sigmoid(s); });
  return out;
}

template <typename Scalar>
Vector<Scalar> forward(const Params<Scalar>& params,
                       const Vector<Scalar>& input) {
  return forwardBatch<Scalar>(params, input.transpose()).row(0).transpose();
}

/// Single output: 1 iff output >= threshold. Several outputs: argmax, lowest
/// index on ties.
template <typename Derived>
int predictClass(const Eigen::MatrixBase<Derived>& output,
                 double threshold = 0.5) {
  if (output.size() == 0) throw DimensionError("predictClass: empty output");
  if (output.size() == 1)
    return static_cast<double>(output(0)) >= threshold ? 1 : 0;
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < output.size(); ++k)
    if (output(k) > output(best)) best = k;
  return static_cast<int>(best);
}

}  // namespace fdo::mlp
