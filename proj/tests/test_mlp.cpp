#include <doctest.h>

#include <cmath>

#include "fdo/mlp.hpp"

using fdo::Rng;
using fdo::mlp::Params;
using fdo::mlp::Topology;
using Vec = fdo::Vector<double>;
using Mat = fdo::mlp::Matrix<double>;

namespace {

Vec randomVector(Rng& rng, Eigen::Index n, double scale = 3.0) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = fdo::uniformIn(rng, -scale, scale);
  return v;
}

Topology randomTopology(Rng& rng) {
  return {1 + fdo::uniformIndex(rng, 6), 1 + fdo::uniformIndex(rng, 8),
          1 + fdo::uniformIndex(rng, 3)};
}

// Straight-line evaluation of the network, one unit at a time.
std::vector<double> referenceForward(const Params<double>& p, const Vec& input) {
  const auto n = p.topology.inputs, m = p.topology.hidden, o = p.topology.outputs;
  std::vector<double> hidden(m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      s += p.input_hidden(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
           input(static_cast<Eigen::Index>(i));
    s += p.hidden_bias(static_cast<Eigen::Index>(j));
    hidden[j] = 1.0 / (1.0 + std::exp(-s));
  }
  std::vector<double> out(o);
  for (std::size_t k = 0; k < o; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      s += p.hidden_output(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) *
           hidden[j];
    out[k] = s + p.output_bias(static_cast<Eigen::Index>(k));
  }
  return out;
}

}  // namespace

TEST_CASE("vectorDimension and hiddenSizeRule") {
  CHECK(fdo::mlp::vectorDimension({18, 37, 1}) == 741);
  CHECK(fdo::mlp::vectorDimension({1, 1, 1}) == 4);
  CHECK(fdo::mlp::vectorDimension({2, 5, 3}) == 33);
  CHECK(fdo::mlp::hiddenSizeRule(18) == 37);
  CHECK(fdo::mlp::hiddenSizeRule(1) == 3);
  CHECK(fdo::mlp::hiddenSizeRule(2) == 5);
  static_assert(fdo::mlp::vectorDimension({18, fdo::mlp::hiddenSizeRule(18), 1}) == 741);

  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + fdo::uniformIndex(rng, 50);
    const std::size_t o = 1 + fdo::uniformIndex(rng, 10);
    CHECK(fdo::mlp::vectorDimension({n, 2 * n + 1, o}) ==
          (n + 1) * (2 * n + 1) + (2 * n + 2) * o);
  }
}

TEST_CASE("decode follows the per-unit interleaved layout") {
  Vec flat(4);
  flat << 1.5, -2.0, 3.25, 4.0;
  const auto p = fdo::mlp::decode(flat, {1, 1, 1});
  CHECK(p.input_hidden(0, 0) == 1.5);
  CHECK(p.hidden_bias(0) == -2.0);
  CHECK(p.hidden_output(0, 0) == 3.25);
  CHECK(p.output_bias(0) == 4.0);

  Vec flat2(fdo::mlp::vectorDimension({2, 2, 1}));
  flat2 << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  const auto q = fdo::mlp::decode(flat2, {2, 2, 1});
  CHECK(q.input_hidden.col(0) == Vec{{1, 2}});
  CHECK(q.hidden_bias(0) == 3);
  CHECK(q.input_hidden.col(1) == Vec{{4, 5}});
  CHECK(q.hidden_bias(1) == 6);
  CHECK(q.hidden_output.col(0) == Vec{{7, 8}});
  CHECK(q.output_bias(0) == 9);

  CHECK_THROWS_AS(fdo::mlp::decode(Vec(Vec::Zero(5)), {1, 1, 1}), fdo::DimensionError);
  CHECK_THROWS_AS(fdo::mlp::decode(Vec(Vec::Zero(0)), {0, 1, 1}), fdo::ConfigError);
}

TEST_CASE("encode") {
  const auto zeros = Params<double>::zeros({1, 1, 1});
  CHECK(fdo::mlp::encode(zeros) == Vec::Zero(4));
  CHECK(fdo::mlp::encode(Params<double>::zeros({7, 3, 2})).size() ==
        static_cast<Eigen::Index>(fdo::mlp::vectorDimension({7, 3, 2})));
}

TEST_CASE("encode/decode is a bijection") {
  Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    const auto topo = randomTopology(rng);
    const auto v = randomVector(rng, static_cast<Eigen::Index>(fdo::mlp::vectorDimension(topo)));
    const auto p = fdo::mlp::decode(v, topo);
    REQUIRE(fdo::mlp::encode(p) == v);
    REQUIRE(fdo::mlp::decode(fdo::mlp::encode(p), topo) == p);
  }
}

TEST_CASE("sigmoid") {
  CHECK(fdo::mlp::sigmoid(0.0) == 0.5);
  CHECK(fdo::mlp::sigmoid(2.0) == doctest::Approx(0.880797077977882444).epsilon(1e-15));
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const double s = fdo::uniformIn(rng, -30, 30);
    const double y = fdo::mlp::sigmoid(s);
    REQUIRE(y > 0.0);
    REQUIRE(y < 1.0);
    REQUIRE(std::abs(y + fdo::mlp::sigmoid(-s) - 1.0) <= 1e-12);
  }
}

TEST_CASE("forward") {
  SUBCASE("all-zero parameters") {
    const auto p = Params<double>::zeros({3, 4, 2});
    const Vec in{{0.3, -1.0, 7.0}};
    CHECK((fdo::mlp::hiddenActivations<double>(p, in.transpose()).array() == 0.5).all());
    CHECK(fdo::mlp::forward(p, in) == Vec::Zero(2));
  }
  SUBCASE("linear output sums sigmoid units") {
    auto p = Params<double>::zeros({1, 1, 1});
    p.hidden_output(0, 0) = 2.0;
    CHECK(fdo::mlp::forward(p, Vec{{123.0}}) == Vec{{1.0}});
  }
  SUBCASE("optional sigmoid output") {
    auto p = Params<double>::zeros({1, 1, 1});
    p.topology.output_activation = fdo::mlp::OutputActivation::Sigmoid;
    CHECK(fdo::mlp::forward(p, Vec{{1.0}})(0) == 0.5);
  }
  SUBCASE("shape mismatch") {
    const auto p = Params<double>::zeros({3, 2, 1});
    CHECK_THROWS_AS(fdo::mlp::forward(p, Vec{{1.0, 2.0}}), fdo::DimensionError);
  }
}

TEST_CASE("forward agrees with a unit-by-unit evaluation") {
  Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    const auto topo = randomTopology(rng);
    const auto p = fdo::mlp::decode(
        randomVector(rng, static_cast<Eigen::Index>(fdo::mlp::vectorDimension(topo))), topo);
    const auto in = randomVector(rng, static_cast<Eigen::Index>(topo.inputs), 1.0);
    const auto got = fdo::mlp::forward(p, in);
    const auto want = referenceForward(p, in);
    for (std::size_t k = 0; k < want.size(); ++k)
      REQUIRE(std::abs(got(static_cast<Eigen::Index>(k)) - want[k]) <= 1e-12);
  }
}

TEST_CASE("batch forward matches per-sample forward") {
  Rng rng(4);
  const Topology topo{3, 7, 2};
  const auto p = fdo::mlp::decode(
      randomVector(rng, static_cast<Eigen::Index>(fdo::mlp::vectorDimension(topo))), topo);
  Mat inputs(5, 3);
  for (Eigen::Index r = 0; r < 5; ++r) inputs.row(r) = randomVector(rng, 3).transpose();
  const Mat out = fdo::mlp::forwardBatch(p, inputs);
  for (Eigen::Index r = 0; r < 5; ++r) {
    const Vec single = fdo::mlp::forward(p, Vec(inputs.row(r).transpose()));
    CHECK((out.row(r).transpose() - single).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("predictClass") {
  CHECK(fdo::mlp::predictClass(Vec{{0.7}}) == 1);
  CHECK(fdo::mlp::predictClass(Vec{{0.5}}) == 1);
  CHECK(fdo::mlp::predictClass(Vec{{0.49}}) == 0);
  CHECK(fdo::mlp::predictClass(Vec{{0.2, 0.9}}) == 1);
  CHECK(fdo::mlp::predictClass(Vec{{0.4, 0.4, 0.1}}) == 0);
  CHECK(fdo::mlp::predictClass(Vec{{0.6}}, 0.8) == 0);
}

TEST_CASE("network templated on float") {
  auto p = Params<float>::zeros({2, 3, 1});
  p.hidden_output.setConstant(1.0f);
  const Eigen::VectorXf out = fdo::mlp::forward(p, Eigen::VectorXf::Zero(2).eval());
  CHECK(out(0) == doctest::Approx(1.5f));
}
