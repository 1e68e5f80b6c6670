#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "fdo/dataset.hpp"
#include "fdo/errors.hpp"
#include "test_support.hpp"

using namespace fdo::data;
using fdo::Rng;

namespace {

LabeledDataset parse(const std::string& text, const std::string& label = "label") {
  std::istringstream in(text);
  return parseCsv(in, label);
}

LabeledDataset randomData(Rng& rng, std::size_t rows, std::size_t cols) {
  LabeledDataset d;
  d.features.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < d.features.rows(); ++r)
    for (Eigen::Index c = 0; c < d.features.cols(); ++c)
      d.features(r, c) = fdo::uniformIn(rng, -20, 40);
  for (std::size_t r = 0; r < rows; ++r)
    d.labels.push_back(static_cast<int>(fdo::uniformIndex(rng, 2)));
  for (std::size_t c = 0; c < cols; ++c) d.column_names.push_back("c" + std::to_string(c));
  return d;
}

}  // namespace

TEST_CASE("parseCsv") {
  SUBCASE("structure") {
    const auto d = parse("a,b,label\n1,2,0\n3,4,1\n5.5,-6e1,1\n");
    CHECK(d.size() == 3);
    CHECK(d.featureCount() == 2);
    CHECK(d.column_names == std::vector<std::string>{"a", "b"});
    CHECK(d.labels == std::vector<int>{0, 1, 1});
    CHECK(d.features(2, 1) == -60.0);
  }
  SUBCASE("label column anywhere, CRLF and blank lines tolerated") {
    const auto d = parse("y, a\r\n1, 0.5\r\n\r\n0, 2\r\n", "y");
    CHECK(d.size() == 2);
    CHECK(d.column_names == std::vector<std::string>{"a"});
    CHECK(d.features(1, 0) == 2.0);
  }
  SUBCASE("non-numeric cell names row and column") {
    try {
      parse("a,b,label\n1,2,0\n3,abc,1\n");
      FAIL("expected a parse error");
    } catch (const fdo::DataError& e) {
      const std::string what = e.what();
      CHECK(what.find("row 2") != std::string::npos);
      CHECK(what.find("'b'") != std::string::npos);
    }
  }
  SUBCASE("non-binary label") {
    CHECK_THROWS_WITH_AS(parse("a,label\n1,2\n"), doctest::Contains("expected 0 or 1"),
                         fdo::DataError);
  }
  SUBCASE("missing cells, label column, and file") {
    CHECK_THROWS_AS(parse("a,b,label\n1,0\n"), fdo::DataError);
    CHECK_THROWS_AS(parse("a,b\n1,0\n"), fdo::DataError);
    CHECK_THROWS_AS(parse("a,b,label\n1,,0\n"), fdo::DataError);
    CHECK_THROWS_AS(loadCsv("/nonexistent/file.csv", "label"), fdo::DataError);
  }
}

TEST_CASE("writeCsv then parse reproduces the data exactly") {
  Rng rng(12);
  const auto d = randomData(rng, 40, 5);
  std::ostringstream out;
  writeCsv(d, out);
  const auto back = parse(out.str());
  CHECK(back.features == d.features);
  CHECK(back.labels == d.labels);
  CHECK(back.column_names == d.column_names);
}

TEST_CASE("minMaxNormalize") {
  auto d = parse("a,b,label\n0,7,0\n5,7,1\n10,7,0\n");
  const auto n = minMaxNormalize(d);
  CHECK(n.features.col(0) == Eigen::Vector3d(0, 0.5, 1));
  CHECK(n.features.col(1) == Eigen::Vector3d::Zero());
  CHECK(n.normalized);
  CHECK(n.ranges[0].min == 0);
  CHECK(n.ranges[0].max == 10);
  CHECK(n.ranges[1].min == 7);
}

TEST_CASE("normalization properties") {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto d = randomData(rng, 2 + fdo::uniformIndex(rng, 30), 1 + fdo::uniformIndex(rng, 6));
    const auto once = minMaxNormalize(d);
    REQUIRE((once.features.array() >= 0.0).all());
    REQUIRE((once.features.array() <= 1.0).all());
    const auto twice = minMaxNormalize(once);
    REQUIRE(twice.features == once.features);
    // A fresh scaling of already-scaled data is the identity as well.
    auto rescaled = once;
    rescaled.normalized = false;
    REQUIRE(minMaxNormalize(rescaled).features == once.features);
    const Eigen::MatrixXd restored = denormalize(once.features, once.ranges);
    REQUIRE((restored - d.features).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("applyNormalization uses the given ranges") {
  auto train = parse("a,label\n0,0\n10,1\n");
  auto test = parse("a,label\n5,0\n20,1\n");
  train = minMaxNormalize(train);
  const auto scaled = applyNormalization(test, train.ranges);
  CHECK(scaled.features(0, 0) == 0.5);
  CHECK(scaled.features(1, 0) == 2.0);
  CHECK_THROWS_AS(applyNormalization(test, {}), fdo::DimensionError);
}

TEST_CASE("selectFeatures") {
  Rng rng(2);
  const auto d = randomData(rng, 5, 20);
  CHECK(selectFeatures(d, d.column_names).features == d.features);
  CHECK_THROWS_AS(selectFeatures(d, {}), fdo::ConfigError);
  CHECK_THROWS_AS(selectFeatures(d, {"c1", "zzz"}), fdo::ConfigError);

  std::vector<std::string> keep(d.column_names.begin(), d.column_names.begin() + 18);
  std::reverse(keep.begin(), keep.end());
  const auto s = selectFeatures(d, keep);
  CHECK(s.featureCount() == 18);
  CHECK(s.column_names.front() == "c17");
  CHECK(s.features.col(0) == d.features.col(17));
}

TEST_CASE("holdoutSplit") {
  Rng rng(9);
  SUBCASE("80/20 of 287") {
    const auto d = randomData(rng, 287, 3);
    const auto [train, test] = holdoutSplit(d, 0.8, rng);
    CHECK(train.size() == 230);
    CHECK(test.size() == 57);
  }
  SUBCASE("even split") {
    const auto d = randomData(rng, 10, 2);
    const auto [train, test] = holdoutSplit(d, 0.5, rng);
    CHECK(train.size() == 5);
    CHECK(test.size() == 5);
  }
  SUBCASE("partition property and reproducibility") {
    for (int t = 0; t < 20; ++t) {
      const auto d = randomData(rng, 5 + fdo::uniformIndex(rng, 60), 2);
      const double fraction = fdo::uniformIn(rng, 0.2, 0.8);
      Rng a(t), b(t);
      const auto [train, test] = holdoutSplit(d, fraction, a);
      const auto again = holdoutSplit(d, fraction, b);
      REQUIRE(again.first.features == train.features);
      std::vector<std::vector<double>> rows, original;
      auto collect = [](const LabeledDataset& x, std::vector<std::vector<double>>& out) {
        for (Eigen::Index r = 0; r < x.features.rows(); ++r) {
          std::vector<double> row(x.features.row(r).begin(), x.features.row(r).end());
          row.push_back(x.labels[static_cast<std::size_t>(r)]);
          out.push_back(row);
        }
      };
      collect(train, rows);
      collect(test, rows);
      collect(d, original);
      std::sort(rows.begin(), rows.end());
      std::sort(original.begin(), original.end());
      REQUIRE(rows == original);
    }
  }
  SUBCASE("empty side rejected") {
    const auto d = randomData(rng, 3, 1);
    CHECK_THROWS_AS(holdoutSplit(d, 0.1, rng), fdo::ConfigError);
    CHECK_THROWS_AS(holdoutSplit(d, 1.0, rng), fdo::ConfigError);
  }
}

TEST_CASE("generateSynthetic") {
  Rng rng(5);
  SyntheticSpec spec;
  const auto d = generateSynthetic(spec, rng);
  CHECK(d.size() == 287);
  CHECK(d.featureCount() == 18);
  CHECK(d.countLabel(1) == 183);
  CHECK(d.countLabel(0) == 104);
  d.validate();

  SUBCASE("class means sit the requested distance apart") {
    SyntheticSpec big{4000, 3, 4.0, 0.5};
    Rng r(8);
    const auto g = generateSynthetic(big, r);
    Eigen::RowVectorXd pos = Eigen::RowVectorXd::Zero(3), neg = pos;
    for (Eigen::Index i = 0; i < g.features.rows(); ++i)
      (g.labels[static_cast<std::size_t>(i)] ? pos : neg) += g.features.row(i);
    pos /= static_cast<double>(g.countLabel(1));
    neg /= static_cast<double>(g.countLabel(0));
    CHECK((pos - neg).norm() == doctest::Approx(4.0).epsilon(0.05));
  }
  SUBCASE("same seed, same data") {
    Rng a(77), b(77);
    CHECK(generateSynthetic(spec, a).features == generateSynthetic(spec, b).features);
  }
  SUBCASE("degenerate specs") {
    CHECK_THROWS_AS(generateSynthetic({1, 2, 1.0, 0.5}, rng), fdo::ConfigError);
    CHECK_THROWS_AS(generateSynthetic({10, 0, 1.0, 0.5}, rng), fdo::ConfigError);
    CHECK_THROWS_AS(generateSynthetic({10, 2, -1.0, 0.5}, rng), fdo::ConfigError);
    CHECK_THROWS_AS(generateSynthetic({10, 2, 1.0, 1.0}, rng), fdo::ConfigError);
    CHECK_THROWS_AS(generateSynthetic({10, 2, 1.0, 0.01}, rng), fdo::ConfigError);
  }
}
