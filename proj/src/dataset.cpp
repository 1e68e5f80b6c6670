#include "fdo/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fdo/errors.hpp"
#include "fdo/text.hpp"

namespace fdo::data {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> splitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parseDouble(std::string_view cell, double& value) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  return ec == std::errc() && ptr == cell.data() + cell.size() &&
         std::isfinite(value);
}

}  // namespace

std::size_t LabeledDataset::countLabel(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

LabeledDataset LabeledDataset::subset(const std::vector<std::size_t>& rows) const {
  LabeledDataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= size())
      throw DimensionError("subset: row " + std::to_string(rows[r]) +
                           " out of range for " + std::to_string(size()) +
                           " samples");
    out.features.row(static_cast<Eigen::Index>(r)) =
        features.row(static_cast<Eigen::Index>(rows[r]));
    out.labels.push_back(labels[rows[r]]);
  }
  out.column_names = column_names;
  out.label_name = label_name;
  out.normalized = normalized;
  out.ranges = ranges;
  return out;
}

void LabeledDataset::validate() const {
  if (static_cast<std::size_t>(features.rows()) != labels.size())
    throw DataError("dataset: " + std::to_string(features.rows()) +
                    " feature rows but " + std::to_string(labels.size()) +
                    " labels");
  if (column_names.size() != featureCount())
    throw DataError("dataset: column names do not match feature width");
  for (int label : labels)
    if (label != 0 && label != 1)
      throw DataError("dataset: labels must be 0 or 1");
}

LabeledDataset parseCsv(std::istream& in, const std::string& label_column,
                        const std::string& source) {
  std::string line;
  if (!std::getline(in, line))
    throw DataError(source + ": missing header row");
  std::vector<std::string> header;
  for (auto cell : splitCells(line)) header.emplace_back(cell);

  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end())
    throw DataError(source + ": no label column '" + label_column + "'");
  const auto label_index =
      static_cast<std::size_t>(std::distance(header.begin(), label_it));

  LabeledDataset data;
  data.label_name = label_column;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != label_index) data.column_names.push_back(header[c]);

  std::vector<double> values;
  std::size_t row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = splitCells(line);
    if (cells.size() != header.size())
      throw DataError(source + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      if (!parseDouble(cells[c], v))
        throw DataError(source + ": non-numeric cell '" + std::string(cells[c]) +
                        "' at row " + std::to_string(row + 1) + ", column '" +
                        header[c] + "'");
      if (c == label_index) {
        if (v != 0.0 && v != 1.0)
          throw DataError(source + ": label at row " + std::to_string(row + 1) +
                          " is " + std::string(cells[c]) + ", expected 0 or 1");
        data.labels.push_back(static_cast<int>(v));
      } else {
        values.push_back(v);
      }
    }
    ++row;
  }

  const auto width = static_cast<Eigen::Index>(data.column_names.size());
  data.features.resize(static_cast<Eigen::Index>(row), width);
  for (std::size_t r = 0; r < row; ++r)
    for (Eigen::Index c = 0; c < width; ++c)
      data.features(static_cast<Eigen::Index>(r), c) =
          values[r * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)];
  return data;
}

LabeledDataset loadCsv(const std::filesystem::path& path,
                       const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset '" + path.string() + "'");
  return parseCsv(in, label_column, path.string());
}

void writeCsv(const LabeledDataset& data, std::ostream& out) {
  data.validate();
  for (const auto& name : data.column_names) out << name << ',';
  out << data.label_name << '\n';
  for (Eigen::Index r = 0; r < data.features.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.features.cols(); ++c)
      out << text::shortest(data.features(r, c)) << ',';
    out << data.labels[static_cast<std::size_t>(r)] << '\n';
  }
}

LabeledDataset minMaxNormalize(const LabeledDataset& data) {
  if (data.normalized) return data;
  std::vector<ColumnRange> ranges(data.featureCount());
  for (Eigen::Index c = 0; c < data.features.cols(); ++c) {
    if (data.features.rows() == 0) break;
    ranges[static_cast<std::size_t>(c)] = {data.features.col(c).minCoeff(),
                                           data.features.col(c).maxCoeff()};
  }
  return applyNormalization(data, ranges);
}

LabeledDataset applyNormalization(const LabeledDataset& data,
                                  const std::vector<ColumnRange>& ranges) {
  if (ranges.size() != data.featureCount())
    throw DimensionError("normalization: " + std::to_string(ranges.size()) +
                         " ranges for " + std::to_string(data.featureCount()) +
                         " features");
  LabeledDataset out = data;
  for (Eigen::Index c = 0; c < out.features.cols(); ++c) {
    const auto [lo, hi] = ranges[static_cast<std::size_t>(c)];
    if (hi > lo)
      out.features.col(c) = (out.features.col(c).array() - lo) / (hi - lo);
    else
      out.features.col(c).setZero();
  }
  out.normalized = true;
  out.ranges = ranges;
  return out;
}

Eigen::MatrixXd denormalize(const Eigen::MatrixXd& features,
                            const std::vector<ColumnRange>& ranges) {
  if (ranges.size() != static_cast<std::size_t>(features.cols()))
    throw DimensionError("denormalize: range count does not match width");
  Eigen::MatrixXd out = features;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    const auto [lo, hi] = ranges[static_cast<std::size_t>(c)];
    out.col(c) = out.col(c).array() * (hi - lo) + lo;
  }
  return out;
}

LabeledDataset selectFeatures(const LabeledDataset& data,
                              const std::vector<std::string>& keep) {
  if (keep.empty()) throw ConfigError("selectFeatures: empty feature list");
  LabeledDataset out;
  out.features.resize(data.features.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const auto it =
        std::find(data.column_names.begin(), data.column_names.end(), keep[i]);
    if (it == data.column_names.end())
      throw ConfigError("selectFeatures: unknown column '" + keep[i] + "'");
    const auto src = std::distance(data.column_names.begin(), it);
    out.features.col(static_cast<Eigen::Index>(i)) = data.features.col(src);
    if (data.normalized)
      out.ranges.push_back(data.ranges[static_cast<std::size_t>(src)]);
  }
  out.labels = data.labels;
  out.column_names = keep;
  out.label_name = data.label_name;
  out.normalized = data.normalized;
  return out;
}

std::pair<LabeledDataset, LabeledDataset> holdoutSplit(
    const LabeledDataset& data, double train_fraction, Rng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("holdoutSplit: train fraction must lie in (0, 1)");
  const std::size_t n = data.size();
  const auto train_size =
      static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  if (train_size == 0 || train_size >= n)
    throw ConfigError("holdoutSplit: a side of the split would be empty");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  fdo::shuffle(order, rng);
  std::vector<std::size_t> train(order.begin(),
                                 order.begin() + static_cast<std::ptrdiff_t>(train_size));
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(train_size),
                                order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {data.subset(train), data.subset(test)};
}

double standardNormal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

LabeledDataset generateSynthetic(const SyntheticSpec& spec, Rng& rng) {
  if (spec.samples < 2 || spec.features == 0)
    throw ConfigError("synthetic: need at least 2 samples and 1 feature");
  if (!std::isfinite(spec.class_separation) || spec.class_separation < 0.0)
    throw ConfigError("synthetic: class separation must be finite and >= 0");
  if (!(spec.class_balance > 0.0 && spec.class_balance < 1.0))
    throw ConfigError("synthetic: class balance must lie in (0, 1)");
  const auto positives = static_cast<std::size_t>(
      std::llround(spec.class_balance * static_cast<double>(spec.samples)));
  if (positives == 0 || positives == spec.samples)
    throw ConfigError("synthetic: balance leaves one class empty");

  const auto d = static_cast<Eigen::Index>(spec.features);
  Eigen::VectorXd direction(d);
  do {
    for (Eigen::Index k = 0; k < d; ++k) direction(k) = standardNormal(rng);
  } while (direction.norm() == 0.0);
  direction.normalize();
  const Eigen::VectorXd offset = 0.5 * spec.class_separation * direction;

  std::vector<int> labels(spec.samples, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(positives), 1);
  fdo::shuffle(labels, rng);

  LabeledDataset data;
  data.features.resize(static_cast<Eigen::Index>(spec.samples), d);
  for (std::size_t r = 0; r < spec.samples; ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    for (Eigen::Index k = 0; k < d; ++k) data.features(row, k) = standardNormal(rng);
    if (labels[r] == 1)
      data.features.row(row) += offset.transpose();
    else
      data.features.row(row) -= offset.transpose();
  }
  data.labels = std::move(labels);
  for (std::size_t k = 0; k < spec.features; ++k)
    data.column_names.push_back("f" + std::to_string(k + 1));
  return data;
}

}  // namespace fdo::data
