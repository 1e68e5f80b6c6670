#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fdo/random.hpp"

namespace fdo::data {

struct ColumnRange {
  double min = 0.0;
  double max = 0.0;
};

/// Feature matrix (one sample per row) with binary labels.
struct LabeledDataset {
  Eigen::MatrixXd features;
  std::vector<int> labels;
  std::vector<std::string> column_names;
  std::string label_name = "label";
  /// Set once min-max scaling has been applied; ranges then holds the
  /// per-column (min, max) that produced it.
  bool normalized = false;
  std::vector<ColumnRange> ranges;

  std::size_t size() const { return labels.size(); }
  std::size_t featureCount() const {
    return static_cast<std::size_t>(features.cols());
  }
  std::size_t countLabel(int label) const;

  /// Rows in the given order; normalization state is carried over.
  LabeledDataset subset(const std::vector<std::size_t>& rows) const;

  /// Throws DataError unless rows, labels and names agree.
  void validate() const;
};

LabeledDataset parseCsv(std::istream& in, const std::string& label_column,
                        const std::string& source = "<stream>");
LabeledDataset loadCsv(const std::filesystem::path& path,
                       const std::string& label_column);

/// Header row then one line per sample; features first, label last.
void writeCsv(const LabeledDataset& data, std::ostream& out);

/// Scales each column to [0, 1] via (x - min) / (max - min). Constant columns
/// map to 0. Already-normalized input is returned unchanged.
LabeledDataset minMaxNormalize(const LabeledDataset& data);

/// Applies previously recorded ranges (e.g. a training split's) to new data.
/// Values outside the recorded range fall outside [0, 1].
LabeledDataset applyNormalization(const LabeledDataset& data,
                                  const std::vector<ColumnRange>& ranges);

/// Maps normalized features back to the original scale.
Eigen::MatrixXd denormalize(const Eigen::MatrixXd& features,
                            const std::vector<ColumnRange>& ranges);

/// Keeps the named columns in the order given.
LabeledDataset selectFeatures(const LabeledDataset& data,
                              const std::vector<std::string>& keep);

/// Shuffled split with round(train_fraction * n) training rows. Rows keep
/// their original relative order inside each side.
std::pair<LabeledDataset, LabeledDataset> holdoutSplit(
    const LabeledDataset& data, double train_fraction, Rng& rng);

struct SyntheticSpec {
  std::size_t samples = 287;
  std::size_t features = 18;
  /// Distance between the two class means.
  double class_separation = 6.0;
  /// Fraction of samples labelled 1.
  double class_balance = 183.0 / 287.0;
};

/// Two unit-variance Gaussian clusters whose means lie class_separation apart
/// along a random unit direction. Exactly round(balance * samples) positives.
LabeledDataset generateSynthetic(const SyntheticSpec& spec, Rng& rng);

/// Standard normal draw (Box-Muller on the portable uniform source).
double standardNormal(Rng& rng);

}  // namespace fdo::data
