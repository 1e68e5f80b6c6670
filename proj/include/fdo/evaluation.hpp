#pragma once

// Binary classification scoring and k-fold orchestration. Class 1 ("passed")
// is the positive class throughout.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fdo/dataset.hpp"
#include "fdo/random.hpp"
#include "fdo/trainer.hpp"

namespace fdo::eval {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  std::size_t positives() const { return tp + fn; }
  std::size_t negatives() const { return tn + fp; }

  ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Empty optionals mark metrics whose denominator is zero.
struct MetricsReport {
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> ppv;
  std::optional<double> npv;
  std::optional<double> accuracy;
  std::optional<double> auc;
};

ConfusionMatrix confusionMatrix(std::span<const int> predicted,
                                std::span<const int> actual);

/// Sensitivity, specificity, PPV, NPV and accuracy; auc is left empty.
MetricsReport metrics(const ConfusionMatrix& cm);

/// Mann-Whitney AUC with ties counted one half. Empty if a class is absent.
std::optional<double> auc(std::span<const double> scores,
                          std::span<const int> actual);

struct FoldAssignment {
  std::size_t k = 0;
  /// Fold index of every sample.
  std::vector<std::size_t> membership;

  std::vector<std::size_t> foldSizes() const;
  std::vector<std::size_t> testRows(std::size_t fold) const;
  std::vector<std::size_t> trainRows(std::size_t fold) const;
};

/// Folds of floor(n/k) samples, the last n mod k folds one larger. Without an
/// engine samples are assigned in order; with one they are shuffled first.
FoldAssignment kfoldSplits(std::size_t sample_count, std::size_t k,
                           Rng* rng = nullptr);

struct ClassSuccess {
  std::size_t passed_total = 0;
  std::size_t passed_correct = 0;
  std::size_t failed_total = 0;
  std::size_t failed_correct = 0;

  std::optional<double> passedRate() const;
  std::optional<double> failedRate() const;
};

struct PerClassSummary {
  std::vector<ClassSuccess> folds;
  /// Summed counts; its rates are the pooled success rates.
  ClassSuccess total;
  /// Unweighted mean of the per-fold rates (folds with a defined rate).
  std::optional<double> mean_passed_rate;
  std::optional<double> mean_failed_rate;
};

PerClassSummary perClassSuccess(std::span<const ConfusionMatrix> folds);

struct FoldReport {
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double train_mse = 0.0;
  double train_rate = 0.0;
  double test_mse = 0.0;
  double test_rate = 0.0;
  ConfusionMatrix test_confusion;
  MetricsReport test_metrics;
  ConvergenceCurve<double> curve;
};

struct CrossValidationReport {
  std::vector<FoldReport> folds;
  FoldAssignment assignment;
  double mean_train_mse = 0.0;
  double mean_train_rate = 0.0;
  double mean_test_mse = 0.0;
  double mean_test_rate = 0.0;
  PerClassSummary per_class;
};

struct CrossValidationOptions {
  std::size_t k = 5;
  /// Shuffle before assigning folds.
  bool shuffle = false;
  /// Rescale each fold with its training rows' (min, max).
  bool normalize = true;
};

/// Trains on k-1 folds and tests on the held-out one, for every fold. Fold f
/// trains with an engine seeded by deriveSeed(seed, f).
CrossValidationReport crossValidate(const data::LabeledDataset& data,
                                    const train::TrainingConfig& config,
                                    const CrossValidationOptions& options,
                                    std::uint64_t seed);

}  // namespace fdo::eval
