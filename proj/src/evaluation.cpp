#include "fdo/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fdo/errors.hpp"

namespace fdo::eval {

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

double rate(std::span<const int> predicted, std::span<const int> actual) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) hits += predicted[i] == actual[i];
  return static_cast<double>(hits) / static_cast<double>(actual.size());
}

}  // namespace

ConfusionMatrix confusionMatrix(std::span<const int> predicted,
                                std::span<const int> actual) {
  if (predicted.size() != actual.size())
    throw DimensionError("confusion matrix: " + std::to_string(predicted.size()) +
                         " predictions for " + std::to_string(actual.size()) +
                         " labels");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const int p = predicted[i];
    const int a = actual[i];
    if ((p != 0 && p != 1) || (a != 0 && a != 1))
      throw DataError("confusion matrix: non-binary label at index " +
                      std::to_string(i));
    if (a == 1)
      ++(p == 1 ? cm.tp : cm.fn);
    else
      ++(p == 1 ? cm.fp : cm.tn);
  }
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw DataError("metrics of an empty confusion matrix");
  MetricsReport m;
  m.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
  m.specificity = ratio(cm.tn, cm.tn + cm.fp);
  m.ppv = ratio(cm.tp, cm.tp + cm.fp);
  m.npv = ratio(cm.tn, cm.tn + cm.fn);
  m.accuracy = ratio(cm.tp + cm.tn, cm.total());
  return m;
}

std::optional<double> auc(std::span<const double> scores,
                          std::span<const int> actual) {
  if (scores.size() != actual.size())
    throw DimensionError("auc: scores and labels differ in length");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Average 1-based ranks over tied runs, summed over positives.
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start;
    while (end < n && scores[order[end]] == scores[order[start]]) ++end;
    const double mid_rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t i = start; i < end; ++i) {
      if (actual[order[i]] == 1) {
        positive_rank_sum += mid_rank;
        ++positives;
      }
    }
    start = end;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) return std::nullopt;
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

std::vector<std::size_t> FoldAssignment::foldSizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (auto f : membership) ++sizes[f];
  return sizes;
}

std::vector<std::size_t> FoldAssignment::testRows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < membership.size(); ++i)
    if (membership[i] == fold) rows.push_back(i);
  return rows;
}

std::vector<std::size_t> FoldAssignment::trainRows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < membership.size(); ++i)
    if (membership[i] != fold) rows.push_back(i);
  return rows;
}

FoldAssignment kfoldSplits(std::size_t sample_count, std::size_t k, Rng* rng) {
  if (k == 0) throw ConfigError("kfold: k must be >= 1");
  if (k > sample_count)
    throw ConfigError("kfold: k = " + std::to_string(k) + " exceeds " +
                      std::to_string(sample_count) + " samples");
  std::vector<std::size_t> order(sample_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (rng) fdo::shuffle(order, *rng);

  const std::size_t base = sample_count / k;
  const std::size_t larger = sample_count % k;
  FoldAssignment folds{k, std::vector<std::size_t>(sample_count)};
  std::size_t at = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f >= k - larger ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) folds.membership[order[at++]] = f;
  }
  return folds;
}

std::optional<double> ClassSuccess::passedRate() const {
  return ratio(passed_correct, passed_total);
}

std::optional<double> ClassSuccess::failedRate() const {
  return ratio(failed_correct, failed_total);
}

PerClassSummary perClassSuccess(std::span<const ConfusionMatrix> folds) {
  PerClassSummary summary;
  double passed_sum = 0.0;
  double failed_sum = 0.0;
  std::size_t passed_n = 0;
  std::size_t failed_n = 0;
  for (const auto& cm : folds) {
    const ClassSuccess s{cm.tp + cm.fn, cm.tp, cm.tn + cm.fp, cm.tn};
    summary.folds.push_back(s);
    summary.total.passed_total += s.passed_total;
    summary.total.passed_correct += s.passed_correct;
    summary.total.failed_total += s.failed_total;
    summary.total.failed_correct += s.failed_correct;
    if (auto r = s.passedRate()) passed_sum += *r, ++passed_n;
    if (auto r = s.failedRate()) failed_sum += *r, ++failed_n;
  }
  if (passed_n) summary.mean_passed_rate = passed_sum / static_cast<double>(passed_n);
  if (failed_n) summary.mean_failed_rate = failed_sum / static_cast<double>(failed_n);
  return summary;
}

CrossValidationReport crossValidate(const data::LabeledDataset& data,
                                    const train::TrainingConfig& config,
                                    const CrossValidationOptions& options,
                                    std::uint64_t seed) {
  data.validate();
  Rng split_rng(deriveSeed(seed, 0xF01D));
  CrossValidationReport report;
  report.assignment =
      kfoldSplits(data.size(), options.k, options.shuffle ? &split_rng : nullptr);

  std::vector<ConfusionMatrix> confusions;
  for (std::size_t f = 0; f < options.k; ++f) {
    auto train_set = data.subset(report.assignment.trainRows(f));
    auto test_set = data.subset(report.assignment.testRows(f));
    if (train_set.countLabel(0) == 0 || train_set.countLabel(1) == 0)
      throw DataError("cross-validation: training data for fold " +
                      std::to_string(f + 1) + " contains a single class");
    if (options.normalize) {
      train_set.normalized = false;
      train_set = data::minMaxNormalize(train_set);
      test_set = data::applyNormalization(test_set, train_set.ranges);
    }

    Rng fold_rng(deriveSeed(seed, f));
    const auto model = train::trainModel(train_set, config, fold_rng);

    FoldReport fold;
    fold.fold = f + 1;
    fold.train_size = train_set.size();
    fold.test_size = test_set.size();
    fold.train_mse = model.train_mse;
    fold.train_rate = rate(train::predictLabels(model.params, train_set, config.threshold),
                           train_set.labels);
    fold.test_mse = train::mseFitness(model.params, test_set);
    const auto predicted =
        train::predictLabels(model.params, test_set, config.threshold);
    fold.test_rate = rate(predicted, test_set.labels);
    fold.test_confusion = confusionMatrix(predicted, test_set.labels);
    fold.test_metrics = metrics(fold.test_confusion);
    fold.test_metrics.auc =
        auc(train::outputScores(model.params, test_set), test_set.labels);
    fold.curve = model.curve;
    confusions.push_back(fold.test_confusion);
    report.folds.push_back(std::move(fold));
  }

  for (const auto& f : report.folds) {
    report.mean_train_mse += f.train_mse;
    report.mean_train_rate += f.train_rate;
    report.mean_test_mse += f.test_mse;
    report.mean_test_rate += f.test_rate;
  }
  const double k = static_cast<double>(options.k);
  report.mean_train_mse /= k;
  report.mean_train_rate /= k;
  report.mean_test_mse /= k;
  report.mean_test_rate /= k;
  report.per_class = perClassSuccess(confusions);
  return report;
}

}  // namespace fdo::eval
