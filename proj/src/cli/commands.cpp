#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fdo/benchmarks.hpp"
#include "fdo/dataset.hpp"
#include "fdo/errors.hpp"
#include "fdo/evaluation.hpp"
#include "fdo/io.hpp"
#include "fdo/text.hpp"
#include "fdo/trainer.hpp"

namespace fdo::cli {

namespace fs = std::filesystem;

namespace {

const std::string kSeed = std::to_string(kDefaultSeed);

const std::vector<OptionSpec> kTrainingKeys = {
    {"data", "", "dataset CSV (header row, binary label column)"},
    {"label", "label", "name of the label column"},
    {"features", "", "comma-separated feature columns to keep (default: all)"},
    {"normalize", "true", "min-max scale features with training ranges"},
    {"method", "fdo", "trainer: fdo or bp"},
    {"preset", "agents40-iter75", "FDO budget: agents40-iter75 or agents40-iter200"},
    {"population", "", "scout count (overrides preset)"},
    {"iterations", "", "FDO iterations (overrides preset)"},
    {"weight_factor", "0", "wf in [0, 1]"},
    {"weight_lower", "-1", "lower bound of every weight and bias"},
    {"weight_upper", "1", "upper bound of every weight and bias"},
    {"hidden", "0", "hidden units (0: 2N+1)"},
    {"outputs", "1", "output units (1: thresholded, >1: one-hot argmax)"},
    {"output_activation", "linear", "linear or sigmoid"},
    {"threshold", "0.5", "decision threshold for a single output"},
    {"learning_rate", "0.5", "backprop learning rate"},
    {"epochs", "5000", "backprop epochs"},
    {"threads", "1", "objective evaluation threads"},
    {"seed", kSeed, "random seed"},
    {"out_dir", ".", "output directory"},
};

std::vector<OptionSpec> withExtra(std::vector<OptionSpec> base,
                                  std::vector<OptionSpec> extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

const std::map<std::string, std::vector<OptionSpec>>& optionTable() {
  static const std::map<std::string, std::vector<OptionSpec>> table = {
      {"train",
       withExtra(kTrainingKeys,
                 {{"train_fraction", "1",
                   "fraction of rows used for training; the rest is tested "
                   "(1: train on everything)"}})},
      {"crossval",
       withExtra(kTrainingKeys,
                 {{"k", "5", "number of folds"},
                  {"shuffle", "false", "shuffle samples before assigning folds"}})},
      {"benchmark",
       {{"function", "sphere", "sphere, rastrigin or rosenbrock"},
        {"dimension", "10", "problem dimension"},
        {"repeats", "10", "independent seeded runs"},
        {"population", "30", "scout count"},
        {"iterations", "500", "FDO iterations"},
        {"weight_factor", "0", "wf in [0, 1]"},
        {"lower", "", "lower bound (default: the function's box)"},
        {"upper", "", "upper bound (default: the function's box)"},
        {"threads", "1", "objective evaluation threads"},
        {"seed", kSeed, "random seed"},
        {"out_dir", ".", "output directory"}}},
      {"generate",
       {{"samples", "287", "number of rows"},
        {"features", "18", "number of feature columns"},
        {"separation", "6", "distance between class means"},
        {"balance", text::shortest(183.0 / 287.0), "fraction of label-1 rows"},
        {"output", "synthetic.csv", "file name, relative to out_dir"},
        {"seed", kSeed, "random seed"},
        {"out_dir", ".", "output directory"}}},
      {"evaluate",
       {{"model", "", "model file written by train"},
        {"data", "", "dataset CSV"},
        {"label", "label", "name of the label column"},
        {"features", "", "comma-separated feature columns to keep"},
        {"ranges", "", "ranges.csv written by train (applies its scaling)"},
        {"threshold", "0.5", "decision threshold for a single output"},
        {"out_dir", ".", "output directory"}}},
  };
  return table;
}

// Typed access to a resolved settings map.
class Reader {
 public:
  explicit Reader(const Settings& s) : s_(s) {}

  const std::string& str(const std::string& key) const {
    const auto it = s_.find(key);
    if (it == s_.end()) throw ConfigError("missing setting '" + key + "'");
    return it->second;
  }
  const std::string& required(const std::string& key) const {
    const auto& v = str(key);
    if (v.empty()) throw ConfigError("'" + key + "' is required");
    return v;
  }
  bool has(const std::string& key) const { return !str(key).empty(); }

  double real(const std::string& key) const {
    const auto& v = required(key);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
      throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
    return out;
  }
  std::uint64_t count(const std::string& key) const {
    const auto& v = required(key);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
      throw ConfigError("'" + key + "' expects a non-negative integer, got '" +
                        v + "'");
    return out;
  }
  bool flag(const std::string& key) const {
    const auto& v = required(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("'" + key + "' expects true or false, got '" + v + "'");
  }
  std::vector<std::string> list(const std::string& key) const {
    std::vector<std::string> items;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (!item.empty()) items.push_back(item);
    }
    return items;
  }

 private:
  const Settings& s_;
};

std::string orNa(const std::optional<double>& v) {
  return v ? text::shortest(*v) : "n/a";
}

std::string shown(const std::optional<double>& v, int decimals = 2) {
  return v ? text::truncated(*v, decimals) : "n/a";
}

std::string percent(double rate) { return text::fixed(rate * 100.0, 2) + " %"; }

std::string render(const std::function<void(std::ostream&)>& writer) {
  std::ostringstream os;
  writer(os);
  return os.str();
}

// Every output is rendered before any file is touched.
void commitFiles(const fs::path& dir,
                 const std::vector<std::pair<std::string, std::string>>& files) {
  fs::create_directories(dir);
  for (const auto& [name, content] : files)
    io::writeFileAtomically(dir / name,
                            [&](std::ostream& os) { os << content; });
}

data::LabeledDataset loadData(const Reader& r) {
  auto data = data::loadCsv(r.required("data"), r.str("label"));
  const auto keep = r.list("features");
  if (!keep.empty()) data = data::selectFeatures(data, keep);
  if (data.size() == 0) throw DataError("dataset has no rows");
  return data;
}

train::TrainingConfig trainingConfig(const Reader& r, std::size_t features) {
  auto config = train::preset(r.str("preset"), features);
  const auto method = r.str("method");
  if (method == "fdo")
    config.method = train::Method::Fdo;
  else if (method == "bp")
    config.method = train::Method::Backprop;
  else
    throw ConfigError("method must be fdo or bp, got '" + method + "'");
  if (r.has("population")) config.fdo.population = r.count("population");
  if (r.has("iterations")) config.fdo.max_iterations = r.count("iterations");
  config.fdo.weight_factor = r.real("weight_factor");
  config.fdo.threads = r.count("threads");
  config.fdo.seed = r.count("seed");
  config.weight_lower = r.real("weight_lower");
  config.weight_upper = r.real("weight_upper");
  if (const auto hidden = r.count("hidden")) config.topology.hidden = hidden;
  config.topology.outputs = r.count("outputs");
  const auto activation = r.str("output_activation");
  if (activation == "sigmoid")
    config.topology.output_activation = mlp::OutputActivation::Sigmoid;
  else if (activation != "linear")
    throw ConfigError("output_activation must be linear or sigmoid");
  config.threshold = r.real("threshold");
  config.backprop.learning_rate = r.real("learning_rate");
  config.backprop.epochs = r.count("epochs");
  config.validate();
  return config;
}

struct SplitScore {
  std::string split;
  std::size_t samples = 0;
  double mse = 0.0;
  eval::ConfusionMatrix cm;
  eval::MetricsReport metrics;
};

SplitScore score(const std::string& split, const mlp::Params<double>& params,
                 const data::LabeledDataset& data, double threshold) {
  SplitScore s;
  s.split = split;
  s.samples = data.size();
  s.mse = train::mseFitness(params, data);
  s.cm = eval::confusionMatrix(train::predictLabels(params, data, threshold),
                               data.labels);
  s.metrics = eval::metrics(s.cm);
  s.metrics.auc = eval::auc(train::outputScores(params, data), data.labels);
  return s;
}

void writeScores(const std::vector<SplitScore>& scores, std::ostream& os) {
  os << "split,samples,mse,accuracy,auc,sensitivity,specificity,ppv,npv,tp,fp,"
        "fn,tn\n";
  for (const auto& s : scores) {
    const auto& m = s.metrics;
    os << s.split << ',' << s.samples << ',' << text::shortest(s.mse) << ','
       << orNa(m.accuracy) << ',' << orNa(m.auc) << ',' << orNa(m.sensitivity)
       << ',' << orNa(m.specificity) << ',' << orNa(m.ppv) << ','
       << orNa(m.npv) << ',' << s.cm.tp << ',' << s.cm.fp << ',' << s.cm.fn
       << ',' << s.cm.tn << '\n';
  }
}

void printScore(const SplitScore& s, std::ostream& out) {
  const auto& m = s.metrics;
  out << "[" << s.split << "] samples " << s.samples << "  MSE "
      << text::fixed(s.mse, 6) << '\n'
      << "  confusion matrix   predicted 1   predicted 0\n"
      << "    actual 1         " << std::setw(11) << s.cm.tp << "   "
      << std::setw(11) << s.cm.fn << '\n'
      << "    actual 0         " << std::setw(11) << s.cm.fp << "   "
      << std::setw(11) << s.cm.tn << '\n'
      << "  Sensitivity " << shown(m.sensitivity) << "  Specificity "
      << shown(m.specificity) << "  PPV " << shown(m.ppv) << "  NPV "
      << shown(m.npv) << "  Accuracy " << shown(m.accuracy) << "  AUC "
      << shown(m.auc) << '\n';
}

std::string foldDatasetName(std::size_t k, std::size_t held_out, bool training) {
  if (!training) return "X" + std::to_string(held_out);
  std::string name;
  for (std::size_t f = 1; f <= k; ++f) {
    if (f == held_out) continue;
    if (!name.empty()) name += '+';
    name += "X" + std::to_string(f);
  }
  return name;
}

}  // namespace

std::vector<std::string> commandNames() {
  return {"train", "crossval", "benchmark", "generate", "evaluate"};
}

const std::vector<OptionSpec>& optionsFor(const std::string& command) {
  const auto& table = optionTable();
  const auto it = table.find(command);
  if (it == table.end()) throw ConfigError("unknown command '" + command + "'");
  return it->second;
}

Settings parseConfig(std::istream& in, const std::string& source) {
  Settings settings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    auto key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    if (key.empty())
      throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
    settings[key] = trim(line.substr(eq + 1));
  }
  return settings;
}

Settings loadConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  return parseConfig(in, path.string());
}

Settings resolveSettings(const std::string& command, const Settings& config,
                         const Settings& flags) {
  Settings resolved;
  for (const auto& opt : optionsFor(command)) resolved[opt.key] = opt.default_value;
  for (const auto* layer : {&config, &flags}) {
    for (const auto& [key, value] : *layer) {
      if (!resolved.contains(key))
        throw ConfigError("unknown key '" + key + "' for command '" + command +
                          "'");
      resolved[key] = value;
    }
  }
  return resolved;
}

int runTrain(const Settings& s, std::ostream& out) {
  const Reader r(s);
  const fs::path dir = r.str("out_dir");
  const std::uint64_t seed = r.count("seed");
  const double fraction = r.real("train_fraction");
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw ConfigError("train_fraction must lie in (0, 1]");

  const auto data = loadData(r);
  data::LabeledDataset train_set = data;
  std::optional<data::LabeledDataset> test_set;
  if (fraction < 1.0) {
    Rng split_rng(deriveSeed(seed, 1));
    auto [a, b] = data::holdoutSplit(data, fraction, split_rng);
    train_set = std::move(a);
    test_set = std::move(b);
  }
  const bool normalize = r.flag("normalize");
  if (normalize) {
    train_set = data::minMaxNormalize(train_set);
    if (test_set) *test_set = data::applyNormalization(*test_set, train_set.ranges);
  }
  const auto config = trainingConfig(r, train_set.featureCount());

  Rng rng(seed);
  const auto model = train::trainModel(train_set, config, rng);

  std::vector<SplitScore> scores{
      score("train", model.params, train_set, config.threshold)};
  if (test_set) scores.push_back(score("test", model.params, *test_set, config.threshold));

  std::vector<std::pair<std::string, std::string>> files = {
      {"model.txt", render([&](std::ostream& os) { io::writeModel(model.params, os); })},
      {"convergence.csv", render([&](std::ostream& os) { io::writeCurve(model.curve, os); })},
      {"metrics.csv", render([&](std::ostream& os) { writeScores(scores, os); })},
  };
  if (normalize)
    files.emplace_back("ranges.csv", render([&](std::ostream& os) {
                         io::writeRanges(train_set, os);
                       }));
  commitFiles(dir, files);

  const auto& t = config.topology;
  out << (config.method == train::Method::Fdo ? "FDO-MLP" : "BP-MLP")
      << " topology " << t.inputs << '-' << t.hidden << '-' << t.outputs << " ("
      << mlp::vectorDimension(t) << " parameters), " << model.curve.size()
      << (config.method == train::Method::Fdo ? " iterations" : " epochs")
      << ", " << model.evaluations << " evaluations\n";
  for (const auto& sc : scores) printScore(sc, out);
  out << "wrote " << files.size() << " files to " << dir.string() << '\n';
  return 0;
}

int runCrossval(const Settings& s, std::ostream& out) {
  const Reader r(s);
  const fs::path dir = r.str("out_dir");
  const auto k = r.count("k");
  if (k < 2) throw ConfigError("k must be at least 2");
  const auto data = loadData(r);
  const auto config = trainingConfig(r, data.featureCount());
  const eval::CrossValidationOptions options{k, r.flag("shuffle"), r.flag("normalize")};
  const auto report = eval::crossValidate(data, config, options, r.count("seed"));

  const auto folds_csv = render([&](std::ostream& os) {
    os << "fold,role,dataset,samples,mse,classification_rate\n";
    for (const auto& f : report.folds) {
      os << f.fold << ",training," << foldDatasetName(k, f.fold, true) << ','
         << f.train_size << ',' << text::shortest(f.train_mse) << ','
         << text::shortest(f.train_rate) << '\n';
      os << f.fold << ",testing," << foldDatasetName(k, f.fold, false) << ','
         << f.test_size << ',' << text::shortest(f.test_mse) << ','
         << text::shortest(f.test_rate) << '\n';
    }
    os << "average,training,,," << text::shortest(report.mean_train_mse) << ','
       << text::shortest(report.mean_train_rate) << '\n';
    os << "average,testing,,," << text::shortest(report.mean_test_mse) << ','
       << text::shortest(report.mean_test_rate) << '\n';
  });

  const auto& pc = report.per_class;
  const auto classes_csv = render([&](std::ostream& os) {
    os << "fold,samples,passed_total,passed_correct,passed_rate,failed_total,"
          "failed_correct,failed_rate\n";
    for (std::size_t i = 0; i < pc.folds.size(); ++i) {
      const auto& c = pc.folds[i];
      os << i + 1 << ',' << c.passed_total + c.failed_total << ','
         << c.passed_total << ',' << c.passed_correct << ','
         << orNa(c.passedRate()) << ',' << c.failed_total << ','
         << c.failed_correct << ',' << orNa(c.failedRate()) << '\n';
    }
    const auto& t = pc.total;
    os << "total," << t.passed_total + t.failed_total << ',' << t.passed_total
       << ',' << t.passed_correct << ',' << orNa(t.passedRate()) << ','
       << t.failed_total << ',' << t.failed_correct << ','
       << orNa(t.failedRate()) << '\n';
  });

  const auto metrics_csv = render([&](std::ostream& os) {
    os << "fold,tp,fp,fn,tn,sensitivity,specificity,ppv,npv,accuracy,auc\n";
    for (const auto& f : report.folds) {
      const auto& m = f.test_metrics;
      const auto& cm = f.test_confusion;
      os << f.fold << ',' << cm.tp << ',' << cm.fp << ',' << cm.fn << ','
         << cm.tn << ',' << orNa(m.sensitivity) << ',' << orNa(m.specificity)
         << ',' << orNa(m.ppv) << ',' << orNa(m.npv) << ',' << orNa(m.accuracy)
         << ',' << orNa(m.auc) << '\n';
    }
  });

  const auto curves_csv = render([&](std::ostream& os) {
    os << "fold,iteration,best_mse\n";
    for (const auto& f : report.folds)
      for (std::size_t i = 0; i < f.curve.values.size(); ++i)
        os << f.fold << ',' << i + 1 << ',' << text::shortest(f.curve.values[i])
           << '\n';
  });

  commitFiles(dir, {{"crossval_folds.csv", folds_csv},
                    {"crossval_classes.csv", classes_csv},
                    {"crossval_metrics.csv", metrics_csv},
                    {"crossval_curves.csv", curves_csv}});

  out << "Fold  Role      Dataset          Samples  MSE         Rate\n";
  for (const auto& f : report.folds) {
    out << std::left << std::setw(6) << f.fold << std::setw(10) << "training"
        << std::setw(17) << foldDatasetName(k, f.fold, true) << std::setw(9)
        << f.train_size << std::setw(12) << text::fixed(f.train_mse, 7)
        << percent(f.train_rate) << '\n';
    out << std::setw(6) << "" << std::setw(10) << "testing" << std::setw(17)
        << foldDatasetName(k, f.fold, false) << std::setw(9) << f.test_size
        << std::setw(12) << text::fixed(f.test_mse, 7) << percent(f.test_rate)
        << '\n';
  }
  out << std::setw(6) << "avg" << std::setw(10) << "training" << std::setw(26)
      << "" << std::setw(12) << text::fixed(report.mean_train_mse, 7)
      << percent(report.mean_train_rate) << '\n';
  out << std::setw(6) << "" << std::setw(10) << "testing" << std::setw(26) << ""
      << std::setw(12) << text::fixed(report.mean_test_mse, 7)
      << percent(report.mean_test_rate) << std::right << "\n\n";

  out << "Fold  Passed (correct/total)   Failed (correct/total)\n";
  for (std::size_t i = 0; i < pc.folds.size(); ++i) {
    const auto& c = pc.folds[i];
    out << std::left << std::setw(6) << i + 1 << std::setw(25)
        << (std::to_string(c.passed_correct) + "/" + std::to_string(c.passed_total) +
            "  " + (c.passedRate() ? percent(*c.passedRate()) : "n/a"))
        << std::to_string(c.failed_correct) + "/" + std::to_string(c.failed_total) +
               "  " + (c.failedRate() ? percent(*c.failedRate()) : "n/a")
        << std::right << '\n';
  }
  out << "total " << pc.total.passed_correct << '/' << pc.total.passed_total
      << "  " << shown(pc.total.passedRate(), 4) << "   "
      << pc.total.failed_correct << '/' << pc.total.failed_total << "  "
      << shown(pc.total.failedRate(), 4) << "\n\n";

  out << "Fold  Sensitivity  Specificity  PPV   NPV   Accuracy\n";
  for (const auto& f : report.folds) {
    const auto& m = f.test_metrics;
    out << std::left << std::setw(6) << f.fold << std::setw(13)
        << shown(m.sensitivity) << std::setw(13) << shown(m.specificity)
        << std::setw(6) << shown(m.ppv) << std::setw(6) << shown(m.npv)
        << shown(m.accuracy) << std::right << '\n';
  }
  return 0;
}

int runBenchmark(const Settings& s, std::ostream& out) {
  const Reader r(s);
  const fs::path dir = r.str("out_dir");
  const auto function = bench::makeBenchmark<double>(r.str("function"),
                                                     r.count("dimension"));
  const auto repeats = r.count("repeats");
  if (repeats == 0) throw ConfigError("repeats must be >= 1");

  FdoConfig<double> config;
  config.population = r.count("population");
  config.max_iterations = r.count("iterations");
  config.weight_factor = r.real("weight_factor");
  config.threads = r.count("threads");
  config.bounds = function.defaultBounds();
  if (r.has("lower")) config.bounds.lower.setConstant(r.real("lower"));
  if (r.has("upper")) config.bounds.upper.setConstant(r.real("upper"));
  config.validate();

  const std::uint64_t seed = r.count("seed");
  std::vector<OptimizationResult<double>> runs;
  std::vector<double> bests;
  for (std::size_t run = 0; run < repeats; ++run) {
    auto run_config = config;
    run_config.seed = deriveSeed(seed, run);
    runs.push_back(optimize(function.evaluate, run_config));
    bests.push_back(runs.back().best_fitness);
  }
  const auto stats = train::runStatistics(bests, train::Direction::LowerIsBetter);
  auto sorted = bests;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted.size() % 2
                            ? sorted[sorted.size() / 2]
                            : 0.5 * (sorted[sorted.size() / 2 - 1] +
                                     sorted[sorted.size() / 2]);

  const auto stats_csv = render([&](std::ostream& os) {
    os << "statistic,value\n"
       << "average," << text::shortest(stats.average) << '\n'
       << "std," << text::shortest(stats.std_dev) << '\n'
       << "best," << text::shortest(stats.best) << '\n'
       << "worst," << text::shortest(stats.worst) << '\n'
       << "median," << text::shortest(median) << '\n';
  });
  const auto runs_csv = render([&](std::ostream& os) {
    os << "run,seed,best_fitness,evaluations\n";
    for (std::size_t i = 0; i < runs.size(); ++i)
      os << i + 1 << ',' << deriveSeed(seed, i) << ','
         << text::shortest(runs[i].best_fitness) << ',' << runs[i].evaluations
         << '\n';
  });
  const auto curves_csv = render([&](std::ostream& os) {
    os << "run,iteration,best_fitness\n";
    for (std::size_t i = 0; i < runs.size(); ++i)
      for (std::size_t t = 0; t < runs[i].curve.values.size(); ++t)
        os << i + 1 << ',' << t + 1 << ','
           << text::shortest(runs[i].curve.values[t]) << '\n';
  });
  commitFiles(dir, {{"benchmark_stats.csv", stats_csv},
                    {"benchmark_runs.csv", runs_csv},
                    {"benchmark_curves.csv", curves_csv}});

  out << function.name << " d=" << function.dimension << ", " << repeats
      << " runs of " << config.population << " scouts x "
      << config.max_iterations << " iterations\n"
      << "  AVG   " << text::shortest(stats.average) << '\n'
      << "  STD   " << text::shortest(stats.std_dev) << '\n'
      << "  Best  " << text::shortest(stats.best) << '\n'
      << "  Worst " << text::shortest(stats.worst) << '\n'
      << "  Median " << text::shortest(median) << '\n';
  return 0;
}

int runGenerate(const Settings& s, std::ostream& out) {
  const Reader r(s);
  const fs::path dir = r.str("out_dir");
  data::SyntheticSpec spec;
  spec.samples = r.count("samples");
  spec.features = r.count("features");
  spec.class_separation = r.real("separation");
  spec.class_balance = r.real("balance");
  const std::string name = r.required("output");

  Rng rng(r.count("seed"));
  const auto data = data::generateSynthetic(spec, rng);
  commitFiles(dir, {{name, render([&](std::ostream& os) { data::writeCsv(data, os); })}});
  out << "wrote " << data.size() << " samples x " << data.featureCount()
      << " features (" << data.countLabel(1) << " labelled 1, "
      << data.countLabel(0) << " labelled 0) to " << (dir / name).string()
      << '\n';
  return 0;
}

int runEvaluate(const Settings& s, std::ostream& out) {
  const Reader r(s);
  const fs::path dir = r.str("out_dir");
  const auto params = io::loadModel(r.required("model"));
  auto data = loadData(r);
  if (r.has("ranges"))
    data = data::applyNormalization(data, io::loadRanges(r.str("ranges")));
  if (data.featureCount() != params.topology.inputs)
    throw DimensionError("model expects " + std::to_string(params.topology.inputs) +
                         " features but the dataset has " +
                         std::to_string(data.featureCount()));
  const auto result = score("evaluate", params, data, r.real("threshold"));
  commitFiles(dir, {{"evaluation.csv",
                     render([&](std::ostream& os) { writeScores({result}, os); })}});
  printScore(result, out);
  return 0;
}

int runCommand(const std::string& command, const Settings& s, std::ostream& out) {
  if (command == "train") return runTrain(s, out);
  if (command == "crossval") return runCrossval(s, out);
  if (command == "benchmark") return runBenchmark(s, out);
  if (command == "generate") return runGenerate(s, out);
  if (command == "evaluate") return runEvaluate(s, out);
  throw ConfigError("unknown command '" + command + "'");
}

int main(int argc, char** argv) {
  CLI::App app{"Fitness Dependent Optimizer and FDO-trained perceptrons"};
  app.require_subcommand(1);

  struct Parsed {
    std::string config;
    std::map<std::string, std::string> values;
  };
  std::map<std::string, Parsed> parsed;
  std::map<std::string, std::vector<CLI::Option*>> options;

  for (const auto& command : commandNames()) {
    auto* sub = app.add_subcommand(command);
    auto& p = parsed[command];
    sub->add_option("--config", p.config, "key = value configuration file");
    for (const auto& opt : optionsFor(command)) {
      std::string flag = opt.key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      auto help = opt.help;
      if (!opt.default_value.empty()) help += " [" + opt.default_value + "]";
      options[command].push_back(
          sub->add_option("--" + flag, p.values[opt.key], help));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  for (const auto* sub : app.get_subcommands()) {
    const auto command = sub->get_name();
    try {
      const auto& p = parsed[command];
      Settings flags;
      for (const auto* opt : options[command]) {
        if (opt->count() == 0) continue;
        auto key = opt->get_name().substr(2);
        std::replace(key.begin(), key.end(), '-', '_');
        flags[key] = p.values.at(key);
      }
      const Settings config = p.config.empty() ? Settings{} : loadConfig(p.config);
      return runCommand(command, resolveSettings(command, config, flags), std::cout);
    } catch (const std::exception& e) {
      std::cerr << "fdomlp " << command << ": " << e.what() << '\n';
      return 1;
    }
  }
  return 1;
}

}  // namespace fdo::cli
