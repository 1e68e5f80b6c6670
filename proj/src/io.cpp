#include "fdo/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fdo/errors.hpp"
#include "fdo/text.hpp"

namespace fdo::io {

void writeModel(const mlp::Params<double>& params, std::ostream& out) {
  const auto& t = params.topology;
  out << t.inputs << ' ' << t.hidden << ' ' << t.outputs;
  if (t.output_activation == mlp::OutputActivation::Sigmoid) out << " sigmoid";
  out << '\n';
  const auto flat = mlp::encode(params);
  for (Eigen::Index i = 0; i < flat.size(); ++i) {
    if (i) out << ' ';
    out << text::shortest(flat(i));
  }
  out << '\n';
}

mlp::Params<double> readModel(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": missing topology line");
  std::istringstream head(line);
  mlp::Topology t;
  if (!(head >> t.inputs >> t.hidden >> t.outputs))
    throw DataError(source + ": topology line must read 'n m o'");
  std::string extra;
  if (head >> extra) {
    if (extra != "sigmoid")
      throw DataError(source + ": unknown output activation '" + extra + "'");
    t.output_activation = mlp::OutputActivation::Sigmoid;
  }
  t.validate();

  if (!std::getline(in, line)) throw DataError(source + ": missing parameter line");
  std::istringstream body(line);
  std::vector<double> values;
  std::string token;
  while (body >> token) {
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw DataError(source + ": bad parameter '" + token + "'");
    values.push_back(v);
  }
  if (values.size() != mlp::vectorDimension(t))
    throw DataError(source + ": expected " + std::to_string(mlp::vectorDimension(t)) +
                    " parameters, found " + std::to_string(values.size()));
  const Eigen::Map<const Vector<double>> flat(values.data(),
                                              static_cast<Eigen::Index>(values.size()));
  return mlp::decode(Vector<double>(flat), t);
}

mlp::Params<double> loadModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model '" + path.string() + "'");
  return readModel(in, path.string());
}

void writeCurve(const ConvergenceCurve<double>& curve, std::ostream& out) {
  out << "iteration,best_mse\n";
  for (std::size_t i = 0; i < curve.values.size(); ++i)
    out << i + 1 << ',' << text::shortest(curve.values[i]) << '\n';
}

void writeRanges(const data::LabeledDataset& data, std::ostream& out) {
  out << "column,min,max\n";
  for (std::size_t c = 0; c < data.ranges.size(); ++c)
    out << data.column_names[c] << ',' << text::shortest(data.ranges[c].min) << ','
        << text::shortest(data.ranges[c].max) << '\n';
}

std::vector<data::ColumnRange> loadRanges(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open ranges '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  std::vector<data::ColumnRange> ranges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.rfind(',');
    const auto b = line.rfind(',', a - 1);
    if (a == std::string::npos || b == std::string::npos)
      throw DataError(path.string() + ": malformed line '" + line + "'");
    try {
      ranges.push_back({std::stod(line.substr(b + 1, a - b - 1)),
                        std::stod(line.substr(a + 1))});
    } catch (const std::exception&) {
      throw DataError(path.string() + ": malformed line '" + line + "'");
    }
  }
  return ranges;
}

void writeFileAtomically(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& writer) {
  auto temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + temp.string() + "'");
    try {
      writer(out);
    } catch (...) {
      out.close();
      std::filesystem::remove(temp);
      throw;
    }
    if (!out.flush()) throw DataError("write failed for '" + temp.string() + "'");
  }
  std::filesystem::rename(temp, path);
}

}  // namespace fdo::io
