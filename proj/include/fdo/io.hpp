#pragma once

// Text formats shared by the CLI.
//
// Model file:  line 1 "n m o" (plus " sigmoid" for a squashed output layer),
//              line 2 the flat parameter vector, space separated, printed with
//              the shortest round-trip decimal form.
// Curve CSV:   header "iteration,best_mse", then one row per iteration.
// Ranges CSV:  header "column,min,max", one row per feature.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fdo/dataset.hpp"
#include "fdo/mlp.hpp"

namespace fdo::io {

void writeModel(const mlp::Params<double>& params, std::ostream& out);
mlp::Params<double> readModel(std::istream& in,
                              const std::string& source = "<stream>");
mlp::Params<double> loadModel(const std::filesystem::path& path);

void writeCurve(const ConvergenceCurve<double>& curve, std::ostream& out);

void writeRanges(const data::LabeledDataset& data, std::ostream& out);
std::vector<data::ColumnRange> loadRanges(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames it into place, so a failed
/// writer never leaves a partial file behind.
void writeFileAtomically(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& writer);

}  // namespace fdo::io
