#pragma once

// Subcommands of the fdomlp tool. Each command reads a fully resolved
// key/value settings map; resolution layers defaults, then a config file,
// then command-line flags.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fdo::cli {

using Settings = std::map<std::string, std::string>;

struct OptionSpec {
  std::string key;
  std::string default_value;
  std::string help;
};

std::vector<std::string> commandNames();

/// Every key a command accepts, with its default ("" = unset).
const std::vector<OptionSpec>& optionsFor(const std::string& command);

/// Parses `key = value` lines; `#` starts a comment.
Settings parseConfig(std::istream& in, const std::string& source = "<config>");
Settings loadConfig(const std::filesystem::path& path);

/// defaults <- config <- flags. Unknown keys in either layer are rejected.
Settings resolveSettings(const std::string& command, const Settings& config,
                         const Settings& flags);

int runTrain(const Settings& s, std::ostream& out);
int runCrossval(const Settings& s, std::ostream& out);
int runBenchmark(const Settings& s, std::ostream& out);
int runGenerate(const Settings& s, std::ostream& out);
int runEvaluate(const Settings& s, std::ostream& out);

/// Dispatches a resolved command. Errors propagate as exceptions.
int runCommand(const std::string& command, const Settings& s, std::ostream& out);

/// Full entry point: argument parsing, config loading, error reporting.
int main(int argc, char** argv);

}  // namespace fdo::cli
