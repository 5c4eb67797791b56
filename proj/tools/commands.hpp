#pragma once

#include <optional>
#include <string>

#include <CLI11.hpp>

namespace lgcn::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kDataError = 2, kUndefinedMetric = 3 };

struct TrainArgs {
  std::optional<std::string> config;
  std::optional<std::string> task;
  std::optional<std::string> geometry;
  std::optional<std::string> activation;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> layers;
  std::optional<double> lr;
  std::optional<double> dropconnect;
  std::optional<double> weight_decay;
  std::optional<std::size_t> max_epochs;
  std::optional<std::size_t> patience;
  std::optional<std::string> edges;
  std::optional<std::string> features;
  std::optional<std::string> labels;
  std::optional<std::string> out;
};

struct AnalyzeArgs {
  std::string edges;
  std::string hyperbolicity = "exact";
  std::uint64_t seed = 0;
  std::optional<std::string> distortion;
  std::optional<std::string> out;
};

struct GenArgs {
  std::string kind;  ///< "tree" or "blocks"
  std::size_t depth = 6;
  std::size_t branching = 2;
  std::size_t n = 40;
  std::size_t blocks = 2;
  double p_in = 0.3;
  double p_out = 0.02;
  std::string features = "onehot";
  double noise = 0.1;
  std::uint64_t seed = 0;
  std::string out = ".";
};

void add_train(CLI::App& app, TrainArgs& args);
void add_analyze(CLI::App& app, AnalyzeArgs& args);
void add_gen(CLI::App& app, GenArgs& args);

int run_train(const TrainArgs& args);
int run_analyze(const AnalyzeArgs& args);
int run_gen(const GenArgs& args);

/// Prints "error: <what>" to stderr and returns `code`.
int fail(int code, const std::string& what);

}  // namespace lgcn::cli
