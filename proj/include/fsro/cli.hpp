#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "fsro/bench.hpp"
#include "fsro/data.hpp"

namespace fsro::cli {

/// Fully resolved settings of one CLI invocation.
struct RunConfig {
  std::string dataset_path;
  /// "m-of-n:n_relevant,m,n_noise,n_instances".
  std::string synthetic;
  std::uint64_t data_seed = 0;
  /// Column index (0-based), column name, or empty for the last column.
  std::string label_column;
  bool no_header = false;
  bool drop_missing = false;

  Algorithm algorithm = Algorithm::Fsro;
  /// Second algorithm of `compare`.
  Algorithm baseline = Algorithm::Ga;
  std::size_t runs = 30;
  /// Run count for the baseline side of `compare`; 0 means "same as runs".
  std::size_t baseline_runs = 0;
  std::size_t iterations = 100;
  std::size_t population = 40;
  std::uint64_t seed = 1;
  std::string out_dir = "fsro_out";
  std::string simd = "auto";

  ExperimentConfig experiment;

  /// Copies iterations/population into the per-algorithm parameters and
  /// validates everything. Throws ConfigError.
  void finalize();
};

/// Loads the CSV dataset or generates the synthetic one.
Dataset load_dataset(const RunConfig& config);

/// run: writes summary.csv, runs.csv, timing.csv, trace_<seed>.csv and
/// config.ini into out_dir and prints the summary table.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// compare: both algorithms on identical seeds and splits; writes
/// paired.csv and wilcoxon.csv.
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

/// gen: writes the synthetic dataset to out_dir (a file path here).
int cmd_gen(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (subcommands run, compare, gen) and dispatches.
/// Returns the process exit status; nothing is written on invalid input.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace fsro::cli
