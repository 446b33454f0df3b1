#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fsro/baselines.hpp"
#include "fsro/data.hpp"
#include "fsro/fitness.hpp"
#include "fsro/fsro.hpp"

namespace fsro {

enum class Algorithm { Fsro, Ga, Bpso };

std::string_view to_string(Algorithm a) noexcept;
/// "fsro", "ga" or "bpso"; throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);

/// Everything one run needs besides the dataset and seed.
struct ExperimentConfig {
  FitnessParams fitness;
  FsroParams fsro;
  GaParams ga;
  BpsoParams bpso;
  /// Worker threads for independent runs; 0 = hardware concurrency.
  std::size_t threads = 0;

  /// Applies one population size / iteration budget to all algorithms.
  void set_population(std::size_t n);
  void set_iterations(std::size_t t);
  void validate(Algorithm algorithm) const;
};

struct RunResult {
  std::string algorithm;
  std::string dataset;
  std::uint64_t seed = 0;
  double best_fitness = 1.0;
  BitString best_mask;
  double test_accuracy = 0.0;
  std::size_t selected_count = 0;
  double wall_time_seconds = 0.0;
  std::vector<TraceRow> trace;
  std::size_t successful_captures = 0;
};

struct FitnessSummary {
  double mean = 0.0;
  double best = 0.0;
  double worst = 0.0;
  double std = 0.0;
};

struct ExperimentSummary {
  std::size_t runs = 0;
  double mean_fitness = 0.0;
  double best_fitness = 0.0;
  double worst_fitness = 0.0;
  double std_fitness = 0.0;
  double average_accuracy = 0.0;
  double average_reduction = 0.0;
  double average_time = 0.0;
};

struct Experiment {
  std::vector<RunResult> runs;
  ExperimentSummary summary;
};

/// One seeded run: the seed's stream first draws the stratified split, then
/// drives the optimizer. Accuracy is measured on the test partition.
RunResult run_single(Algorithm algorithm, const Dataset& dataset, const ExperimentConfig& config,
                     std::uint64_t seed);

/// Runs seeds base_seed .. base_seed + M - 1 across a worker pool; results
/// are ordered by seed.
Experiment run_experiment(Algorithm algorithm, const Dataset& dataset,
                          const ExperimentConfig& config, std::size_t runs,
                          std::uint64_t base_seed);

/// Mean, min, max, and population standard deviation (1/M). The mean is
/// clamped into [min, max] against rounding. Throws on an empty list.
FitnessSummary summarize_fitness(std::span<const double> values);

double average_accuracy(std::span<const RunResult> results);

/// Mean of (total_features - selected_count).
double average_reduction(std::span<const RunResult> results, std::size_t total_features);

ExperimentSummary summarize(std::span<const RunResult> results, std::size_t total_features);

// ---------------------------------------------------------------------------

enum class Decision { NoDifference, Significant };

/// "+" for a significant difference, "-" otherwise.
std::string_view notation(Decision d) noexcept;

struct WilcoxonResult {
  double p_value = 1.0;
  Decision decision = Decision::NoDifference;
  double w_plus = 0.0;
  double w_minus = 0.0;
  std::size_t n_nonzero = 0;
  bool exact = true;
};

/// Two-sided paired signed-rank test. Zero differences are dropped and tied
/// |d| get average ranks. Exact null distribution for up to 20 non-zero
/// pairs, otherwise a normal approximation with tie and continuity
/// corrections. p = P(min(W+, W-) <= observed).
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    double alpha = 0.05);

inline constexpr std::size_t kWilcoxonExactLimit = 20;

} // namespace fsro
