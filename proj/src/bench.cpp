#include "fsro/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace fsro {

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Fsro: return "fsro";
    case Algorithm::Ga: return "ga";
    case Algorithm::Bpso: return "bpso";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "fsro") return Algorithm::Fsro;
  if (name == "ga") return Algorithm::Ga;
  if (name == "bpso") return Algorithm::Bpso;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected fsro, ga, bpso)");
}

void ExperimentConfig::set_population(std::size_t n) {
  fsro.population_size = n;
  ga.population_size = n;
  bpso.population_size = n;
}

void ExperimentConfig::set_iterations(std::size_t t) {
  fsro.max_iterations = t;
  ga.max_iterations = t;
  bpso.max_iterations = t;
}

void ExperimentConfig::validate(Algorithm algorithm) const {
  fitness.validate();
  switch (algorithm) {
    case Algorithm::Fsro: fsro.validate(); break;
    case Algorithm::Ga: ga.validate(); break;
    case Algorithm::Bpso: bpso.validate(); break;
  }
}

RunResult run_single(Algorithm algorithm, const Dataset& dataset, const ExperimentConfig& config,
                     std::uint64_t seed) {
  config.validate(algorithm);
  Rng rng(seed);
  const Split split = stratified_split(dataset, config.fitness.train_fraction, rng);
  const FitnessEvaluator evaluator(dataset, split, config.fitness);
  const EvaluateFn evaluate = evaluator.as_function();

  const auto start = std::chrono::steady_clock::now();
  SearchResult search;
  switch (algorithm) {
    case Algorithm::Fsro: search = run_fsro(config.fsro, dataset.n_features, evaluate, rng); break;
    case Algorithm::Ga: search = run_ga(config.ga, dataset.n_features, evaluate, rng); break;
    case Algorithm::Bpso: search = run_bpso(config.bpso, dataset.n_features, evaluate, rng); break;
  }
  const auto stop = std::chrono::steady_clock::now();

  RunResult r;
  r.algorithm = std::string(to_string(algorithm));
  r.dataset = dataset.name;
  r.seed = seed;
  r.best_fitness = search.best_fitness;
  r.best_mask = search.best_solution;
  r.test_accuracy = evaluator.accuracy(search.best_solution);
  r.selected_count = search.best_solution.count();
  r.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
  r.trace = std::move(search.trace);
  r.successful_captures = search.captures.size();
  return r;
}

Experiment run_experiment(Algorithm algorithm, const Dataset& dataset,
                          const ExperimentConfig& config, std::size_t runs,
                          std::uint64_t base_seed) {
  if (runs == 0) throw ConfigError("run count must be at least 1");
  config.validate(algorithm);
  dataset.validate();

  Experiment ex;
  ex.runs.resize(runs);
  std::size_t workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, runs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < runs; k = next++) {
      try {
        ex.runs[k] = run_single(algorithm, dataset, config, base_seed + k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  ex.summary = summarize(ex.runs, dataset.n_features);
  return ex;
}

FitnessSummary summarize_fitness(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize_fitness: empty sample");
  const auto m = static_cast<double>(values.size());
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  FitnessSummary s;
  s.best = *lo;
  s.worst = *hi;
  s.mean = std::clamp(std::accumulate(values.begin(), values.end(), 0.0) / m, s.best, s.worst);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / m);
  return s;
}

double average_accuracy(std::span<const RunResult> results) {
  if (results.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : results) sum += r.test_accuracy;
  return sum / static_cast<double>(results.size());
}

double average_reduction(std::span<const RunResult> results, std::size_t total_features) {
  if (results.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : results) {
    if (r.selected_count > total_features)
      throw std::invalid_argument("average_reduction: selected count exceeds feature count");
    sum += static_cast<double>(total_features - r.selected_count);
  }
  return sum / static_cast<double>(results.size());
}

ExperimentSummary summarize(std::span<const RunResult> results, std::size_t total_features) {
  std::vector<double> fit;
  fit.reserve(results.size());
  double time = 0.0;
  for (const auto& r : results) {
    fit.push_back(r.best_fitness);
    time += r.wall_time_seconds;
  }
  const auto f = summarize_fitness(fit);
  ExperimentSummary s;
  s.runs = results.size();
  s.mean_fitness = f.mean;
  s.best_fitness = f.best;
  s.worst_fitness = f.worst;
  s.std_fitness = f.std;
  s.average_accuracy = average_accuracy(results);
  s.average_reduction = average_reduction(results, total_features);
  s.average_time = time / static_cast<double>(results.size());
  return s;
}

std::string_view notation(Decision d) noexcept {
  return d == Decision::Significant ? "+" : "-";
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    double alpha) {
  if (a.size() != b.size()) throw std::invalid_argument("wilcoxon: paired samples differ in length");
  if (a.empty()) throw std::invalid_argument("wilcoxon: empty samples");

  struct Diff {
    double magnitude;
    bool positive;
  };
  std::vector<Diff> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back({std::abs(d), d > 0.0});
  }
  WilcoxonResult res;
  res.n_nonzero = diffs.size();
  if (diffs.empty()) return res;

  std::sort(diffs.begin(), diffs.end(),
            [](const Diff& x, const Diff& y) { return x.magnitude < y.magnitude; });

  // Doubled average ranks are integers: positions first..last share first + last + 2.
  const std::size_t m = diffs.size();
  std::vector<std::uint64_t> rank2(m);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i;
    while (j + 1 < m && diffs[j + 1].magnitude == diffs[i].magnitude) ++j;
    for (std::size_t k = i; k <= j; ++k) rank2[k] = i + j + 2;
    const auto t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  std::uint64_t plus2 = 0;
  std::uint64_t total2 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    total2 += rank2[i];
    if (diffs[i].positive) plus2 += rank2[i];
  }
  const std::uint64_t minus2 = total2 - plus2;
  const std::uint64_t observed2 = std::min(plus2, minus2);
  res.w_plus = static_cast<double>(plus2) / 2.0;
  res.w_minus = static_cast<double>(minus2) / 2.0;

  if (m <= kWilcoxonExactLimit) {
    // Count sign assignments by their doubled positive rank sum.
    std::vector<std::uint64_t> ways(total2 + 1, 0);
    ways[0] = 1;
    std::uint64_t reach = 0;
    for (std::size_t i = 0; i < m; ++i) {
      reach += rank2[i];
      for (std::uint64_t s = reach; s >= rank2[i]; --s) {
        ways[s] += ways[s - rank2[i]];
        if (s == rank2[i]) break;
      }
    }
    std::uint64_t extreme = 0;
    for (std::uint64_t s = 0; s <= total2; ++s)
      if (std::min(s, total2 - s) <= observed2) extreme += ways[s];
    res.p_value = static_cast<double>(extreme) / std::ldexp(1.0, static_cast<int>(m));
    res.exact = true;
  } else {
    const auto n = static_cast<double>(m);
    const double mean = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    const double w = static_cast<double>(observed2) / 2.0;
    if (var <= 0.0) {
      res.p_value = 1.0;
    } else {
      const double z = std::max(0.0, (std::abs(w - mean) - 0.5) / std::sqrt(var));
      res.p_value = std::erfc(z / std::sqrt(2.0));
    }
    res.p_value = std::clamp(res.p_value, std::numeric_limits<double>::min(), 1.0);
    res.exact = false;
  }
  res.p_value = std::min(res.p_value, 1.0);
  res.decision = res.p_value < alpha ? Decision::Significant : Decision::NoDifference;
  return res;
}

} // namespace fsro
