#pragma once

#include <cstddef>
#include <vector>

#include "fsro/core.hpp"
#include "fsro/fsro.hpp"
#include "fsro/rng.hpp"

namespace fsro {

// ---------------------------------------------------------------------------
// Genetic algorithm: elitism of one, binary tournament, one-point crossover,
// single-bit-flip mutation per offspring.

struct GaParams {
  double crossover_rate = 0.8;
  double mutation_rate = 0.3;
  std::size_t population_size = 40;
  std::size_t max_iterations = 100;
  void validate() const;
};

struct GaPopulation {
  std::vector<BitString> members;
  std::vector<double> fitness;
  BitString best;
  double best_fitness = 1.0;
  std::size_t generation = 0;
};

GaPopulation ga_initialize(const GaParams& params, std::size_t dim, const EvaluateFn& evaluate,
                           Rng& rng);
void ga_step(GaPopulation& pop, const GaParams& params, const EvaluateFn& evaluate, Rng& rng);
SearchResult run_ga(const GaParams& params, std::size_t dim, const EvaluateFn& evaluate, Rng& rng);

// ---------------------------------------------------------------------------
// Binary PSO with a sigmoid transfer function.

struct BpsoParams {
  double inertia_weight = 1.0;
  double cognitive_factor = 2.0;
  double social_factor = 2.0;
  double velocity_clamp = 6.0;
  std::size_t population_size = 40;
  std::size_t max_iterations = 100;
  void validate() const;
};

/// 1 / (1 + e^-v).
double sigmoid_transfer(double v) noexcept;

struct Swarm {
  std::vector<BitString> positions;
  std::vector<std::vector<double>> velocities;
  std::vector<double> fitness;
  std::vector<BitString> personal_best;
  std::vector<double> personal_best_fitness;
  BitString global_best;
  double global_best_fitness = 1.0;
  std::size_t iteration = 0;
};

Swarm bpso_initialize(const BpsoParams& params, std::size_t dim, const EvaluateFn& evaluate,
                      Rng& rng);

/// v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x), clamped; x_i <- [u < sigmoid(v_i)].
/// Draws per particle and dimension: r1, r2, u.
void bpso_step(Swarm& swarm, const BpsoParams& params, const EvaluateFn& evaluate, Rng& rng);
SearchResult run_bpso(const BpsoParams& params, std::size_t dim, const EvaluateFn& evaluate,
                      Rng& rng);

} // namespace fsro
