#include "fsro/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace fsro {
namespace {

std::size_t tournament(const std::vector<double>& fitness, Rng& rng) {
  const std::size_t a = rng.index(fitness.size());
  const std::size_t b = rng.index(fitness.size());
  if (fitness[b] < fitness[a]) return b;
  if (fitness[a] < fitness[b]) return a;
  return std::min(a, b);
}

} // namespace

void GaParams::validate() const {
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw ConfigError("crossover rate must lie in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
    throw ConfigError("mutation rate must lie in [0, 1]");
  if (population_size < 2) throw ConfigError("GA population size must be at least 2");
}

GaPopulation ga_initialize(const GaParams& params, std::size_t dim, const EvaluateFn& evaluate,
                           Rng& rng) {
  params.validate();
  if (dim == 0) throw ConfigError("dimension must be positive");
  GaPopulation pop;
  for (std::size_t i = 0; i < params.population_size; ++i) {
    auto s = BitString::random(dim, rng);
    repair_zero_mask(s, rng);
    pop.members.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    const double f = evaluate(pop.members[i]);
    pop.fitness.push_back(f);
    if (i == 0 || f < pop.best_fitness) {
      pop.best_fitness = f;
      pop.best = pop.members[i];
    }
  }
  return pop;
}

void ga_step(GaPopulation& pop, const GaParams& params, const EvaluateFn& evaluate, Rng& rng) {
  const std::size_t n = pop.members.size();
  const std::size_t dim = pop.best.size();
  std::vector<BitString> next;
  std::vector<double> next_fitness;
  next.reserve(n);
  next.push_back(pop.best);
  next_fitness.push_back(pop.best_fitness);

  std::vector<BitString> offspring;
  while (next.size() + offspring.size() < n) {
    BitString c1 = pop.members[tournament(pop.fitness, rng)];
    BitString c2 = pop.members[tournament(pop.fitness, rng)];
    if (rng.uniform() < params.crossover_rate && dim >= 2) {
      const std::size_t cut = 1 + rng.index(dim - 1);
      for (std::size_t i = cut; i < dim; ++i) {
        const bool t = c1[i];
        c1.set(i, c2[i]);
        c2.set(i, t);
      }
    }
    for (BitString* c : {&c1, &c2}) {
      if (next.size() + offspring.size() >= n) break;
      if (rng.uniform() < params.mutation_rate) c->flip(rng.index(dim));
      repair_zero_mask(*c, rng);
      offspring.push_back(std::move(*c));
    }
  }
  for (auto& child : offspring) {
    const double f = evaluate(child);
    next_fitness.push_back(f);
    if (f < pop.best_fitness) {
      pop.best_fitness = f;
      pop.best = child;
    }
    next.push_back(std::move(child));
  }
  pop.members = std::move(next);
  pop.fitness = std::move(next_fitness);
  ++pop.generation;
}

SearchResult run_ga(const GaParams& params, std::size_t dim, const EvaluateFn& evaluate, Rng& rng) {
  auto pop = ga_initialize(params, dim, evaluate, rng);
  SearchResult r;
  r.trace.push_back({0, pop.best_fitness, 0, 0, false});
  for (std::size_t t = 0; t < params.max_iterations; ++t) {
    ga_step(pop, params, evaluate, rng);
    r.trace.push_back({pop.generation, pop.best_fitness, 0, 0, false});
  }
  r.best_solution = pop.best;
  r.best_fitness = pop.best_fitness;
  return r;
}

void BpsoParams::validate() const {
  if (!(velocity_clamp > 0.0)) throw ConfigError("velocity clamp must be positive");
  if (population_size < 1) throw ConfigError("swarm size must be positive");
  if (!std::isfinite(inertia_weight) || !std::isfinite(cognitive_factor) ||
      !std::isfinite(social_factor))
    throw ConfigError("BPSO coefficients must be finite");
}

double sigmoid_transfer(double v) noexcept { return 1.0 / (1.0 + std::exp(-v)); }

Swarm bpso_initialize(const BpsoParams& params, std::size_t dim, const EvaluateFn& evaluate,
                      Rng& rng) {
  params.validate();
  if (dim == 0) throw ConfigError("dimension must be positive");
  Swarm s;
  for (std::size_t i = 0; i < params.population_size; ++i) {
    auto x = BitString::random(dim, rng);
    repair_zero_mask(x, rng);
    s.positions.push_back(std::move(x));
    s.velocities.emplace_back(dim, 0.0);
  }
  for (std::size_t i = 0; i < s.positions.size(); ++i) {
    const double f = evaluate(s.positions[i]);
    s.fitness.push_back(f);
    s.personal_best.push_back(s.positions[i]);
    s.personal_best_fitness.push_back(f);
    if (i == 0 || f < s.global_best_fitness) {
      s.global_best_fitness = f;
      s.global_best = s.positions[i];
    }
  }
  return s;
}

void bpso_step(Swarm& swarm, const BpsoParams& params, const EvaluateFn& evaluate, Rng& rng) {
  const double vmax = params.velocity_clamp;
  for (std::size_t p = 0; p < swarm.positions.size(); ++p) {
    auto& x = swarm.positions[p];
    auto& v = swarm.velocities[p];
    const auto& pb = swarm.personal_best[p];
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double xi = x[i] ? 1.0 : 0.0;
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      double vi = params.inertia_weight * v[i] +
                  params.cognitive_factor * r1 * ((pb[i] ? 1.0 : 0.0) - xi) +
                  params.social_factor * r2 * ((swarm.global_best[i] ? 1.0 : 0.0) - xi);
      vi = std::clamp(vi, -vmax, vmax);
      v[i] = vi;
      x.set(i, rng.uniform() < sigmoid_transfer(vi));
    }
    repair_zero_mask(x, rng);
  }
  for (std::size_t p = 0; p < swarm.positions.size(); ++p) {
    const double f = evaluate(swarm.positions[p]);
    swarm.fitness[p] = f;
    if (f < swarm.personal_best_fitness[p]) {
      swarm.personal_best_fitness[p] = f;
      swarm.personal_best[p] = swarm.positions[p];
    }
    if (f < swarm.global_best_fitness) {
      swarm.global_best_fitness = f;
      swarm.global_best = swarm.positions[p];
    }
  }
  ++swarm.iteration;
}

SearchResult run_bpso(const BpsoParams& params, std::size_t dim, const EvaluateFn& evaluate,
                      Rng& rng) {
  auto swarm = bpso_initialize(params, dim, evaluate, rng);
  SearchResult r;
  r.trace.push_back({0, swarm.global_best_fitness, 0, 0, false});
  for (std::size_t t = 0; t < params.max_iterations; ++t) {
    bpso_step(swarm, params, evaluate, rng);
    r.trace.push_back({swarm.iteration, swarm.global_best_fitness, 0, 0, false});
  }
  r.best_solution = swarm.global_best;
  r.best_fitness = swarm.global_best_fitness;
  return r;
}

} // namespace fsro
