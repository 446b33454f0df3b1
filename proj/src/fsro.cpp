#include "fsro/fsro.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "fsro/simd/kernels.hpp"

namespace fsro {
namespace {

void require_same_length(const BitString& a, const BitString& b, const char* what) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(what) + ": parent lengths differ (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

// partner[k] is the position (in `ids`) of the agent ids[k] crosses with.
// Shuffled, then adjacent pairs; an odd leftover takes a random other member;
// a singleton partners itself.
std::vector<std::size_t> pair_within(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  std::vector<std::size_t> partner(n);
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    partner[order[k]] = order[k + 1];
    partner[order[k + 1]] = order[k];
  }
  if (n % 2 == 1) {
    const std::size_t last = order[n - 1];
    if (n == 1) {
      partner[last] = last;
    } else {
      const std::size_t pick = rng.index(n - 1);
      partner[last] = order[pick];
    }
  }
  return partner;
}

// Worst first: larger fitness, then higher id.
bool worse(const Agent& a, const Agent& b) {
  const double fa = a.fitness.value_or(1.0);
  const double fb = b.fitness.value_or(1.0);
  if (fa != fb) return fa > fb;
  return a.id > b.id;
}

std::size_t worst_member(const PopulationState& pop, Group g) {
  std::size_t worst = pop.agents.size();
  for (std::size_t i = 0; i < pop.agents.size(); ++i) {
    if (pop.agents[i].group != g) continue;
    if (worst == pop.agents.size() || worse(pop.agents[i], pop.agents[worst])) worst = i;
  }
  return worst;
}

Group other(Group g) { return g == Group::Frog ? Group::Snake : Group::Frog; }

} // namespace

void FsroParams::validate() const {
  if (population_size < 4) throw ConfigError("population size must be at least 4");
  if (population_size % 2 != 0) throw ConfigError("population size must be even");
  if (!(max_dis > 0.0)) throw ConfigError("max distance must be positive");
  if (!(decision_dis > 0.0)) throw ConfigError("decision distance must be positive");
  if (!std::isfinite(w1) || !std::isfinite(w2) || !std::isfinite(d1) || !std::isfinite(d2))
    throw ConfigError("avoidance coefficients must be finite");
  if (ess_threshold == 0) throw ConfigError("ESS threshold must be positive");
  if (!(share_floor >= 0.0 && share_floor < 0.5)) throw ConfigError("share floor must lie in [0, 0.5)");
}

CrossoverRecord CrossoverRecord::from(std::size_t agent_id, const BitString& parent,
                                      const BitString& child, const BitString& mask) {
  CrossoverRecord r;
  r.agent_id = agent_id;
  r.mask = mask;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    (child[i] != parent[i] ? r.changed : r.unchanged).push_back(i);
    if (i >= 1 && mask[i] != mask[i - 1]) r.boundaries.push_back(i);
  }
  return r;
}

std::size_t PopulationState::count(Group g) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(agents.begin(), agents.end(), [g](const Agent& a) { return a.group == g; }));
}

std::vector<std::size_t> PopulationState::members(Group g) const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (agents[i].group == g) ids.push_back(i);
  return ids;
}

PopulationState initialize(const FsroParams& params, std::size_t dim, Rng& rng) {
  params.validate();
  if (dim == 0) throw ConfigError("dimension must be positive");
  PopulationState pop;
  const std::size_t n = params.population_size;
  pop.agents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Agent a;
    a.id = i;
    a.group = i < n / 2 ? Group::Frog : Group::Snake;
    a.solution = BitString::random(dim, rng);
    repair_zero_mask(a.solution, rng);
    pop.agents.push_back(std::move(a));
  }
  return pop;
}

BitString two_point_crossover_at(const BitString& a, const BitString& b, std::size_t p1,
                                 std::size_t p2) {
  require_same_length(a, b, "two_point_crossover");
  if (p1 > p2 || p2 >= a.size()) throw std::invalid_argument("two_point_crossover: bad points");
  BitString child = a;
  for (std::size_t i = p1; i <= p2; ++i) child.set(i, b[i]);
  return child;
}

TwoPointChild two_point_crossover(const BitString& a, const BitString& b, Rng& rng) {
  require_same_length(a, b, "two_point_crossover");
  if (a.empty()) throw std::invalid_argument("two_point_crossover: empty parents");
  const std::size_t d = a.size();
  if (d == 1) return {two_point_crossover_at(a, b, 0, 0), 0, 0};
  std::size_t i = rng.index(d);
  std::size_t j = rng.index(d - 1);
  if (j >= i) ++j;
  const std::size_t p1 = std::min(i, j);
  const std::size_t p2 = std::max(i, j);
  return {two_point_crossover_at(a, b, p1, p2), p1, p2};
}

UniformChild uniform_crossover_with_mask(const BitString& a, const BitString& b,
                                         const BitString& mask, std::size_t agent_id) {
  require_same_length(a, b, "uniform_crossover");
  require_same_length(a, mask, "uniform_crossover mask");
  BitString child = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (mask[i]) child.set(i, b[i]);
  auto record = CrossoverRecord::from(agent_id, a, child, mask);
  return {std::move(child), std::move(record)};
}

UniformChild uniform_crossover(const BitString& a, const BitString& b, Rng& rng,
                               std::size_t agent_id) {
  require_same_length(a, b, "uniform_crossover");
  BitString mask(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mask.set(i, rng.uniform() < 0.5);
  return uniform_crossover_with_mask(a, b, mask, agent_id);
}

Behavior classify_behavior(const CrossoverRecord& record) noexcept {
  return record.changed.size() > record.unchanged.size() ? Behavior::Moving : Behavior::Motionless;
}

std::vector<std::size_t> predation_points_at(const CrossoverRecord& record, std::size_t s) {
  const std::size_t d = record.mask.size();
  if (s >= d) throw std::invalid_argument("predation_points_at: index out of range");
  if (std::binary_search(record.changed.begin(), record.changed.end(), s) ||
      record.boundaries.empty())
    return {s};
  std::size_t nearest = record.boundaries.front();
  std::size_t best_gap = s >= nearest ? s - nearest : nearest - s;
  for (std::size_t b : record.boundaries) {
    const std::size_t gap = s >= b ? s - b : b - s;
    if (gap < best_gap) {
      best_gap = gap;
      nearest = b;
    }
  }
  std::vector<std::size_t> points;
  if (s >= nearest) {
    for (std::size_t i = nearest; i < d; ++i) points.push_back(i);
  } else {
    for (std::size_t i = 0; i < nearest; ++i) points.push_back(i);
  }
  return points;
}

std::vector<std::size_t> determine_predation_points(const CrossoverRecord& record, Rng& rng) {
  return predation_points_at(record, rng.index(record.mask.size()));
}

double frog_snake_distance(const BitString& frog, const BitString& snake, double max_dis) {
  require_same_length(frog, snake, "frog_snake_distance");
  if (frog.empty()) throw std::invalid_argument("frog_snake_distance: empty solutions");
  const std::size_t matches = simd::count_matches(frog.bytes(), snake.bytes());
  const auto d = static_cast<double>(frog.size());
  return max_dis * (d - static_cast<double>(matches)) / d;
}

MoveOrder determine_order(double distance, double decision_dis) noexcept {
  return distance <= decision_dis ? MoveOrder::First : MoveOrder::Second;
}

double avoidance_rate(MoveOrder order, double distance, const FsroParams& params) noexcept {
  const double raw = order == MoveOrder::First ? (params.w1 * distance + params.d1) / 100.0
                                               : (params.w2 * distance + params.d2) / 100.0;
  return std::clamp(raw, 0.0, 1.0);
}

CaptureOutcome capture(const BitString& frog, std::span<const std::size_t> points, double rate,
                       Rng& rng) {
  const bool success = rng.uniform() < 1.0 - rate;
  CaptureOutcome out{frog, success};
  if (!success) return out;
  for (std::size_t p : points) {
    if (p >= frog.size()) throw std::invalid_argument("capture: predation point out of range");
    out.solution.flip(p);
  }
  repair_zero_mask(out.solution, rng);
  return out;
}

std::pair<double, double> replicator_payoffs(double frog_improvement_sum,
                                             double snake_improvement_sum, std::size_t n_frogs,
                                             std::size_t n_snakes) {
  if (n_frogs == 0 || n_snakes == 0)
    throw std::invalid_argument("replicator_payoffs: empty group");
  const double frog_avg = frog_improvement_sum / static_cast<double>(n_frogs);
  const double snake_avg = snake_improvement_sum / static_cast<double>(n_snakes);
  const double total = frog_avg + snake_avg;
  if (!(total > 0.0)) return {0.5, 0.5};
  return {frog_avg / total, snake_avg / total};
}

std::pair<double, double> replicator_update_raw(std::pair<double, double> shares,
                                                std::pair<double, double> payoffs) noexcept {
  const auto [xf, xs] = shares;
  const auto [uf, us] = payoffs;
  const double mean = xf * uf + xs * us;
  return {xf + xf * (uf - mean), xs + xs * (us - mean)};
}

std::pair<double, double> replicator_update(std::pair<double, double> shares,
                                            std::pair<double, double> payoffs,
                                            double share_floor) noexcept {
  auto [xf, xs] = replicator_update_raw(shares, payoffs);
  const double total = xf + xs;
  if (total > 0.0) xf /= total;
  xf = std::clamp(xf, share_floor, 1.0 - share_floor);
  return {xf, 1.0 - xf};
}

void resize_groups(PopulationState& pop, std::pair<double, double> shares) {
  pop.frog_share = shares.first;
  pop.snake_share = shares.second;
  const std::size_t n = pop.agents.size();
  if (n < 2) return;
  const double raw = std::floor(shares.first * static_cast<double>(n) + 0.5);
  const auto target = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 0.0)), 1, n - 1);
  std::size_t frogs = pop.count(Group::Frog);
  while (frogs < target) {
    pop.agents[worst_member(pop, Group::Snake)].group = Group::Frog;
    ++frogs;
  }
  while (frogs > target) {
    pop.agents[worst_member(pop, Group::Frog)].group = Group::Snake;
    --frogs;
  }
}

void ess_mutation(PopulationState& pop, std::size_t threshold) {
  if (!pop.has_best) throw std::logic_error("ess_mutation: global best not set");
  for (Group small : {Group::Frog, Group::Snake}) {
    if (pop.count(small) > threshold) continue;
    const Group large = other(small);
    if (pop.count(large) <= 1) continue;
    Agent& slot = pop.agents[worst_member(pop, large)];
    slot.solution = pop.best_solution;
    slot.fitness = pop.best_fitness;
    slot.prev_fitness = pop.best_fitness;
    slot.group = small;
  }
}

std::pair<double, double> evaluate_population(PopulationState& pop, const EvaluateFn& evaluate) {
  double frog_gain = 0.0;
  double snake_gain = 0.0;
  for (Agent& a : pop.agents) {
    const double f = evaluate(a.solution);
    a.prev_fitness = a.fitness;
    a.fitness = f;
    if (a.prev_fitness) {
      const double gain = std::max(0.0, *a.prev_fitness - f);
      (a.group == Group::Frog ? frog_gain : snake_gain) += gain;
    }
    if (!pop.has_best || f < pop.best_fitness) {
      pop.best_fitness = f;
      pop.best_solution = a.solution;
      pop.has_best = true;
    }
  }
  return {frog_gain, snake_gain};
}

StepReport step(PopulationState& pop, const FsroParams& params, const EvaluateFn& evaluate,
                Rng& rng) {
  StepReport report;
  const auto snakes = pop.members(Group::Snake);
  const auto frogs = pop.members(Group::Frog);
  if (snakes.empty() || frogs.empty()) throw std::logic_error("step: a group is empty");

  // (1) snakes: two-point crossover with a random in-group partner.
  {
    const auto partner = pair_within(snakes.size(), rng);
    std::vector<BitString> children;
    children.reserve(snakes.size());
    for (std::size_t k = 0; k < snakes.size(); ++k) {
      const auto& self = pop.agents[snakes[k]].solution;
      const auto& mate = pop.agents[snakes[partner[k]]].solution;
      auto child = two_point_crossover(self, mate, rng).child;
      repair_zero_mask(child, rng);
      children.push_back(std::move(child));
    }
    for (std::size_t k = 0; k < snakes.size(); ++k)
      pop.agents[snakes[k]].solution = std::move(children[k]);
  }

  // (2) frogs: uniform crossover, keeping the record for the search/approach phases.
  {
    const auto partner = pair_within(frogs.size(), rng);
    std::vector<BitString> children;
    children.reserve(frogs.size());
    for (std::size_t k = 0; k < frogs.size(); ++k) {
      const auto& self = pop.agents[frogs[k]].solution;
      const auto& mate = pop.agents[frogs[partner[k]]].solution;
      auto [child, record] = uniform_crossover(self, mate, rng, frogs[k]);
      repair_zero_mask(child, rng);
      children.push_back(std::move(child));
      report.frog_records.push_back(std::move(record));
    }
    for (std::size_t k = 0; k < frogs.size(); ++k)
      pop.agents[frogs[k]].solution = std::move(children[k]);
  }

  // (3) search and (4) approach.
  report.plans.resize(frogs.size());
  for (std::size_t k = 0; k < frogs.size(); ++k) {
    auto& plan = report.plans[k];
    plan.frog_id = frogs[k];
    plan.behavior = classify_behavior(report.frog_records[k]);
    plan.predation_points = determine_predation_points(report.frog_records[k], rng);
  }

  // (5) capture.
  for (auto& plan : report.plans) {
    plan.snake_id = snakes[rng.index(snakes.size())];
    Agent& frog = pop.agents[plan.frog_id];
    plan.distance =
        frog_snake_distance(frog.solution, pop.agents[plan.snake_id].solution, params.max_dis);
    plan.order = determine_order(plan.distance, params.decision_dis);
    plan.avoidance_rate = avoidance_rate(plan.order, plan.distance, params);
    auto outcome = capture(frog.solution, plan.predation_points, plan.avoidance_rate, rng);
    plan.succeeded = outcome.succeeded;
    if (outcome.succeeded) {
      frog.solution = std::move(outcome.solution);
      ++report.captures;
    }
  }

  // (6) evaluation.
  const double best_before = pop.best_fitness;
  const bool had_best = pop.has_best;
  const auto [frog_gain, snake_gain] = evaluate_population(pop, evaluate);
  for (const auto& plan : report.plans)
    if (plan.succeeded && had_best && *pop.agents[plan.frog_id].fitness < best_before)
      report.capture_improved_best = true;

  // (7) replicator dynamics on this iteration's improvement.
  report.payoffs = replicator_payoffs(frog_gain, snake_gain, frogs.size(), snakes.size());
  const auto shares =
      replicator_update({pop.frog_share, pop.snake_share}, report.payoffs, params.share_floor);
  resize_groups(pop, shares);

  // (8) ESS mutation.
  ess_mutation(pop, params.ess_threshold);
  ++pop.iteration;
  return report;
}

SearchResult run_fsro(const FsroParams& params, std::size_t dim, const EvaluateFn& evaluate,
                      Rng& rng) {
  PopulationState pop = initialize(params, dim, rng);
  evaluate_population(pop, evaluate);

  SearchResult result;
  result.trace.reserve(params.max_iterations + 1);
  result.trace.push_back(
      {0, pop.best_fitness, pop.count(Group::Frog), pop.count(Group::Snake), false});
  for (std::size_t t = 0; t < params.max_iterations; ++t) {
    const auto report = step(pop, params, evaluate, rng);
    for (const auto& plan : report.plans)
      if (plan.succeeded)
        result.captures.push_back(
            {pop.iteration, plan.frog_id, plan.snake_id, plan.predation_points.size(), plan.distance});
    result.trace.push_back({pop.iteration, pop.best_fitness, pop.count(Group::Frog),
                            pop.count(Group::Snake), report.capture_improved_best});
  }
  result.best_solution = pop.best_solution;
  result.best_fitness = pop.best_fitness;
  return result;
}

} // namespace fsro
