#pragma once

// Frog-snake predation search over binary feature masks.
//
// Snakes explore with two-point crossover, frogs exploit with uniform
// crossover. Each frog then faces one random snake: the crossover record
// picks the bits at stake (predation points), the Hamming-style distance
// between the pair sets the escape probability, and a successful capture
// inverts those bits in the frog. Group sizes follow replicator dynamics on
// per-group fitness improvement, and a group that shrinks to the ESS
// threshold is reseeded with the global best.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fsro/core.hpp"
#include "fsro/rng.hpp"

namespace fsro {

struct FsroParams {
  std::size_t population_size = 40;
  std::size_t max_iterations = 100;
  double max_dis = 80.0;
  double decision_dis = 6.0;
  double w1 = 0.75;
  double w2 = 1.0;
  double d1 = 40.0;
  double d2 = 20.0;
  std::size_t ess_threshold = 2;
  /// Shares are kept in [share_floor, 1 - share_floor].
  double share_floor = 0.025;

  /// Throws ConfigError (N odd, N < 4, non-positive distances, bad floor).
  void validate() const;
};

enum class Behavior { Moving, Motionless };
enum class MoveOrder { First, Second };

struct CrossoverRecord {
  std::size_t agent_id = 0;
  /// true where the child took the partner's bit.
  BitString mask;
  std::vector<std::size_t> changed;
  std::vector<std::size_t> unchanged;
  /// Indexes b >= 1 where mask[b] != mask[b - 1].
  std::vector<std::size_t> boundaries;

  /// Builds the record for a child of `parent` produced under `mask`.
  static CrossoverRecord from(std::size_t agent_id, const BitString& parent, const BitString& child,
                              const BitString& mask);
};

struct PredationPlan {
  std::size_t frog_id = 0;
  std::size_t snake_id = 0;
  Behavior behavior = Behavior::Motionless;
  std::vector<std::size_t> predation_points;
  double distance = 0.0;
  MoveOrder order = MoveOrder::First;
  double avoidance_rate = 0.0;
  bool succeeded = false;
};

struct PopulationState {
  std::vector<Agent> agents;
  double frog_share = 0.5;
  double snake_share = 0.5;
  std::size_t iteration = 0;
  BitString best_solution;
  double best_fitness = 1.0;
  bool has_best = false;

  std::size_t count(Group g) const noexcept;
  std::vector<std::size_t> members(Group g) const;

  friend bool operator==(const PopulationState&, const PopulationState&) = default;
};

// ---------------------------------------------------------------------------
// Operators

/// N/2 frogs (ids 0..N/2-1) then N/2 snakes, each with D fair random bits
/// drawn in id order; all-zero masks are repaired. Fitness left unset.
PopulationState initialize(const FsroParams& params, std::size_t dim, Rng& rng);

struct TwoPointChild {
  BitString child;
  std::size_t p1 = 0;
  std::size_t p2 = 0;
};

/// child = b on [p1, p2] (inclusive), a elsewhere; p1 < p2 uniform over
/// distinct index pairs. For D = 1 the segment is [0, 0].
TwoPointChild two_point_crossover(const BitString& a, const BitString& b, Rng& rng);
BitString two_point_crossover_at(const BitString& a, const BitString& b, std::size_t p1,
                                 std::size_t p2);

struct UniformChild {
  BitString child;
  CrossoverRecord record;
};

/// Per-index fair mask; child = b where the mask is set, a elsewhere.
UniformChild uniform_crossover(const BitString& a, const BitString& b, Rng& rng,
                               std::size_t agent_id = 0);
UniformChild uniform_crossover_with_mask(const BitString& a, const BitString& b,
                                         const BitString& mask, std::size_t agent_id = 0);

/// Moving iff more indexes changed than stayed; a tie is Motionless.
Behavior classify_behavior(const CrossoverRecord& record) noexcept;

/// Draws s uniformly from all indexes and applies predation_points_at.
std::vector<std::size_t> determine_predation_points(const CrossoverRecord& record, Rng& rng);

/// Escape: s changed -> {s}. Immobile: s unchanged -> from the boundary b
/// nearest to s (lower b on ties) to the end of the string on s's side:
/// {b..D-1} if s >= b, else {0..b-1}. Without boundaries -> {s}.
std::vector<std::size_t> predation_points_at(const CrossoverRecord& record, std::size_t s);

/// max_dis * (D - matches) / D.
double frog_snake_distance(const BitString& frog, const BitString& snake, double max_dis);

MoveOrder determine_order(double distance, double decision_dis) noexcept;

/// (w1*dist + d1)/100 for First, (w2*dist + d2)/100 for Second, clamped to [0, 1].
double avoidance_rate(MoveOrder order, double distance, const FsroParams& params) noexcept;

struct CaptureOutcome {
  BitString solution;
  bool succeeded = false;
};

/// Succeeds iff uniform() < 1 - rate (one draw always consumed); on success
/// flips exactly the bits at `points`, then repairs an all-zero result.
CaptureOutcome capture(const BitString& frog, std::span<const std::size_t> points, double rate,
                       Rng& rng);

/// Group-average improvement turned into payoffs summing to 1; (0.5, 0.5)
/// when neither group improved. Throws std::invalid_argument on an empty group.
/// Improvement sums are expected non-negative.
std::pair<double, double> replicator_payoffs(double frog_improvement_sum,
                                             double snake_improvement_sum, std::size_t n_frogs,
                                             std::size_t n_snakes);

/// x_h + x_h * (u_h - x.u) for both groups, no clamping.
std::pair<double, double> replicator_update_raw(std::pair<double, double> shares,
                                                std::pair<double, double> payoffs) noexcept;

/// Raw update, renormalized to sum 1, frog share clamped to
/// [share_floor, 1 - share_floor], snake share = 1 - frog share.
std::pair<double, double> replicator_update(std::pair<double, double> shares,
                                            std::pair<double, double> payoffs,
                                            double share_floor) noexcept;

/// Target frog count round(x_frog * N) clamped to [1, N - 1]. The worst
/// (largest fitness, then highest id) members of the shrinking group are
/// relabeled; solutions are kept. Also stores the shares.
void resize_groups(PopulationState& pop, std::pair<double, double> shares);

/// For each group at or below `threshold` (frogs checked first): the worst
/// member of the other group is replaced by a copy of the global best that
/// joins the small group. Total size is unchanged.
void ess_mutation(PopulationState& pop, std::size_t threshold);

/// Evaluates every agent in id order, shifting fitness into prev_fitness and
/// updating the global best. Returns per-group sums of max(0, prev - new).
std::pair<double, double> evaluate_population(PopulationState& pop, const EvaluateFn& evaluate);

// ---------------------------------------------------------------------------
// Iteration and full run

struct StepReport {
  std::vector<CrossoverRecord> frog_records;
  std::vector<PredationPlan> plans;
  std::pair<double, double> payoffs{0.5, 0.5};
  std::size_t captures = 0;
  /// A successful capture produced a new global best this step.
  bool capture_improved_best = false;
};

/// One iteration. RNG draws happen in a fixed order: snake pairing and
/// two-point crossovers (id order), frog pairing and uniform crossovers,
/// predation points per frog, then per frog the snake pick and capture draw.
/// Evaluation consumes no draws.
StepReport step(PopulationState& pop, const FsroParams& params, const EvaluateFn& evaluate,
                Rng& rng);

struct TraceRow {
  std::size_t iteration = 0;
  double best_fitness = 1.0;
  std::size_t frog_count = 0;
  std::size_t snake_count = 0;
  bool predation_success = false;
  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct PredationEvent {
  std::size_t iteration = 0;
  std::size_t frog_id = 0;
  std::size_t snake_id = 0;
  std::size_t points = 0;
  double distance = 0.0;
};

struct SearchResult {
  BitString best_solution;
  double best_fitness = 1.0;
  /// max_iterations + 1 rows; row 0 is the initial population.
  std::vector<TraceRow> trace;
  std::vector<PredationEvent> captures;
};

SearchResult run_fsro(const FsroParams& params, std::size_t dim, const EvaluateFn& evaluate,
                      Rng& rng);

} // namespace fsro
