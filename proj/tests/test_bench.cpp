#include <doctest.h>

#include <cmath>
#include <vector>

#include "fsro/bench.hpp"
#include "oracles.hpp"

using namespace fsro;

namespace {

Dataset small_mofn(std::uint64_t seed, std::size_t n = 150) {
  Rng rng(seed);
  return generate_m_of_n(4, 2, 3, n, rng);
}

ExperimentConfig quick_config() {
  ExperimentConfig c;
  c.set_population(10);
  c.set_iterations(15);
  c.threads = 2;
  return c;
}

} // namespace

TEST_CASE("parse_algorithm") {
  CHECK(parse_algorithm("fsro") == Algorithm::Fsro);
  CHECK(parse_algorithm("ga") == Algorithm::Ga);
  CHECK(parse_algorithm("bpso") == Algorithm::Bpso);
  CHECK(to_string(Algorithm::Bpso) == "bpso");
  CHECK_THROWS_AS(parse_algorithm("aco"), ConfigError);
}

TEST_CASE("summarize_fitness") {
  const std::vector<double> v = {0.1, 0.2, 0.3};
  const auto s = summarize_fitness(v);
  CHECK(s.mean == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(s.best == 0.1);
  CHECK(s.worst == 0.3);
  CHECK(s.std == doctest::Approx(0.0816496580927726).epsilon(1e-12));

  const std::vector<double> c = {0.37, 0.37, 0.37};
  const auto cs = summarize_fitness(c);
  CHECK(cs.std == 0.0);
  CHECK(cs.mean == 0.37);
  CHECK(cs.best <= cs.mean);
  CHECK(cs.mean <= cs.worst);

  const std::vector<double> one = {0.5};
  const auto os = summarize_fitness(one);
  CHECK(os.mean == 0.5);
  CHECK(os.best == 0.5);
  CHECK(os.worst == 0.5);
  CHECK(os.std == 0.0);

  CHECK_THROWS(summarize_fitness(std::vector<double>{}));

  Rng rng(1);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> x(1 + rng.index(30));
    for (auto& e : x) e = rng.uniform();
    const auto a = summarize_fitness(x);
    REQUIRE(a.best <= a.mean);
    REQUIRE(a.mean <= a.worst);
    REQUIRE(a.std >= 0.0);
    std::vector<double> shifted = x, scaled = x;
    for (auto& e : shifted) e += 0.25;
    for (auto& e : scaled) e *= 3.0;
    REQUIRE(summarize_fitness(shifted).std == doctest::Approx(a.std).epsilon(1e-9));
    REQUIRE(summarize_fitness(scaled).std == doctest::Approx(3.0 * a.std).epsilon(1e-9));
  }
}

TEST_CASE("average_accuracy and average_reduction") {
  std::vector<RunResult> r(2);
  r[0].test_accuracy = 0.9;
  r[1].test_accuracy = 1.0;
  r[0].selected_count = 6;
  r[1].selected_count = 7;
  CHECK(average_accuracy(r) == doctest::Approx(0.95).epsilon(1e-15));
  CHECK(average_reduction(r, 13) == 6.5);
  r[0].selected_count = r[1].selected_count = 13;
  CHECK(average_reduction(r, 13) == 0.0);
  r[0].test_accuracy = r[1].test_accuracy = 1.0;
  CHECK(average_accuracy(r) == 1.0);
}

TEST_CASE("run_single") {
  const auto d = small_mofn(2);
  const auto c = quick_config();
  for (auto alg : {Algorithm::Fsro, Algorithm::Ga, Algorithm::Bpso}) {
    CAPTURE(to_string(alg));
    const auto r = run_single(alg, d, c, 11);
    CHECK(r.seed == 11);
    CHECK(r.algorithm == to_string(alg));
    CHECK(r.selected_count == r.best_mask.count());
    CHECK(r.trace.size() == 16);
    CHECK(r.trace.back().best_fitness == r.best_fitness);
    CHECK(r.wall_time_seconds >= 0.0);

    // best fitness is the objective of the recorded mask on the seed's split
    Rng rng(11);
    const auto split = stratified_split(d, c.fitness.train_fraction, rng);
    const FitnessEvaluator eval(d, split, c.fitness);
    CHECK(eval.fitness(r.best_mask) == r.best_fitness);
    CHECK(eval.accuracy(r.best_mask) == r.test_accuracy);
  }
}

TEST_CASE("run_experiment") {
  const auto d = small_mofn(3);
  auto c = quick_config();
  SUBCASE("M=1 -> mean = best = worst, std = 0") {
    const auto e = run_experiment(Algorithm::Fsro, d, c, 1, 5);
    CHECK(e.summary.runs == 1);
    CHECK(e.summary.mean_fitness == e.summary.best_fitness);
    CHECK(e.summary.worst_fitness == e.summary.best_fitness);
    CHECK(e.summary.std_fitness == 0.0);
  }
  SUBCASE("seeds, ordering and independence from thread count") {
    const auto e = run_experiment(Algorithm::Fsro, d, c, 4, 100);
    REQUIRE(e.runs.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(e.runs[k].seed == 100 + k);
    c.threads = 1;
    const auto serial = run_experiment(Algorithm::Fsro, d, c, 4, 100);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(serial.runs[k].best_fitness == e.runs[k].best_fitness);
      CHECK(serial.runs[k].best_mask == e.runs[k].best_mask);
      CHECK(serial.runs[k].trace == e.runs[k].trace);
    }
    CHECK(serial.summary.mean_fitness == e.summary.mean_fitness);
    CHECK(serial.summary.std_fitness == e.summary.std_fitness);
  }
  SUBCASE("invalid configuration") {
    c.fitness.alpha = -0.1;
    CHECK_THROWS_AS(run_experiment(Algorithm::Fsro, d, c, 2, 1), ConfigError);
    c = quick_config();
    CHECK_THROWS(run_experiment(Algorithm::Fsro, d, c, 0, 1));
  }
}

TEST_CASE("wilcoxon_signed_rank") {
  SUBCASE("identical samples -> p = 1, no difference") {
    const std::vector<double> a = {0.1, 0.2, 0.3};
    const auto r = wilcoxon_signed_rank(a, a);
    CHECK(r.p_value == 1.0);
    CHECK(r.decision == Decision::NoDifference);
    CHECK(notation(r.decision) == "-");
    CHECK(r.n_nonzero == 0);
  }
  SUBCASE("six same-sign differences -> p = 2/64") {
    const std::vector<double> a = {1, 2, 3, 4, 5, 6};
    const std::vector<double> b(6, 0.0);
    const auto r = wilcoxon_signed_rank(a, b);
    CHECK(r.p_value == 0.03125);
    CHECK(r.decision == Decision::Significant);
    CHECK(notation(r.decision) == "+");
    CHECK(r.w_plus == 21.0);
    CHECK(r.w_minus == 0.0);
    CHECK(r.exact);
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS(wilcoxon_signed_rank(std::vector<double>{1, 2}, std::vector<double>{1}));
  }
  SUBCASE("exact p agrees with sign-pattern enumeration, ties included") {
    Rng rng(9);
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = 1 + rng.index(12);
      std::vector<double> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = static_cast<double>(rng.index(7));
        b[i] = static_cast<double>(rng.index(7));
      }
      const auto r = wilcoxon_signed_rank(a, b);
      REQUIRE(r.p_value == oracle::wilcoxon_exact_p(a, b));
      REQUIRE(r.p_value > 0.0);
      REQUIRE(r.p_value <= 1.0);
      REQUIRE(wilcoxon_signed_rank(b, a).p_value == r.p_value);
    }
  }
  SUBCASE("normal approximation above the exact limit") {
    std::vector<double> a(40), b(40, 0.0);
    for (std::size_t i = 0; i < 40; ++i) a[i] = static_cast<double>(i + 1);
    const auto r = wilcoxon_signed_rank(a, b);
    CHECK_FALSE(r.exact);
    CHECK(r.p_value > 0.0);
    CHECK(r.p_value < 1e-6);
    CHECK(r.decision == Decision::Significant);

    // balanced signs give a large p
    for (std::size_t i = 0; i < 40; i += 2) a[i] = -a[i];
    const auto balanced = wilcoxon_signed_rank(a, b);
    CHECK(balanced.p_value > 0.5);
    CHECK(balanced.p_value <= 1.0);

    std::vector<double> c(25), z(25, 0.0);
    for (std::size_t i = 0; i < 25; ++i) c[i] = (i < 5 ? -1.0 : 1.0) * static_cast<double>(i + 1);
    const auto t = wilcoxon_signed_rank(c, z);
    // W- = 15, mu = 162.5, sigma^2 = 25*26*51/24 = 1381.25
    const double zval = (15.0 - 162.5 + 0.5) / std::sqrt(1381.25);
    const double expected = std::erfc(-zval / std::sqrt(2.0));  // 2 * Phi(z) with z < 0
    CHECK(t.w_minus == 15.0);
    CHECK(t.p_value == doctest::Approx(expected).epsilon(1e-12));
  }
}
