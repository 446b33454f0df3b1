// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fsro/bench.hpp"
#include "fsro/cli.hpp"
#include "fsro/data.hpp"
#include "fsro/fitness.hpp"
#include "fsro/fsro.hpp"
#include "fsro/report.hpp"
#include "oracles.hpp"

using namespace fsro;
namespace fs = std::filesystem;

namespace {

const fs::path kDataDir = FSRO_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Dataset m_of_n_13() {
  Rng rng(0);
  auto d = generate_m_of_n(6, 3, 7, 1000, rng);
  d.name = "m-of-n";
  return d;
}

ExperimentConfig defaults() { return ExperimentConfig{}; }

// 1
Outcome m_of_n_reproduction() {
  const auto ex = run_experiment(Algorithm::Fsro, m_of_n_13(), defaults(), 10, 1);
  const auto& s = ex.summary;
  return {s.average_accuracy >= 0.99 && s.best_fitness <= 0.055,
          "avg accuracy " + fmt("%.4f", s.average_accuracy) + " (>= 0.99), best fitness " +
              fmt("%.4f", s.best_fitness) + " (<= 0.055)"};
}

// 2
Outcome wine_reproduction() {
  const auto ex = run_experiment(Algorithm::Fsro, load_csv(kDataDir / "wine.csv"), defaults(), 10, 1);
  return {ex.summary.average_accuracy >= 0.93,
          "avg accuracy " + fmt("%.4f", ex.summary.average_accuracy) + " (>= 0.93)"};
}

// 3
Outcome breast_cancer_reduction() {
  const auto ex =
      run_experiment(Algorithm::Fsro, load_csv(kDataDir / "breast_cancer.csv"), defaults(), 10, 1);
  const auto& s = ex.summary;
  return {s.average_reduction >= 4.0 && s.average_accuracy >= 0.95,
          "avg reduction " + fmt("%.2f", s.average_reduction) + " of 9 (>= 4), avg accuracy " +
              fmt("%.4f", s.average_accuracy) + " (>= 0.95)"};
}

// 4
Outcome iteration_scaling() {
  const auto wine = load_csv(kDataDir / "wine.csv");
  auto c100 = defaults();
  auto c300 = defaults();
  c100.set_iterations(100);
  c300.set_iterations(300);
  const auto a = run_experiment(Algorithm::Fsro, wine, c100, 10, 101);
  const auto b = run_experiment(Algorithm::Fsro, wine, c300, 10, 101);
  return {b.summary.mean_fitness <= a.summary.mean_fitness,
          "mean best fitness " + fmt("%.5f", b.summary.mean_fitness) + " at 300 vs " +
              fmt("%.5f", a.summary.mean_fitness) + " at 100 iterations"};
}

// 5: real-valued features, label driven by the first two with label noise, so
// the optimum trades error against subset size non-trivially.
Dataset tiny_dataset(std::size_t dim, Rng& rng) {
  for (;;) {
    Dataset d;
    d.name = "tiny";
    d.n_features = dim;
    d.class_names = {"0", "1"};
    for (int i = 0; i < 20; ++i) {
      std::vector<double> x(dim);
      for (auto& v : x) v = rng.uniform();
      const double score = x[0] + (dim > 1 ? 0.5 * x[1] : 0.0) + 0.4 * rng.uniform();
      d.features.insert(d.features.end(), x.begin(), x.end());
      d.labels.push_back(score > 0.95 ? 1 : 0);
    }
    const auto counts = d.class_counts();
    if (counts[0] >= 3 && counts[1] >= 3) return d;
  }
}

Outcome exhaustive_oracle() {
  ExperimentConfig c = defaults();
  c.set_population(8);
  c.set_iterations(200);
  std::size_t found = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng data_rng(1000 + seed);
    const std::size_t dim = 2 + static_cast<std::size_t>(seed % 3);
    const auto d = tiny_dataset(dim, data_rng);
    const auto r = run_single(Algorithm::Fsro, d, c, seed);
    Rng split_rng(seed);
    const auto split = stratified_split(d, c.fitness.train_fraction, split_rng);
    const FitnessEvaluator eval(d, split, c.fitness);
    const auto opt = oracle::exhaustive_optimum(dim, eval.as_function());
    if (r.best_fitness == opt.fitness) ++found;
  }
  return {found >= 95, std::to_string(found) + "/100 runs found the exhaustive optimum (>= 95)"};
}

// 6
Outcome replicator_suite() {
  Rng rng(6);
  const double floor = FsroParams{}.share_floor;
  std::size_t sum_fail = 0, mono_fail = 0, interior = 0;
  for (int t = 0; t < 10000; ++t) {
    const double x = floor + (1.0 - 2.0 * floor) * rng.uniform();
    const std::size_t nf = 1 + rng.index(39);
    const double gain_f = rng.uniform() < 0.05 ? 0.0 : rng.uniform();
    const double gain_s = rng.uniform() < 0.05 ? 0.0 : rng.uniform();
    const auto u = replicator_payoffs(gain_f, gain_s, nf, 40 - nf);
    const auto raw = replicator_update_raw({x, 1.0 - x}, u);
    const auto upd = replicator_update({x, 1.0 - x}, u, floor);
    if (std::abs(raw.first + raw.second - 1.0) > 1e-12) ++sum_fail;
    if (std::abs(upd.first + upd.second - 1.0) > 1e-12) ++sum_fail;
    if (u.first > u.second && x > 0.0 && x < 1.0) {
      ++interior;
      if (!(raw.first > x) || !(upd.first > x)) ++mono_fail;
    }
  }
  return {sum_fail == 0 && mono_fail == 0 && interior > 0,
          std::to_string(sum_fail) + " sum violations, " + std::to_string(mono_fail) +
              " monotonicity violations over " + std::to_string(interior) + " interior pairs"};
}

// 7
Outcome crossover_suite() {
  Rng rng(7);
  std::size_t failures = 0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t dim = 1 + rng.index(60);
    const auto a = BitString::random(dim, rng);
    const auto b = BitString::random(dim, rng);
    const auto two = two_point_crossover(a, b, rng);
    bool ok = dim == 1 ? (two.p1 == 0 && two.p2 == 0) : (two.p1 < two.p2 && two.p2 < dim);
    for (std::size_t i = 0; i < dim; ++i)
      ok = ok && two.child[i] == ((i >= two.p1 && i <= two.p2) ? b[i] : a[i]);
    const auto uni = uniform_crossover(a, b, rng);
    std::vector<std::size_t> changed, unchanged;
    for (std::size_t i = 0; i < dim; ++i) {
      ok = ok && (uni.child[i] == a[i] || uni.child[i] == b[i]);
      ok = ok && uni.child[i] == (uni.record.mask[i] ? b[i] : a[i]);
      (uni.child[i] != a[i] ? changed : unchanged).push_back(i);
    }
    ok = ok && uni.record.changed == changed && uni.record.unchanged == unchanged;
    if (!ok) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " failing trials of 10000"};
}

// 8
Outcome knn_oracle() {
  Rng rng(8);
  std::size_t mismatches = 0, queries = 0;
  // hand cases for both tie rules
  {
    const std::vector<double> rows = {2, 0, -2, 0};
    const std::vector<int> labels = {1, 0};
    const auto train = LabeledSet::from_rows(rows, 2, labels, 2);
    mismatches += knn_classify(train, std::vector<double>{0, 0}, 2, BitString{1, 1}) != 0;
    const std::vector<double> rows3 = {0, 7, 1, 7, 2, 7};
    const std::vector<int> labels3 = {2, 1, 0};
    const auto train3 = LabeledSet::from_rows(rows3, 2, labels3, 3);
    mismatches += knn_classify(train3, std::vector<double>{9, 7}, 1, BitString{0, 1}) != 2;
  }
  for (int fixture = 0; fixture < 100; ++fixture) {
    const std::size_t n = 1 + rng.index(50);
    const std::size_t dim = 1 + rng.index(10);
    const std::size_t classes = 2 + rng.index(3);
    std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
    std::vector<double> flat;
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : rows[i]) v = static_cast<double>(rng.index(4));
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
      labels[i] = static_cast<int>(rng.index(classes));
    }
    const auto train = LabeledSet::from_rows(flat, dim, labels, classes);
    auto mask = BitString::random(dim, rng);
    repair_zero_mask(mask, rng);
    for (int q = 0; q < 10; ++q) {
      std::vector<double> query(dim);
      for (auto& v : query) v = static_cast<double>(rng.index(4));
      const std::size_t k = 1 + rng.index(std::min<std::size_t>(n, 9));
      ++queries;
      if (knn_classify(train, query, k, mask) != oracle::knn(rows, labels, classes, query, k, mask))
        ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over " +
                               std::to_string(queries) + " queries on 100 fixtures + 2 tie cases"};
}

// 9
Outcome wilcoxon_oracle() {
  const std::vector<double> hand_a = {1, 2, 3, 4, 5, 6};
  const std::vector<double> hand_b(6, 0.0);
  const auto hand = wilcoxon_signed_rank(hand_a, hand_b);
  const bool hand_ok = hand.p_value == 0.03125 && hand.decision == Decision::Significant;

  Rng rng(9);
  std::size_t mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.index(12);
    std::vector<double> a(n), b(n);
    const bool discrete = t % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = discrete ? static_cast<double>(rng.index(6)) : rng.uniform();
      b[i] = discrete ? static_cast<double>(rng.index(6)) : rng.uniform();
    }
    if (wilcoxon_signed_rank(a, b).p_value != oracle::wilcoxon_exact_p(a, b)) ++mismatches;
  }
  return {hand_ok && mismatches == 0,
          std::to_string(mismatches) + " mismatches over 200 samples; hand case p = " +
              fmt("%.5f", hand.p_value)};
}

// 10
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const auto base = fs::temp_directory_path() / "fsro_acceptance_determinism";
  fs::remove_all(base);
  std::vector<fs::path> dirs = {base / "a", base / "b"};
  for (const auto& dir : dirs) {
    cli::RunConfig c;
    c.dataset_path = (kDataDir / "wine.csv").string();
    c.runs = 4;
    c.seed = 1;
    c.out_dir = dir.string();
    c.finalize();
    std::ostringstream out, err;
    if (cli::cmd_run(c, out, err) != 0) return {false, "cmd_run failed: " + err.str()};
  }
  std::vector<std::string> files = {"summary.csv", "runs.csv"};
  for (std::uint64_t s = 1; s <= 4; ++s) files.push_back(report::trace_file_name(s));
  std::size_t differing = 0;
  for (const auto& f : files) {
    if (!fs::exists(dirs[0] / f)) return {false, f + " missing"};
    if (slurp(dirs[0] / f) != slurp(dirs[1] / f)) ++differing;
  }
  fs::remove_all(base);
  return {differing == 0, std::to_string(differing) + " of " + std::to_string(files.size()) +
                              " files differ between two identical invocations"};
}

// 11
Outcome baseline_sanity() {
  const auto d = m_of_n_13();
  const auto ga = run_experiment(Algorithm::Ga, d, defaults(), 10, 1);
  const auto pso = run_experiment(Algorithm::Bpso, d, defaults(), 10, 1);
  return {ga.summary.average_accuracy >= 0.95 && pso.summary.average_accuracy >= 0.95,
          "GA avg accuracy " + fmt("%.4f", ga.summary.average_accuracy) + ", BPSO " +
              fmt("%.4f", pso.summary.average_accuracy) + " (>= 0.95 each)"};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"m-of-n accuracy and best fitness", m_of_n_reproduction},
      {"wine accuracy", wine_reproduction},
      {"breast-cancer reduction and accuracy", breast_cancer_reduction},
      {"iteration scaling 300 vs 100", iteration_scaling},
      {"exhaustive optimum, D <= 4", exhaustive_oracle},
      {"replicator invariants", replicator_suite},
      {"crossover properties", crossover_suite},
      {"KNN brute-force oracle", knn_oracle},
      {"Wilcoxon enumeration oracle", wilcoxon_oracle},
      {"byte-identical reruns", determinism},
      {"GA and BPSO on m-of-n", baseline_sanity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << ": " << o.detail << " [" << fmt("%.1f", secs) << " s]"
              << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
