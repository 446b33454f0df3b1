#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. They favour obviousness over speed and share no code with the
// library beyond basic types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fsro/core.hpp"
#include "fsro/fitness.hpp"

namespace oracle {

// All-pairs KNN: Euclidean distances (with sqrt) over selected features, a
// full stable sort by (distance, index), then a vote counted class by class.
inline int knn(const std::vector<std::vector<double>>& train_rows, const std::vector<int>& labels,
               std::size_t n_classes, const std::vector<double>& query, std::size_t k,
               const fsro::BitString& mask) {
  struct Entry {
    double dist;
    std::size_t index;
  };
  std::vector<Entry> all;
  for (std::size_t i = 0; i < train_rows.size(); ++i) {
    double s = 0.0;
    for (std::size_t f = 0; f < mask.size(); ++f)
      if (mask[f]) s += (train_rows[i][f] - query[f]) * (train_rows[i][f] - query[f]);
    all.push_back({std::sqrt(s), i});
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
    return a.dist != b.dist ? a.dist < b.dist : a.index < b.index;
  });
  int best_class = 0;
  std::size_t best_votes = 0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    std::size_t votes = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (labels[all[j].index] == static_cast<int>(c)) ++votes;
    if (votes > best_votes) {
      best_votes = votes;
      best_class = static_cast<int>(c);
    }
  }
  return best_class;
}

// Two-sided exact signed-rank p by listing all 2^m sign patterns of the
// observed |d| ranks: p = #{patterns with min(W+, W-) <= observed} / 2^m.
inline double wilcoxon_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] - b[i] != 0.0) d.push_back(a[i] - b[i]);
  const std::size_t m = d.size();
  if (m == 0) return 1.0;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return std::abs(d[x]) < std::abs(d[y]); });
  std::vector<double> rank(m);
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i;
    while (j + 1 < m && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) rank[order[t]] = avg;
    i = j + 1;
  }
  double wp = 0.0, wm = 0.0;
  for (std::size_t i = 0; i < m; ++i) (d[i] > 0 ? wp : wm) += rank[i];
  const double observed = std::min(wp, wm);
  std::uint64_t hits = 0;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
    double p = 0.0, q = 0.0;
    for (std::size_t i = 0; i < m; ++i) ((pattern >> i) & 1 ? p : q) += rank[i];
    if (std::min(p, q) <= observed + 1e-9) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

// Best fitness over every non-empty mask of length D.
struct Optimum {
  double fitness = 2.0;
  std::vector<fsro::BitString> masks;
};

inline Optimum exhaustive_optimum(std::size_t dim, const fsro::EvaluateFn& evaluate) {
  Optimum best;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << dim); ++bits) {
    fsro::BitString mask(dim);
    for (std::size_t i = 0; i < dim; ++i) mask.set(i, (bits >> i) & 1);
    const double f = evaluate(mask);
    if (f < best.fitness) {
      best.fitness = f;
      best.masks = {mask};
    } else if (f == best.fitness) {
      best.masks.push_back(mask);
    }
  }
  return best;
}

} // namespace oracle
