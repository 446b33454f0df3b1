#include "fsro/fitness.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <utility>

#include "fsro/simd/kernels.hpp"

namespace fsro {
namespace {

void check_mask(const BitString& mask, std::size_t n_features) {
  if (mask.size() != n_features)
    throw std::invalid_argument("mask length " + std::to_string(mask.size()) +
                                " does not match feature count " + std::to_string(n_features));
  if (mask.none()) throw std::invalid_argument("mask selects no features");
}

void check_k(std::size_t k, std::size_t train_rows) {
  if (k == 0 || k > train_rows)
    throw std::invalid_argument("k = " + std::to_string(k) + " must lie in [1, " +
                                std::to_string(train_rows) + "]");
}

// Squared distances from one full-length query row to every training row.
void masked_distances(const LabeledSet& train, std::span<const double> query,
                      std::span<const std::size_t> selected, std::vector<const double*>& cols,
                      std::vector<double>& q, std::vector<double>& out) {
  cols.clear();
  q.clear();
  for (std::size_t f : selected) {
    cols.push_back(train.column(f));
    q.push_back(query[f]);
  }
  out.resize(train.rows);
  simd::squared_distances(cols, q, out);
}

} // namespace

void FitnessParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (k_neighbors == 0) throw ConfigError("k_neighbors must be positive");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train_fraction must lie in (0, 1)");
}

std::vector<double> LabeledSet::row(std::size_t i) const {
  std::vector<double> r(n_features);
  for (std::size_t f = 0; f < n_features; ++f) r[f] = at(i, f);
  return r;
}

LabeledSet LabeledSet::from_rows(std::span<const double> row_major, std::size_t n_features,
                                 std::span<const int> labels, std::size_t n_classes) {
  LabeledSet s;
  s.rows = labels.size();
  s.n_features = n_features;
  s.n_classes = n_classes;
  s.labels.assign(labels.begin(), labels.end());
  s.columns.resize(s.rows * n_features);
  for (std::size_t i = 0; i < s.rows; ++i)
    for (std::size_t f = 0; f < n_features; ++f)
      s.columns[f * s.rows + i] = row_major[i * n_features + f];
  return s;
}

std::vector<double> minmax_normalize(std::span<const double> train, std::span<const double> apply_to,
                                     std::size_t n_features) {
  if (n_features == 0 || train.empty() || train.size() % n_features != 0 ||
      apply_to.size() % n_features != 0)
    throw std::invalid_argument("minmax_normalize: inconsistent matrix shapes");
  std::vector<double> lo(n_features, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n_features, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < train.size(); ++i) {
    const std::size_t f = i % n_features;
    lo[f] = std::min(lo[f], train[i]);
    hi[f] = std::max(hi[f], train[i]);
  }
  std::vector<double> out(apply_to.size());
  for (std::size_t i = 0; i < apply_to.size(); ++i) {
    const std::size_t f = i % n_features;
    const double range = hi[f] - lo[f];
    out[i] = range > 0.0 ? (apply_to[i] - lo[f]) / range : 0.0;
  }
  return out;
}

int vote_k_nearest(std::span<const double> squared_distances, std::span<const int> labels,
                   std::size_t k, std::size_t n_classes) {
  check_k(k, squared_distances.size());
  // Insertion into a sorted top-k list. Scanning in index order and requiring
  // a strictly smaller distance keeps the lower index on ties.
  std::vector<std::pair<double, std::size_t>> best;
  best.reserve(k + 1);
  for (std::size_t j = 0; j < squared_distances.size(); ++j) {
    const double d = squared_distances[j];
    if (best.size() == k && !(d < best.back().first)) continue;
    auto pos = std::upper_bound(best.begin(), best.end(), d,
                                [](double v, const auto& e) { return v < e.first; });
    best.insert(pos, {d, j});
    if (best.size() > k) best.pop_back();
  }
  std::vector<std::size_t> votes(n_classes, 0);
  for (const auto& [d, j] : best) ++votes[static_cast<std::size_t>(labels[j])];
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

int knn_classify(const LabeledSet& train, std::span<const double> query, std::size_t k,
                 const BitString& mask) {
  check_mask(mask, train.n_features);
  check_k(k, train.rows);
  if (query.size() != train.n_features)
    throw std::invalid_argument("knn_classify: query length does not match feature count");
  const auto selected = mask.selected();
  std::vector<const double*> cols;
  std::vector<double> q;
  std::vector<double> dist;
  masked_distances(train, query, selected, cols, q, dist);
  return vote_k_nearest(dist, train.labels, k, train.n_classes);
}

double error_rate(const LabeledSet& train, const LabeledSet& test, std::size_t k,
                  const BitString& mask) {
  check_mask(mask, train.n_features);
  check_k(k, train.rows);
  if (test.n_features != train.n_features)
    throw std::invalid_argument("error_rate: train/test feature counts differ");
  if (test.rows == 0) throw std::invalid_argument("error_rate: empty test set");
  const auto selected = mask.selected();
  std::vector<const double*> cols;
  std::vector<double> q;
  std::vector<double> dist;
  std::vector<double> query(train.n_features);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < test.rows; ++i) {
    for (std::size_t f : selected) query[f] = test.at(i, f);
    masked_distances(train, query, selected, cols, q, dist);
    if (vote_k_nearest(dist, train.labels, k, train.n_classes) != test.labels[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(test.rows);
}

double fitness_value(double error_rate, std::size_t selected, std::size_t total, double alpha) {
  if (total == 0) throw std::invalid_argument("fitness_value: zero total features");
  return alpha * error_rate +
         (1.0 - alpha) * static_cast<double>(selected) / static_cast<double>(total);
}

FitnessEvaluator::FitnessEvaluator(const Dataset& dataset, const Split& split, FitnessParams params)
    : params_(params) {
  params_.validate();
  if (split.train.empty() || split.test.empty())
    throw std::invalid_argument("FitnessEvaluator: empty train or test partition");
  if (params_.k_neighbors > split.train.size())
    throw ConfigError("k_neighbors (" + std::to_string(params_.k_neighbors) +
                      ") exceeds training-set size (" + std::to_string(split.train.size()) + ")");
  const std::size_t d = dataset.n_features;
  auto gather = [&](const std::vector<std::size_t>& idx, std::vector<double>& rows,
                    std::vector<int>& labels) {
    rows.reserve(idx.size() * d);
    for (std::size_t i : idx) {
      const auto r = dataset.row(i);
      rows.insert(rows.end(), r.begin(), r.end());
      labels.push_back(dataset.labels[i]);
    }
  };
  std::vector<double> train_rows, test_rows;
  std::vector<int> train_labels, test_labels;
  gather(split.train, train_rows, train_labels);
  gather(split.test, test_rows, test_labels);
  const auto train_norm = minmax_normalize(train_rows, train_rows, d);
  const auto test_norm = minmax_normalize(train_rows, test_rows, d);
  train_ = LabeledSet::from_rows(train_norm, d, train_labels, dataset.n_classes());
  test_ = LabeledSet::from_rows(test_norm, d, test_labels, dataset.n_classes());
}

FitnessEvaluator::Result FitnessEvaluator::compute(const BitString& mask) const {
  const double err = error_rate(train_, test_, params_.k_neighbors, mask);
  return {err, fitness_value(err, mask.count(), mask.size(), params_.alpha)};
}

FitnessEvaluator::Result FitnessEvaluator::evaluate(const BitString& mask) const {
  check_mask(mask, train_.n_features);
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = cache_.find(mask); it != cache_.end()) return it->second;
  }
  const Result r = compute(mask);
  std::unique_lock lock(cache_mutex_);
  if (cache_.try_emplace(mask, r).second) ++evaluations_;
  return r;
}

std::size_t FitnessEvaluator::cache_size() const {
  std::shared_lock lock(cache_mutex_);
  return cache_.size();
}

std::size_t FitnessEvaluator::evaluations() const {
  std::shared_lock lock(cache_mutex_);
  return evaluations_;
}

EvaluateFn FitnessEvaluator::as_function() const {
  return [this](const BitString& mask) { return fitness(mask); };
}

} // namespace fsro
