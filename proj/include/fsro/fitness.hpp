#pragma once

#include <cstddef>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "fsro/core.hpp"
#include "fsro/data.hpp"

namespace fsro {

/// Weighted wrapper objective: alpha * error + (1 - alpha) * |selected| / |features|.
struct FitnessParams {
  double alpha = 0.9;
  std::size_t k_neighbors = 5;
  double train_fraction = 0.8;

  double beta() const noexcept { return 1.0 - alpha; }
  void validate() const;
};

/// Labeled instances stored column-major, the layout the distance kernel reads.
struct LabeledSet {
  std::size_t rows = 0;
  std::size_t n_features = 0;
  std::size_t n_classes = 0;
  std::vector<double> columns;
  std::vector<int> labels;

  const double* column(std::size_t f) const noexcept { return columns.data() + f * rows; }
  double at(std::size_t i, std::size_t f) const noexcept { return columns[f * rows + i]; }
  std::vector<double> row(std::size_t i) const;

  /// From row-major data.
  static LabeledSet from_rows(std::span<const double> row_major, std::size_t n_features,
                              std::span<const int> labels, std::size_t n_classes);
};

/// Scales every column by (x - min) / (max - min) using the statistics of
/// `train`; constant columns map to 0. Values of `apply_to` outside the
/// training range are not clamped. Both inputs are row-major.
std::vector<double> minmax_normalize(std::span<const double> train, std::span<const double> apply_to,
                                     std::size_t n_features);

/// Majority vote of the k nearest rows given their squared distances.
/// Distance ties go to the lower row index, vote ties to the lower class.
int vote_k_nearest(std::span<const double> squared_distances, std::span<const int> labels,
                   std::size_t k, std::size_t n_classes);

/// Euclidean KNN restricted to the features selected by `mask`.
/// `query` is a full-length feature row. Throws std::invalid_argument if the
/// mask selects nothing or k is 0 or larger than the training set.
int knn_classify(const LabeledSet& train, std::span<const double> query, std::size_t k,
                 const BitString& mask);

/// Fraction of `test` rows misclassified by knn_classify.
double error_rate(const LabeledSet& train, const LabeledSet& test, std::size_t k,
                  const BitString& mask);

/// alpha * error + (1 - alpha) * selected / total.
double fitness_value(double error_rate, std::size_t selected, std::size_t total, double alpha);

/// Pure fitness function for one fixed split, with a mask-keyed cache.
///
/// evaluate() is safe to call from several threads: the cache takes a shared
/// lock for lookups and an exclusive lock for inserts.
class FitnessEvaluator {
public:
  struct Result {
    double error_rate = 0.0;
    double fitness = 0.0;
  };

  FitnessEvaluator(const Dataset& dataset, const Split& split, FitnessParams params);

  /// Throws std::invalid_argument for an all-zero or wrong-length mask.
  Result evaluate(const BitString& mask) const;
  double fitness(const BitString& mask) const { return evaluate(mask).fitness; }
  double accuracy(const BitString& mask) const { return 1.0 - evaluate(mask).error_rate; }

  std::size_t n_features() const noexcept { return train_.n_features; }
  const FitnessParams& params() const noexcept { return params_; }
  const LabeledSet& train() const noexcept { return train_; }
  const LabeledSet& test() const noexcept { return test_; }

  std::size_t cache_size() const;
  std::size_t evaluations() const;

  /// Adapter for the optimizers.
  EvaluateFn as_function() const;

private:
  Result compute(const BitString& mask) const;

  FitnessParams params_;
  LabeledSet train_;
  LabeledSet test_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<BitString, Result> cache_;
  mutable std::size_t evaluations_ = 0;
};

} // namespace fsro
