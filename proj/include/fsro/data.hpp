#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fsro/core.hpp"
#include "fsro/rng.hpp"

namespace fsro {

/// Feature matrix (row-major, n_instances x n_features) with dense class labels.
///
/// Immutable once built; validate() enforces: finite values, label count
/// matching rows, labels in [0, C), and at least two classes.
struct Dataset {
  std::string name;
  std::size_t n_features = 0;
  std::vector<double> features;
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;

  std::size_t n_instances() const noexcept { return labels.size(); }
  std::size_t n_classes() const noexcept { return class_names.size(); }
  std::span<const double> row(std::size_t i) const noexcept {
    return {features.data() + i * n_features, n_features};
  }
  double at(std::size_t i, std::size_t f) const noexcept { return features[i * n_features + f]; }
  std::vector<std::size_t> class_counts() const;

  /// Throws DataError describing the first violated invariant.
  void validate() const;
};

/// Disjoint train/test index sets covering every instance once (each sorted).
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  friend bool operator==(const Split&, const Split&) = default;
};

enum class MissingPolicy { Error, DropRows };

struct CsvOptions {
  /// Column index, column name (needs a header), or monostate for the last column.
  std::variant<std::monostate, std::size_t, std::string> label_column;
  bool has_header = true;
  MissingPolicy missing = MissingPolicy::Error;
};

struct LoadReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
};

/// Reads numeric features plus one label column. Labels become dense class
/// indexes in first-appearance order. Cells that are empty, "NA", "?" or
/// "nan" count as missing. Throws DataError naming row/column on bad cells.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {},
                 LoadReport* report = nullptr);

/// Writes features then a trailing "class" column holding the class names.
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

/// Per class: shuffle, then floor(n_c*(1-f)+0.5) go to test, clamped to
/// [1, n_c - 1] so both partitions see every class. Classes are processed in
/// index order, consuming one Fisher-Yates shuffle each.
Split stratified_split(const Dataset& dataset, double train_fraction, Rng& rng);

/// Synthetic M-of-n concept: binary features; label 1 iff at least m of the
/// first n_relevant features are 1; the remaining n_noise features are noise.
Dataset generate_m_of_n(std::size_t n_relevant, std::size_t m, std::size_t n_noise,
                        std::size_t n_instances, Rng& rng);

/// Parses "n_relevant,m,n_noise,n_instances" (as in --synthetic m-of-n:6,3,7,1000).
struct MofNSpec {
  std::size_t n_relevant = 6;
  std::size_t m = 3;
  std::size_t n_noise = 7;
  std::size_t n_instances = 1000;
};
MofNSpec parse_m_of_n_spec(std::string_view text);

} // namespace fsro
