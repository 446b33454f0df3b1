#include "fsro/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "fsro/csv.hpp"

namespace fsro {
namespace {

bool is_missing(std::string_view cell) {
  return cell.empty() || cell == "NA" || cell == "?" || cell == "nan" || cell == "NaN";
}

std::string position(std::size_t line, std::size_t column) {
  return "row " + std::to_string(line) + ", column " + std::to_string(column + 1);
}

std::size_t resolve_label_column(const CsvOptions& opt, const std::vector<std::string>& header,
                                 std::size_t n_columns) {
  if (std::holds_alternative<std::monostate>(opt.label_column)) return n_columns - 1;
  if (const auto* idx = std::get_if<std::size_t>(&opt.label_column)) {
    if (*idx >= n_columns)
      throw DataError("label column " + std::to_string(*idx) + " out of range (" +
                      std::to_string(n_columns) + " columns)");
    return *idx;
  }
  const auto& name = std::get<std::string>(opt.label_column);
  if (header.empty()) throw DataError("label column given by name '" + name + "' but no header");
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError("label column '" + name + "' not found in header");
  return static_cast<std::size_t>(it - header.begin());
}

} // namespace

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(n_classes(), 0);
  for (int l : labels)
    if (l >= 0 && static_cast<std::size_t>(l) < counts.size()) ++counts[static_cast<std::size_t>(l)];
  return counts;
}

void Dataset::validate() const {
  if (n_features == 0) throw DataError(name + ": dataset has no features");
  if (features.size() != labels.size() * n_features)
    throw DataError(name + ": feature matrix size does not match label count");
  if (!feature_names.empty() && feature_names.size() != n_features)
    throw DataError(name + ": feature name count does not match feature count");
  for (std::size_t i = 0; i < features.size(); ++i)
    if (!std::isfinite(features[i]))
      throw DataError(name + ": non-finite value at instance " + std::to_string(i / n_features) +
                      ", feature " + std::to_string(i % n_features));
  for (int l : labels)
    if (l < 0 || static_cast<std::size_t>(l) >= n_classes())
      throw DataError(name + ": label index out of range");
  if (n_classes() < 2) throw DataError(name + ": dataset has a single class");
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options,
                 LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  Dataset ds;
  ds.name = path.stem().string();
  std::vector<std::string> header;
  std::unordered_map<std::string, int> class_index;
  std::size_t n_columns = 0;
  std::size_t label_col = 0;
  LoadReport rep;

  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = csv::split_line(line);
    if (first) {
      first = false;
      n_columns = cells.size();
      if (n_columns < 2) throw DataError(path.string() + ": need at least 2 columns");
      if (options.has_header) header = cells;
      label_col = resolve_label_column(options, header, n_columns);
      ds.n_features = n_columns - 1;
      if (options.has_header) {
        for (std::size_t c = 0; c < n_columns; ++c)
          if (c != label_col) ds.feature_names.push_back(header[c]);
        continue;
      }
    }
    if (cells.size() != n_columns)
      throw DataError(path.string() + ": row " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " fields, expected " +
                      std::to_string(n_columns));
    ++rep.rows_read;

    bool missing = false;
    std::size_t missing_col = 0;
    for (std::size_t c = 0; c < n_columns && !missing; ++c)
      if (is_missing(cells[c])) {
        missing = true;
        missing_col = c;
      }
    if (missing) {
      if (options.missing == MissingPolicy::DropRows) {
        ++rep.rows_dropped;
        continue;
      }
      throw DataError(path.string() + ": missing value at " + position(line_no, missing_col));
    }

    for (std::size_t c = 0; c < n_columns; ++c) {
      if (c == label_col) continue;
      const auto v = csv::parse_real(cells[c]);
      if (!v || !std::isfinite(*v))
        throw DataError(path.string() + ": unparseable value '" + cells[c] + "' at " +
                        position(line_no, c));
      ds.features.push_back(*v);
    }
    const auto [it, inserted] =
        class_index.try_emplace(cells[label_col], static_cast<int>(ds.class_names.size()));
    if (inserted) ds.class_names.push_back(cells[label_col]);
    ds.labels.push_back(it->second);
  }

  if (report) *report = rep;
  if (ds.labels.empty()) throw DataError(path.string() + ": no data rows");
  ds.validate();
  return ds;
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (std::size_t f = 0; f < dataset.n_features; ++f) {
    out << (dataset.feature_names.empty() ? "f" + std::to_string(f + 1)
                                          : csv::escape_field(dataset.feature_names[f]))
        << ',';
  }
  out << "class\n";
  for (std::size_t i = 0; i < dataset.n_instances(); ++i) {
    for (std::size_t f = 0; f < dataset.n_features; ++f)
      out << csv::format_real(dataset.at(i, f)) << ',';
    out << csv::escape_field(dataset.class_names[static_cast<std::size_t>(dataset.labels[i])])
        << '\n';
  }
  if (!out) throw DataError("write failed for " + path.string());
}

Split stratified_split(const Dataset& dataset, double train_fraction, Rng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train fraction must lie in (0, 1)");
  std::vector<std::vector<std::size_t>> by_class(dataset.n_classes());
  for (std::size_t i = 0; i < dataset.n_instances(); ++i)
    by_class[static_cast<std::size_t>(dataset.labels[i])].push_back(i);

  Split split;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& idx = by_class[c];
    const std::size_t n = idx.size();
    if (n < 2)
      throw DataError("class " + std::to_string(c) + " has " + std::to_string(n) +
                      " instance(s); stratified split needs at least 2");
    for (std::size_t i = n - 1; i > 0; --i) std::swap(idx[i], idx[rng.index(i + 1)]);
    auto n_test = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * (1.0 - train_fraction) + 0.5));
    n_test = std::clamp<std::size_t>(n_test, 1, n - 1);
    split.test.insert(split.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    split.train.insert(split.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

Dataset generate_m_of_n(std::size_t n_relevant, std::size_t m, std::size_t n_noise,
                        std::size_t n_instances, Rng& rng) {
  if (n_relevant == 0) throw ConfigError("m-of-n: n_relevant must be positive");
  if (m > n_relevant) throw ConfigError("m-of-n: m must not exceed n_relevant");
  if (n_instances == 0) throw ConfigError("m-of-n: n_instances must be positive");

  Dataset ds;
  ds.name = "m-of-n";
  ds.n_features = n_relevant + n_noise;
  ds.class_names = {"0", "1"};
  ds.features.reserve(n_instances * ds.n_features);
  ds.labels.reserve(n_instances);
  for (std::size_t f = 0; f < ds.n_features; ++f)
    ds.feature_names.push_back((f < n_relevant ? "rel" : "noise") +
                               std::to_string(f < n_relevant ? f + 1 : f - n_relevant + 1));
  for (std::size_t i = 0; i < n_instances; ++i) {
    std::size_t ones = 0;
    for (std::size_t f = 0; f < ds.n_features; ++f) {
      const bool b = rng.bit();
      if (f < n_relevant && b) ++ones;
      ds.features.push_back(b ? 1.0 : 0.0);
    }
    ds.labels.push_back(ones >= m ? 1 : 0);
  }
  return ds;
}

MofNSpec parse_m_of_n_spec(std::string_view text) {
  std::size_t values[4] = {0, 0, 0, 0};
  std::size_t k = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view field = text.substr(start, end - start);
    if (k >= 4) throw ConfigError("m-of-n spec takes 4 values: n_relevant,m,n_noise,n_instances");
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), values[k]);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
      throw ConfigError("m-of-n spec: bad integer '" + std::string(field) + "'");
    ++k;
    start = end + 1;
  }
  if (k != 4) throw ConfigError("m-of-n spec takes 4 values: n_relevant,m,n_noise,n_instances");
  return {values[0], values[1], values[2], values[3]};
}

} // namespace fsro
