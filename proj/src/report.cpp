#include "fsro/report.hpp"

#include <charconv>
#include <fstream>

#include "fsro/csv.hpp"

namespace fsro::report {
namespace {

using csv::format_real;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw DataError("write failed for " + path.string());
}

// Data rows (header skipped), each split into fields with an expected width.
std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path,
                                                std::size_t width) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    auto fields = csv::split_line(line);
    if (fields.size() != width)
      throw DataError(path.string() + ": expected " + std::to_string(width) + " fields, got " +
                      std::to_string(fields.size()));
    rows.push_back(std::move(fields));
  }
  return rows;
}

double real(const std::string& s) {
  const auto v = csv::parse_real(s);
  if (!v) throw DataError("bad real '" + s + "'");
  return *v;
}

std::uint64_t integer(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw DataError("bad integer '" + s + "'");
  return v;
}

} // namespace

void write_summary(const std::filesystem::path& path, std::string_view algorithm,
                   std::string_view dataset, const ExperimentSummary& s) {
  auto out = open_out(path);
  out << "algorithm,dataset,runs,mean_fitness,best_fitness,worst_fitness,std_fitness,"
         "average_accuracy,average_reduction\n";
  out << csv::escape_field(algorithm) << ',' << csv::escape_field(dataset) << ',' << s.runs << ','
      << format_real(s.mean_fitness) << ',' << format_real(s.best_fitness) << ','
      << format_real(s.worst_fitness) << ',' << format_real(s.std_fitness) << ','
      << format_real(s.average_accuracy) << ',' << format_real(s.average_reduction) << '\n';
  close_out(out, path);
}

ExperimentSummary read_summary(const std::filesystem::path& path) {
  const auto rows = read_rows(path, 9);
  if (rows.size() != 1) throw DataError(path.string() + ": expected exactly one summary row");
  const auto& r = rows.front();
  ExperimentSummary s;
  s.runs = integer(r[2]);
  s.mean_fitness = real(r[3]);
  s.best_fitness = real(r[4]);
  s.worst_fitness = real(r[5]);
  s.std_fitness = real(r[6]);
  s.average_accuracy = real(r[7]);
  s.average_reduction = real(r[8]);
  return s;
}

void write_runs(const std::filesystem::path& path, const std::vector<RunResult>& runs) {
  auto out = open_out(path);
  out << "seed,algorithm,dataset,best_fitness,test_accuracy,selected_count,successful_captures,"
         "best_mask\n";
  for (const auto& r : runs)
    out << r.seed << ',' << csv::escape_field(r.algorithm) << ',' << csv::escape_field(r.dataset)
        << ',' << format_real(r.best_fitness) << ',' << format_real(r.test_accuracy) << ','
        << r.selected_count << ',' << r.successful_captures << ',' << r.best_mask.to_string()
        << '\n';
  close_out(out, path);
}

std::vector<RunResult> read_runs(const std::filesystem::path& path) {
  std::vector<RunResult> runs;
  for (const auto& f : read_rows(path, 8)) {
    RunResult r;
    r.seed = integer(f[0]);
    r.algorithm = f[1];
    r.dataset = f[2];
    r.best_fitness = real(f[3]);
    r.test_accuracy = real(f[4]);
    r.selected_count = integer(f[5]);
    r.successful_captures = integer(f[6]);
    r.best_mask = BitString::parse(f[7]);
    runs.push_back(std::move(r));
  }
  return runs;
}

void write_trace(const std::filesystem::path& path, const std::vector<TraceRow>& trace) {
  auto out = open_out(path);
  out << "iteration,best_fitness,frog_count,snake_count,predation_success\n";
  for (const auto& t : trace)
    out << t.iteration << ',' << format_real(t.best_fitness) << ',' << t.frog_count << ','
        << t.snake_count << ',' << (t.predation_success ? 1 : 0) << '\n';
  close_out(out, path);
}

std::vector<TraceRow> read_trace(const std::filesystem::path& path) {
  std::vector<TraceRow> trace;
  for (const auto& f : read_rows(path, 5))
    trace.push_back({integer(f[0]), real(f[1]), integer(f[2]), integer(f[3]), integer(f[4]) != 0});
  return trace;
}

void write_timing(const std::filesystem::path& path, const std::vector<RunResult>& runs) {
  auto out = open_out(path);
  out << "seed,wall_time_seconds\n";
  for (const auto& r : runs) out << r.seed << ',' << format_real(r.wall_time_seconds) << '\n';
  close_out(out, path);
}

void read_timing(const std::filesystem::path& path, std::vector<RunResult>& runs) {
  for (const auto& f : read_rows(path, 2)) {
    const auto seed = integer(f[0]);
    for (auto& r : runs)
      if (r.seed == seed) r.wall_time_seconds = real(f[1]);
  }
}

std::string trace_file_name(std::uint64_t seed) { return "trace_" + std::to_string(seed) + ".csv"; }

} // namespace fsro::report
