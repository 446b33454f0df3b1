#pragma once

// CSV persistence of experiment results. Reals are written in shortest
// round-trip form, so reading a file back reproduces the values exactly.
//
//   summary.csv  algorithm,dataset,runs,mean_fitness,best_fitness,worst_fitness,
//                std_fitness,average_accuracy,average_reduction
//   runs.csv     seed,algorithm,dataset,best_fitness,test_accuracy,selected_count,
//                successful_captures,best_mask
//   trace_<seed>.csv  iteration,best_fitness,frog_count,snake_count,predation_success
//   timing.csv   seed,wall_time_seconds
//
// Wall-clock data lives only in timing.csv so the other files are
// byte-identical across repeated runs with the same configuration.

#include <filesystem>
#include <string>
#include <vector>

#include "fsro/bench.hpp"

namespace fsro::report {

void write_summary(const std::filesystem::path& path, std::string_view algorithm,
                   std::string_view dataset, const ExperimentSummary& summary);
/// Reads the single data row back (average_time is left at 0).
ExperimentSummary read_summary(const std::filesystem::path& path);

void write_runs(const std::filesystem::path& path, const std::vector<RunResult>& runs);
/// Trace and wall time are not part of runs.csv and come back empty/zero.
std::vector<RunResult> read_runs(const std::filesystem::path& path);

void write_trace(const std::filesystem::path& path, const std::vector<TraceRow>& trace);
std::vector<TraceRow> read_trace(const std::filesystem::path& path);

void write_timing(const std::filesystem::path& path, const std::vector<RunResult>& runs);
/// Fills wall_time_seconds of the runs with matching seeds.
void read_timing(const std::filesystem::path& path, std::vector<RunResult>& runs);

std::string trace_file_name(std::uint64_t seed);

} // namespace fsro::report
