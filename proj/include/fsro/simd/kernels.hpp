#pragma once

// Data-parallel inner loops of the fitness evaluator and the FSRO distance.
//
// Every backend of a kernel returns bit-identical results: the distance
// kernel vectorizes across rows, so each lane accumulates its features in
// the same order as the scalar reference, and no backend fuses mul+add.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace fsro::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend b) noexcept;

/// True if the backend was compiled in and the CPU supports it.
bool backend_available(Backend b) noexcept;

/// Widest available backend; chosen at first kernel call.
Backend best_backend() noexcept;

Backend active_backend() noexcept;

/// Forces a backend (tests, benchmarking). Throws std::invalid_argument if unavailable.
void set_backend(Backend b);

/// out[j] = sum over f of (columns[f][j] - query[f])^2, accumulated in f order.
/// Each column points at out.size() contiguous doubles; columns.size() == query.size().
void squared_distances(std::span<const double* const> columns, std::span<const double> query,
                       std::span<double> out);

/// Number of positions where a[i] == b[i]; a.size() == b.size().
std::size_t count_matches(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

// Direct entry points, one namespace per backend. Only the compiled-in ones exist.
namespace scalar {
void squared_distances(std::span<const double* const> columns, std::span<const double> query,
                       std::span<double> out);
std::size_t count_matches(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define FSRO_HAVE_AVX2_KERNELS 1
namespace avx2 {
void squared_distances(std::span<const double* const> columns, std::span<const double> query,
                       std::span<double> out);
std::size_t count_matches(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
} // namespace avx2
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define FSRO_HAVE_NEON_KERNELS 1
namespace neon {
void squared_distances(std::span<const double* const> columns, std::span<const double> query,
                       std::span<double> out);
std::size_t count_matches(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
} // namespace neon
#endif

} // namespace fsro::simd
