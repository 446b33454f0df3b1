#include "fsro/simd/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace fsro::simd {
namespace {

struct KernelTable {
  Backend backend;
  void (*squared_distances)(std::span<const double* const>, std::span<const double>,
                            std::span<double>);
  std::size_t (*count_matches)(std::span<const std::uint8_t>, std::span<const std::uint8_t>);
};

constexpr KernelTable kScalar{Backend::Scalar, &scalar::squared_distances, &scalar::count_matches};
#if defined(FSRO_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2{Backend::Avx2, &avx2::squared_distances, &avx2::count_matches};
#endif
#if defined(FSRO_HAVE_NEON_KERNELS)
constexpr KernelTable kNeon{Backend::Neon, &neon::squared_distances, &neon::count_matches};
#endif

const KernelTable* table_for(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return &kScalar;
    case Backend::Avx2:
#if defined(FSRO_HAVE_AVX2_KERNELS)
      if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
      return nullptr;
    case Backend::Neon:
#if defined(FSRO_HAVE_NEON_KERNELS)
      return &kNeon;  // Advanced SIMD is mandatory on AArch64.
#endif
      return nullptr;
  }
  return nullptr;
}

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable& active() noexcept {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = table_for(best_backend());
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

} // namespace

std::string_view to_string(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool backend_available(Backend b) noexcept { return table_for(b) != nullptr; }

Backend best_backend() noexcept {
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
  if (backend_available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

Backend active_backend() noexcept { return active().backend; }

void set_backend(Backend b) {
  const KernelTable* t = table_for(b);
  if (t == nullptr)
    throw std::invalid_argument("SIMD backend '" + std::string(to_string(b)) +
                                "' is not available on this CPU/build");
  g_active.store(t, std::memory_order_release);
}

void squared_distances(std::span<const double* const> columns, std::span<const double> query,
                       std::span<double> out) {
  active().squared_distances(columns, query, out);
}

std::size_t count_matches(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  return active().count_matches(a, b);
}

} // namespace fsro::simd
