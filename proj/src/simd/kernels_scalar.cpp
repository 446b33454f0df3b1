#include "fsro/simd/kernels.hpp"

namespace fsro::simd::scalar {

void squared_distances(std::span<const double* const> columns, std::span<const double> query,
                       std::span<double> out) {
  const std::size_t rows = out.size();
  for (std::size_t j = 0; j < rows; ++j) {
    double acc = 0.0;
    for (std::size_t f = 0; f < columns.size(); ++f) {
      const double d = columns[f][j] - query[f];
      acc = acc + d * d;
    }
    out[j] = acc;
  }
}

std::size_t count_matches(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] == b[i]) ? 1 : 0;
  return n;
}

} // namespace fsro::simd::scalar
