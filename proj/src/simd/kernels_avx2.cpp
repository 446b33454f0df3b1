// Compiled with -mavx2 (no -mfma); only reached after a runtime CPU check.
#include "fsro/simd/kernels.hpp"

#include <immintrin.h>

namespace fsro::simd::avx2 {

void squared_distances(std::span<const double* const> columns, std::span<const double> query,
                       std::span<double> out) {
  const std::size_t rows = out.size();
  const std::size_t nf = columns.size();
  std::size_t j = 0;
  for (; j + 8 <= rows; j += 8) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    for (std::size_t f = 0; f < nf; ++f) {
      const __m256d q = _mm256_set1_pd(query[f]);
      const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(columns[f] + j), q);
      const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(columns[f] + j + 4), q);
      acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
      acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
    }
    _mm256_storeu_pd(out.data() + j, acc0);
    _mm256_storeu_pd(out.data() + j + 4, acc1);
  }
  for (; j + 4 <= rows; j += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t f = 0; f < nf; ++f) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(columns[f] + j), _mm256_set1_pd(query[f]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    _mm256_storeu_pd(out.data() + j, acc);
  }
  for (; j < rows; ++j) {
    double acc = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
      const double d = columns[f][j] - query[f];
      acc = acc + d * d;
    }
    out[j] = acc;
  }
}

std::size_t count_matches(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  const std::size_t n = a.size();
  std::size_t matches = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    const auto eq = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
    matches += static_cast<std::size_t>(__builtin_popcount(eq));
  }
  for (; i < n; ++i) matches += (a[i] == b[i]) ? 1 : 0;
  return matches;
}

} // namespace fsro::simd::avx2
