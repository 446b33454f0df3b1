#include "fsro/simd/kernels.hpp"

#if defined(FSRO_HAVE_NEON_KERNELS)

#include <arm_neon.h>

namespace fsro::simd::neon {

void squared_distances(std::span<const double* const> columns, std::span<const double> query,
                       std::span<double> out) {
  const std::size_t rows = out.size();
  const std::size_t nf = columns.size();
  std::size_t j = 0;
  for (; j + 4 <= rows; j += 4) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    for (std::size_t f = 0; f < nf; ++f) {
      const float64x2_t q = vdupq_n_f64(query[f]);
      const float64x2_t d0 = vsubq_f64(vld1q_f64(columns[f] + j), q);
      const float64x2_t d1 = vsubq_f64(vld1q_f64(columns[f] + j + 2), q);
      // vmulq + vaddq, never vfmaq: rounding must match the scalar reference.
      acc0 = vaddq_f64(acc0, vmulq_f64(d0, d0));
      acc1 = vaddq_f64(acc1, vmulq_f64(d1, d1));
    }
    vst1q_f64(out.data() + j, acc0);
    vst1q_f64(out.data() + j + 2, acc1);
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
  for (; i + 16 <= n; i += 16) {
    const uint8x16_t eq = vceqq_u8(vld1q_u8(a.data() + i), vld1q_u8(b.data() + i));
    matches += vaddvq_u8(vshrq_n_u8(eq, 7));
  }
  for (; i < n; ++i) matches += (a[i] == b[i]) ? 1 : 0;
  return matches;
}

} // namespace fsro::simd::neon

#endif
