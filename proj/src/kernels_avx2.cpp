#include "rellich/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define RL_AVX2 __attribute__((target("avx2")))
#endif

namespace rellich::kernels::avx2 {

#ifdef RL_AVX2

RL_AVX2 void weighted_column_sums(const double* rows, std::size_t row_stride, std::size_t nrows,
                                  std::size_t ncomp, const double* w, double* out) {
  std::size_t k = 0;
  for (; k + 4 <= ncomp; k += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < nrows; ++i) {
      const __m256d v = _mm256_loadu_pd(rows + i * row_stride + k);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(w[i]), v));
    }
    _mm256_storeu_pd(out + k, acc);
  }
  for (; k < ncomp; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nrows; ++i) acc = acc + w[i] * rows[i * row_stride + k];
    out[k] = acc;
  }
}

RL_AVX2 void sym_penta_matvec(const double* d, const double* e1, const double* e2,
                              const double* x, double* y, std::size_t m) {
  if (m < 5) {
    for (std::size_t i = 0; i < m; ++i) detail::penta_edge_row(d, e1, e2, x, y, m, i);
    return;
  }
  detail::penta_edge_row(d, e1, e2, x, y, m, 0);
  detail::penta_edge_row(d, e1, e2, x, y, m, 1);
  std::size_t i = 2;
  for (; i + 4 + 2 <= m; i += 4) {
    __m256d t = _mm256_mul_pd(_mm256_loadu_pd(e2 + i - 2), _mm256_loadu_pd(x + i - 2));
    t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_loadu_pd(e1 + i - 1), _mm256_loadu_pd(x + i - 1)));
    t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_loadu_pd(d + i), _mm256_loadu_pd(x + i)));
    t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_loadu_pd(e1 + i), _mm256_loadu_pd(x + i + 1)));
    t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_loadu_pd(e2 + i), _mm256_loadu_pd(x + i + 2)));
    _mm256_storeu_pd(y + i, t);
  }
  for (; i + 2 < m; ++i) {
    double t = e2[i - 2] * x[i - 2];
    t = t + e1[i - 1] * x[i - 1];
    t = t + d[i] * x[i];
    t = t + e1[i] * x[i + 1];
    t = t + e2[i] * x[i + 2];
    y[i] = t;
  }
  detail::penta_edge_row(d, e1, e2, x, y, m, m - 2);
  detail::penta_edge_row(d, e1, e2, x, y, m, m - 1);
}

RL_AVX2 double dot(const double* x, const double* y, std::size_t m) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t m4 = m - m % 4;
  for (std::size_t i = 0; i < m4; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double t = (s[0] + s[1]) + (s[2] + s[3]);
  for (std::size_t i = m4; i < m; ++i) t = t + x[i] * y[i];
  return t;
}

#else

void weighted_column_sums(const double* rows, std::size_t row_stride, std::size_t nrows,
                          std::size_t ncomp, const double* w, double* out) {
  scalar::weighted_column_sums(rows, row_stride, nrows, ncomp, w, out);
}
void sym_penta_matvec(const double* d, const double* e1, const double* e2, const double* x,
                      double* y, std::size_t m) {
  scalar::sym_penta_matvec(d, e1, e2, x, y, m);
}
double dot(const double* x, const double* y, std::size_t m) { return scalar::dot(x, y, m); }

#endif

}  // namespace rellich::kernels::avx2
