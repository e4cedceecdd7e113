#include "rellich/kernels.hpp"

#include <atomic>

namespace rellich::kernels {

namespace detail {

void penta_edge_row(const double* d, const double* e1, const double* e2, const double* x,
                    double* y, std::size_t m, std::size_t i) {
  double t = 0.0;
  bool first = true;
  auto add = [&](double v) {
    t = first ? v : t + v;
    first = false;
  };
  if (i >= 2) add(e2[i - 2] * x[i - 2]);
  if (i >= 1) add(e1[i - 1] * x[i - 1]);
  add(d[i] * x[i]);
  if (i + 1 < m) add(e1[i] * x[i + 1]);
  if (i + 2 < m) add(e2[i] * x[i + 2]);
  y[i] = t;
}

}  // namespace detail

namespace scalar {

void weighted_column_sums(const double* rows, std::size_t row_stride, std::size_t nrows,
                          std::size_t ncomp, const double* w, double* out) {
  for (std::size_t k = 0; k < ncomp; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nrows; ++i) acc = acc + w[i] * rows[i * row_stride + k];
    out[k] = acc;
  }
}

void sym_penta_matvec(const double* d, const double* e1, const double* e2, const double* x,
                      double* y, std::size_t m) {
  if (m < 5) {
    for (std::size_t i = 0; i < m; ++i) detail::penta_edge_row(d, e1, e2, x, y, m, i);
    return;
  }
  detail::penta_edge_row(d, e1, e2, x, y, m, 0);
  detail::penta_edge_row(d, e1, e2, x, y, m, 1);
  for (std::size_t i = 2; i + 2 < m; ++i) {
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

double dot(const double* x, const double* y, std::size_t m) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t m4 = m - m % 4;
  for (std::size_t i = 0; i < m4; i += 4)
    for (std::size_t l = 0; l < 4; ++l) s[l] = s[l] + x[i + l] * y[i + l];
  double t = (s[0] + s[1]) + (s[2] + s[3]);
  for (std::size_t i = m4; i < m; ++i) t = t + x[i] * y[i];
  return t;
}

}  // namespace scalar

namespace {

std::atomic<int> g_forced{-1};

Isa detect() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

}  // namespace

bool avx2_available() {
  static const bool ok = detect() == Isa::avx2;
  return ok;
}

Isa active_isa() {
  const int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Isa>(f);
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

void force_isa(std::optional<Isa> isa) {
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void weighted_column_sums(const double* rows, std::size_t row_stride, std::size_t nrows,
                          std::size_t ncomp, const double* w, double* out) {
  if (active_isa() == Isa::avx2)
    avx2::weighted_column_sums(rows, row_stride, nrows, ncomp, w, out);
  else
    scalar::weighted_column_sums(rows, row_stride, nrows, ncomp, w, out);
}

void sym_penta_matvec(const double* d, const double* e1, const double* e2, const double* x,
                      double* y, std::size_t m) {
  if (active_isa() == Isa::avx2)
    avx2::sym_penta_matvec(d, e1, e2, x, y, m);
  else
    scalar::sym_penta_matvec(d, e1, e2, x, y, m);
}

double dot(const double* x, const double* y, std::size_t m) {
  return active_isa() == Isa::avx2 ? avx2::dot(x, y, m) : scalar::dot(x, y, m);
}

}  // namespace rellich::kernels
