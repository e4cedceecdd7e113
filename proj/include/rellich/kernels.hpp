#pragma once

#include <cstddef>
#include <optional>

// Data-parallel inner loops with a scalar reference and an AVX2 variant chosen at runtime.
// Both variants perform the same floating-point operations in the same order per output
// element, so their results are bitwise identical.
namespace rellich::kernels {

enum class Isa { scalar, avx2 };

bool avx2_available();
Isa active_isa();
// Test hook; std::nullopt restores automatic selection.
void force_isa(std::optional<Isa> isa);
const char* isa_name(Isa isa);

// out[k] = sum_i w[i] * rows[i * row_stride + k] for k < ncomp, i ascending.
void weighted_column_sums(const double* rows, std::size_t row_stride, std::size_t nrows,
                          std::size_t ncomp, const double* w, double* out);

// y = A x for symmetric pentadiagonal A with diagonal d[m], first off-diagonal e1[m-1],
// second off-diagonal e2[m-2].
void sym_penta_matvec(const double* d, const double* e1, const double* e2, const double* x,
                      double* y, std::size_t m);

// Four interleaved partial sums combined as (s0 + s1) + (s2 + s3), then the tail.
double dot(const double* x, const double* y, std::size_t m);

namespace scalar {
void weighted_column_sums(const double*, std::size_t, std::size_t, std::size_t, const double*, double*);
void sym_penta_matvec(const double*, const double*, const double*, const double*, double*, std::size_t);
double dot(const double*, const double*, std::size_t);
}  // namespace scalar

namespace avx2 {
void weighted_column_sums(const double*, std::size_t, std::size_t, std::size_t, const double*, double*);
void sym_penta_matvec(const double*, const double*, const double*, const double*, double*, std::size_t);
double dot(const double*, const double*, std::size_t);
}  // namespace avx2

namespace detail {
// Rows 0, 1, m-2, m-1 (the ones with missing neighbours); shared by both variants.
void penta_edge_row(const double* d, const double* e1, const double* e2, const double* x,
                    double* y, std::size_t m, std::size_t i);
}  // namespace detail

}  // namespace rellich::kernels
