#pragma once

#include <cstddef>

namespace fracrom::simd::detail {

// Raw-pointer signatures; bounds are checked by the span-based front end.
struct KernelTable {
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    void (*xpby)(const double* x, double beta, double* y, std::size_t n);
    void (*hadamard)(const double* a, const double* x, double* y, std::size_t n);
    void (*weighted_row_sum)(const double* coeffs, std::size_t count, const double* rows,
                             std::size_t stride, double* out, std::size_t n);
    // y = shift * x + scale * d .* x
    void (*scaled_diag)(double shift, double scale, const double* d, const double* x, double* y,
                        std::size_t n);
    // y += scale * a .* x
    void (*mul_acc)(double scale, const double* a, const double* x, double* y, std::size_t n);
};

extern const KernelTable scalar_table;

#if defined(FRACROM_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif

}  // namespace fracrom::simd::detail
