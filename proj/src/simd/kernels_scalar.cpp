// Scalar reference kernels. The AVX2 variants are tested against these.

#include "kernel_table.hpp"

namespace fracrom::simd::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(const double* x, double beta, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void hadamard(const double* a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * x[i];
}

void weighted_row_sum(const double* coeffs, std::size_t count, const double* rows,
                      std::size_t stride, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double c = coeffs[k];
        const double* row = rows + k * stride;
        for (std::size_t i = 0; i < n; ++i) out[i] += c * row[i];
    }
}

void scaled_diag(double shift, double scale, const double* d, const double* x, double* y,
                 std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = shift * x[i] + scale * d[i] * x[i];
}

void mul_acc(double scale, const double* a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += scale * a[i] * x[i];
}

}  // namespace

const KernelTable scalar_table{
    &dot, &squared_distance, &axpy, &xpby, &hadamard, &weighted_row_sum, &scaled_diag, &mul_acc,
};

}  // namespace fracrom::simd::detail
