// AVX2 + FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher has confirmed CPU support.

#include "kernel_table.hpp"

#include <immintrin.h>

namespace fracrom::simd::detail {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(const double* x, double beta, double* y, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(beta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void hadamard(const double* a, const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) y[i] = a[i] * x[i];
}

// Blocked over the output so each 16-wide accumulator tile stays in registers
// while the history rows stream past.
void weighted_row_sum(const double* coeffs, std::size_t count, const double* rows,
                      std::size_t stride, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        __m256d a0 = _mm256_setzero_pd();
        __m256d a1 = _mm256_setzero_pd();
        __m256d a2 = _mm256_setzero_pd();
        __m256d a3 = _mm256_setzero_pd();
        const double* row = rows + i;
        for (std::size_t k = 0; k < count; ++k, row += stride) {
            const __m256d c = _mm256_broadcast_sd(coeffs + k);
            a0 = _mm256_fmadd_pd(c, _mm256_loadu_pd(row), a0);
            a1 = _mm256_fmadd_pd(c, _mm256_loadu_pd(row + 4), a1);
            a2 = _mm256_fmadd_pd(c, _mm256_loadu_pd(row + 8), a2);
            a3 = _mm256_fmadd_pd(c, _mm256_loadu_pd(row + 12), a3);
        }
        _mm256_storeu_pd(out + i, a0);
        _mm256_storeu_pd(out + i + 4, a1);
        _mm256_storeu_pd(out + i + 8, a2);
        _mm256_storeu_pd(out + i + 12, a3);
    }
    for (; i + 4 <= n; i += 4) {
        __m256d a0 = _mm256_setzero_pd();
        const double* row = rows + i;
        for (std::size_t k = 0; k < count; ++k, row += stride) {
            a0 = _mm256_fmadd_pd(_mm256_broadcast_sd(coeffs + k), _mm256_loadu_pd(row), a0);
        }
        _mm256_storeu_pd(out + i, a0);
    }
    for (; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < count; ++k) s += coeffs[k] * rows[k * stride + i];
        out[i] = s;
    }
}

void scaled_diag(double shift, double scale, const double* d, const double* x, double* y,
                 std::size_t n) {
    const __m256d vs = _mm256_set1_pd(shift);
    const __m256d vc = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vd = _mm256_mul_pd(vc, _mm256_loadu_pd(d + i));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vd, vx, _mm256_mul_pd(vs, vx)));
    }
    for (; i < n; ++i) y[i] = shift * x[i] + scale * d[i] * x[i];
}

void mul_acc(double scale, const double* a, const double* x, double* y, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_mul_pd(vc, _mm256_loadu_pd(a + i));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += scale * a[i] * x[i];
}

}  // namespace

const KernelTable avx2_table{
    &dot, &squared_distance, &axpy, &xpby, &hadamard, &weighted_row_sum, &scaled_diag, &mul_acc,
};

}  // namespace fracrom::simd::detail
