#pragma once

// Data-parallel inner loops shared by the full- and reduced-order solvers.
//
// Every kernel has a scalar reference implementation and, where the build and
// the CPU allow it, an AVX2+FMA variant. The variant is picked once at startup
// from CPUID; tests can pin an ISA with ScopedIsa to check equivalence.

#include <cstddef>
#include <span>
#include <string_view>

namespace fracrom::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Best ISA supported by both this build and the running CPU.
Isa detected_isa() noexcept;

/// ISA used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Throws std::invalid_argument if `isa` is not available here.
void set_active_isa(Isa isa);

bool isa_available(Isa isa) noexcept;

/// Pins the active ISA for the lifetime of the object.
class ScopedIsa {
public:
    explicit ScopedIsa(Isa isa) : previous_(active_isa()) { set_active_isa(isa); }
    ~ScopedIsa() { set_active_isa(previous_); }
    ScopedIsa(const ScopedIsa&) = delete;
    ScopedIsa& operator=(const ScopedIsa&) = delete;

private:
    Isa previous_;
};

/// Symmetric banded matrix with bands at offsets 0, 1 and `far_offset`.
/// `near` holds A(i, i+1) (length n-1), `far` holds A(i, i+far_offset)
/// (length n-far_offset, empty for tridiagonal matrices).
struct BandedView {
    std::span<const double> diag;
    std::span<const double> near;
    std::span<const double> far;
    std::size_t far_offset = 0;

    std::size_t size() const noexcept { return diag.size(); }
};

double dot(std::span<const double> a, std::span<const double> b) noexcept;

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;

// y = x + beta * y
void xpby(std::span<const double> x, double beta, std::span<double> y) noexcept;

// y = a .* x
void hadamard(std::span<const double> a, std::span<const double> x, std::span<double> y) noexcept;

/// out[i] = sum_k coeffs[k] * rows[k * stride + i], for i < out.size().
///
/// This is the L1 memory term: one pass over every stored time level per
/// step, so it dominates the full-order cost for long histories.
void weighted_row_sum(std::span<const double> coeffs, const double* rows, std::size_t stride,
                      std::span<double> out) noexcept;

/// y = shift * x + scale * (A x)
void banded_apply(const BandedView& a, double shift, double scale, std::span<const double> x,
                  std::span<double> y) noexcept;

}  // namespace fracrom::simd
