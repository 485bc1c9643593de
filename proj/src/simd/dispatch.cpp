// Runtime ISA selection and the span-checked front end. No intrinsics here.

#include "fracrom/simd/kernels.hpp"

#include "kernel_table.hpp"

#include <atomic>
#include <cassert>
#include <stdexcept>
#include <string>

namespace fracrom::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(FRACROM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const detail::KernelTable* table_for(Isa isa) noexcept {
#if defined(FRACROM_HAVE_AVX2)
    if (isa == Isa::avx2) return &detail::avx2_table;
#endif
    (void)isa;
    return &detail::scalar_table;
}

struct ActiveState {
    ActiveState() : isa(detected_isa()), table(table_for(isa.load())) {}
    std::atomic<Isa> isa;
    std::atomic<const detail::KernelTable*> table;
};

ActiveState& state() {
    static ActiveState s;
    return s;
}

const detail::KernelTable& active() noexcept {
    return *state().table.load(std::memory_order_relaxed);
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    if (isa == Isa::scalar) return true;
    static const bool avx2 = cpu_has_avx2();
    return avx2;
}

Isa detected_isa() noexcept {
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() noexcept { return state().isa.load(); }

void set_active_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("ISA not available on this build/CPU: " + std::string(to_string(isa)));
    }
    state().table.store(table_for(isa));
    state().isa.store(isa);
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    assert(a.size() == b.size());
    return active().dot(a.data(), b.data(), a.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    assert(a.size() == b.size());
    return active().squared_distance(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    assert(x.size() == y.size());
    active().axpy(alpha, x.data(), y.data(), y.size());
}

void xpby(std::span<const double> x, double beta, std::span<double> y) noexcept {
    assert(x.size() == y.size());
    active().xpby(x.data(), beta, y.data(), y.size());
}

void hadamard(std::span<const double> a, std::span<const double> x, std::span<double> y) noexcept {
    assert(a.size() == x.size() && x.size() == y.size());
    active().hadamard(a.data(), x.data(), y.data(), y.size());
}

void weighted_row_sum(std::span<const double> coeffs, const double* rows, std::size_t stride,
                      std::span<double> out) noexcept {
    assert(coeffs.empty() || stride >= out.size());
    active().weighted_row_sum(coeffs.data(), coeffs.size(), rows, stride, out.data(), out.size());
}

void banded_apply(const BandedView& a, double shift, double scale, std::span<const double> x,
                  std::span<double> y) noexcept {
    const std::size_t n = a.size();
    assert(x.size() == n && y.size() == n);
    const auto& k = active();
    k.scaled_diag(shift, scale, a.diag.data(), x.data(), y.data(), n);
    if (n < 2) return;
    // Each band contributes twice (upper and mirrored lower part).
    const std::size_t m1 = a.near.size();
    assert(m1 == n - 1);
    k.mul_acc(scale, a.near.data(), x.data() + 1, y.data(), m1);
    k.mul_acc(scale, a.near.data(), x.data(), y.data() + 1, m1);
    if (!a.far.empty()) {
        const std::size_t off = a.far_offset;
        const std::size_t mk = a.far.size();
        assert(off > 0 && mk + off == n);
        k.mul_acc(scale, a.far.data(), x.data() + off, y.data(), mk);
        k.mul_acc(scale, a.far.data(), x.data(), y.data() + off, mk);
    }
}

}  // namespace fracrom::simd
