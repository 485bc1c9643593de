#pragma once

#include "fracrom/stiffness.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fracrom {

/// General tridiagonal system; lower[i] = M(i+1, i), upper[i] = M(i, i+1).
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    std::size_t size() const noexcept { return diag.size(); }
    std::vector<double> apply(std::span<const double> x) const;
};

/// shift * I + scale * A + diag(extra) for a 1D stiffness matrix.
TridiagonalSystem shifted_tridiagonal(const StiffnessMatrix& a, double shift, double scale,
                                      std::span<const double> extra = {});

/// O(N) elimination without pivoting. Throws ZeroPivotError on a vanishing pivot.
std::vector<double> thomas_solve(const TridiagonalSystem& system, std::span<const double> rhs);

/// y = shift x + scale A x + extra .* x, the operator of every implicit step.
class ShiftedOperator {
public:
    ShiftedOperator(const StiffnessMatrix& a, double shift, double scale,
                    std::span<const double> extra = {});

    std::size_t size() const noexcept { return a_->size(); }
    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> diagonal() const;
    const StiffnessMatrix& matrix() const noexcept { return *a_; }

private:
    const StiffnessMatrix* a_;
    double shift_;
    double scale_;
    std::span<const double> extra_;
};

class Preconditioner {
public:
    virtual ~Preconditioner() = default;
    /// z = P^{-1} r
    virtual void apply(std::span<const double> r, std::span<double> z) const = 0;
};

class JacobiPreconditioner final : public Preconditioner {
public:
    explicit JacobiPreconditioner(std::span<const double> diagonal);
    void apply(std::span<const double> r, std::span<double> z) const override;

private:
    std::vector<double> inv_diag_;
};

struct PcgOptions {
    double tol = 1e-10;               ///< on ||r|| / ||b||
    std::size_t max_iterations = 0;   ///< 0 selects 10 * N
    /// Null selects Jacobi scaling built from the operator diagonal.
    const Preconditioner* preconditioner = nullptr;
};

struct PcgResult {
    std::vector<double> x;
    std::size_t iterations = 0;
    double relative_residual = 0.0;
};

/// Preconditioned conjugate gradients for SPD operators. `x0` (optional)
/// warm-starts the iteration. Throws ConvergenceError at the iteration cap.
PcgResult pcg_solve(const ShiftedOperator& op, std::span<const double> rhs,
                    const PcgOptions& options = {}, std::span<const double> x0 = {});

}  // namespace fracrom
