#pragma once

#include "fracrom/grid.hpp"
#include "fracrom/simd/kernels.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace fracrom {

/// Diffusion coefficient. In 1D only `mu_x` is used; in 2D the tensor is
/// diag(mu_x, mu_y). `mu_xy` exists only so that full tensors can be rejected.
struct DiffusionField {
    std::function<double(Point)> mu_x;
    std::function<double(Point)> mu_y;
    double mu_xy = 0.0;

    static DiffusionField constant(double mu);
    static DiffusionField diagonal(double mu_x, double mu_y);
    static DiffusionField scalar(std::function<double(double)> mu);
};

/// Symmetric banded matrix with at most two off-diagonal bands: offset 1 and
/// offset `far_offset` (N in 2D). Entries are eta = mu(half point) / h^2.
class StiffnessMatrix {
public:
    StiffnessMatrix(std::vector<double> diag, std::vector<double> near, std::vector<double> far,
                    std::size_t far_offset, double mu_min, double mu_max);

    std::size_t size() const noexcept { return diag_.size(); }
    std::span<const double> diagonal() const noexcept { return diag_; }
    std::span<const double> near_band() const noexcept { return near_; }
    std::span<const double> far_band() const noexcept { return far_; }
    std::size_t far_offset() const noexcept { return far_offset_; }
    double mu_min() const noexcept { return mu_min_; }
    double mu_max() const noexcept { return mu_max_; }

    simd::BandedView view() const noexcept;
    double entry(std::size_t i, std::size_t j) const;

    /// y = shift * x + scale * A x
    void apply(std::span<const double> x, std::span<double> y, double shift = 0.0,
               double scale = 1.0) const;
    std::vector<double> apply(std::span<const double> x) const;

    Eigen::MatrixXd to_dense() const;
    /// A * B for a dense N x k block, column by column through the banded kernel.
    Eigen::MatrixXd multiply(const Eigen::MatrixXd& b) const;

private:
    std::vector<double> diag_;
    std::vector<double> near_;
    std::vector<double> far_;
    std::size_t far_offset_;
    double mu_min_;
    double mu_max_;
};

/// Three-point flux form: diagonal eta_{i-1/2} + eta_{i+1/2}, off-diagonals
/// -eta_{i+1/2}. Requires N >= 2 and mu > 0 at every half point.
StiffnessMatrix assemble_stiffness_1d(const DiffusionField& mu, const DiscretizationGrid& grid);

/// Five-point flux form per axis on the N x N interior grid.
StiffnessMatrix assemble_stiffness_2d(const DiffusionField& mu, const DiscretizationGrid& grid);

/// Dispatches on grid.dimension().
StiffnessMatrix assemble_stiffness(const DiffusionField& mu, const DiscretizationGrid& grid);

}  // namespace fracrom
