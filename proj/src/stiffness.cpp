#include "fracrom/stiffness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracrom {

DiffusionField DiffusionField::constant(double mu) { return diagonal(mu, mu); }

DiffusionField DiffusionField::diagonal(double mu_x, double mu_y) {
    return {[mu_x](Point) { return mu_x; }, [mu_y](Point) { return mu_y; }, 0.0};
}

DiffusionField DiffusionField::scalar(std::function<double(double)> mu) {
    auto f = [mu = std::move(mu)](Point p) { return mu(p.x); };
    return {f, f, 0.0};
}

StiffnessMatrix::StiffnessMatrix(std::vector<double> diag, std::vector<double> near,
                                 std::vector<double> far, std::size_t far_offset, double mu_min,
                                 double mu_max)
    : diag_(std::move(diag)),
      near_(std::move(near)),
      far_(std::move(far)),
      far_offset_(far_.empty() ? 0 : far_offset),
      mu_min_(mu_min),
      mu_max_(mu_max) {
    const std::size_t n = diag_.size();
    if (n == 0) throw std::invalid_argument("StiffnessMatrix: empty");
    if (near_.size() != n - 1) throw std::invalid_argument("StiffnessMatrix: near band length");
    if (!far_.empty() && far_.size() + far_offset_ != n) {
        throw std::invalid_argument("StiffnessMatrix: far band length");
    }
}

simd::BandedView StiffnessMatrix::view() const noexcept {
    return {diag_, near_, far_, far_offset_};
}

double StiffnessMatrix::entry(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    const std::size_t d = j - i;
    if (d == 0) return diag_.at(i);
    if (d == 1) return near_.at(i);
    if (!far_.empty() && d == far_offset_) return far_.at(i);
    return 0.0;
}

void StiffnessMatrix::apply(std::span<const double> x, std::span<double> y, double shift,
                            double scale) const {
    if (x.size() != size() || y.size() != size()) {
        throw std::invalid_argument("StiffnessMatrix::apply: dimension mismatch");
    }
    simd::banded_apply(view(), shift, scale, x, y);
}

std::vector<double> StiffnessMatrix::apply(std::span<const double> x) const {
    std::vector<double> y(size());
    apply(x, y);
    return y;
}

Eigen::MatrixXd StiffnessMatrix::to_dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = diag_[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        a(i, i + 1) = a(i + 1, i) = near_[static_cast<std::size_t>(i)];
    }
    const auto off = static_cast<Eigen::Index>(far_offset_);
    for (std::size_t i = 0; i < far_.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        a(ii, ii + off) = a(ii + off, ii) = far_[i];
    }
    return a;
}

Eigen::MatrixXd StiffnessMatrix::multiply(const Eigen::MatrixXd& b) const {
    if (static_cast<std::size_t>(b.rows()) != size()) {
        throw std::invalid_argument("StiffnessMatrix::multiply: dimension mismatch");
    }
    Eigen::MatrixXd out(b.rows(), b.cols());
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
        simd::banded_apply(view(), 0.0, 1.0, std::span<const double>(b.col(c).data(), size()),
                           std::span<double>(out.col(c).data(), size()));
    }
    return out;
}

namespace {

struct MuRange {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;

    double check(double mu, double x, double y) {
        if (!(mu > 0.0) || !std::isfinite(mu)) {
            throw std::invalid_argument("diffusion coefficient must be positive; got " +
                                        std::to_string(mu) + " at (" + std::to_string(x) + ", " +
                                        std::to_string(y) + ")");
        }
        lo = std::min(lo, mu);
        hi = std::max(hi, mu);
        return mu;
    }
};

}  // namespace

StiffnessMatrix assemble_stiffness_1d(const DiffusionField& mu, const DiscretizationGrid& grid) {
    if (grid.dimension() != 1) throw std::invalid_argument("assemble_stiffness_1d: grid is not 1D");
    const std::size_t n = grid.nodes_per_axis();
    if (n < 2) throw std::invalid_argument("assemble_stiffness_1d: need N >= 2");
    if (!mu.mu_x) throw std::invalid_argument("assemble_stiffness_1d: missing coefficient");
    const double h = grid.h(0);
    const double inv_h2 = 1.0 / (h * h);

    MuRange range;
    // eta[i] = mu(x_{i+1/2}) / h^2 for i = 0..N (between nodes i and i+1).
    std::vector<double> eta(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double xh = grid.axis(0).a + (static_cast<double>(i) + 0.5) * h;
        eta[i] = range.check(mu.mu_x({xh, 0.0}), xh, 0.0) * inv_h2;
    }
    std::vector<double> diag(n), near(n - 1);
    for (std::size_t i = 0; i < n; ++i) diag[i] = eta[i] + eta[i + 1];
    for (std::size_t i = 0; i + 1 < n; ++i) near[i] = -eta[i + 1];
    return StiffnessMatrix(std::move(diag), std::move(near), {}, 0, range.lo, range.hi);
}

StiffnessMatrix assemble_stiffness_2d(const DiffusionField& mu, const DiscretizationGrid& grid) {
    if (grid.dimension() != 2) throw std::invalid_argument("assemble_stiffness_2d: grid is not 2D");
    if (mu.mu_xy != 0.0) {
        throw std::invalid_argument("assemble_stiffness_2d: off-diagonal tensor entries are not supported");
    }
    if (!mu.mu_x || !mu.mu_y) throw std::invalid_argument("assemble_stiffness_2d: missing coefficient");
    const std::size_t n = grid.nodes_per_axis();
    if (n < 2) throw std::invalid_argument("assemble_stiffness_2d: need N >= 2");
    const double hx = grid.h(0), hy = grid.h(1);
    const double ax = grid.axis(0).a, ay = grid.axis(1).a;
    const std::size_t nn = n * n;

    MuRange range;
    std::vector<double> diag(nn, 0.0), near(nn - 1, 0.0), far(nn - n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double y = ay + static_cast<double>(j + 1) * hy;
        for (std::size_t i = 0; i <= n; ++i) {
            // x-flux between nodes i and i+1 (boundary-inclusive indices) on row j+1.
            const double xh = ax + (static_cast<double>(i) + 0.5) * hx;
            const double e = range.check(mu.mu_x({xh, y}), xh, y) / (hx * hx);
            if (i >= 1) diag[(i - 1) + n * j] += e;
            if (i < n) diag[i + n * j] += e;
            if (i >= 1 && i < n) near[(i - 1) + n * j] = -e;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double x = ax + static_cast<double>(i + 1) * hx;
        for (std::size_t j = 0; j <= n; ++j) {
            const double yh = ay + (static_cast<double>(j) + 0.5) * hy;
            const double e = range.check(mu.mu_y({x, yh}), x, yh) / (hy * hy);
            if (j >= 1) diag[i + n * (j - 1)] += e;
            if (j < n) diag[i + n * j] += e;
            if (j >= 1 && j < n) far[i + n * (j - 1)] = -e;
        }
    }
    return StiffnessMatrix(std::move(diag), std::move(near), std::move(far), n, range.lo, range.hi);
}

StiffnessMatrix assemble_stiffness(const DiffusionField& mu, const DiscretizationGrid& grid) {
    return grid.dimension() == 1 ? assemble_stiffness_1d(mu, grid) : assemble_stiffness_2d(mu, grid);
}

}  // namespace fracrom
