#include "fracrom/pod.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracrom {

SnapshotMatrix collect_snapshots(std::span<const Trajectory> trajectories,
                                 const SnapshotTransform& transform) {
    if (trajectories.empty()) throw std::invalid_argument("collect_snapshots: no trajectories");
    const std::size_t n = trajectories.front().dim();
    std::size_t total = 0;
    for (const auto& t : trajectories) {
        if (t.dim() != n) throw std::invalid_argument("collect_snapshots: trajectories differ in dimension");
        total += t.size() - 1;
    }

    SnapshotMatrix s;
    s.kind = transform ? SnapshotKind::nonlinear : SnapshotKind::state;
    s.data.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(total));
    s.columns.reserve(total);
    Eigen::Index c = 0;
    for (std::size_t k = 0; k < trajectories.size(); ++k) {
        const auto& traj = trajectories[k];
        for (std::size_t m = 1; m < traj.size(); ++m, ++c) {
            std::span<double> col(s.data.col(c).data(), n);
            if (transform) {
                transform(k, m, traj[m], col);
            } else {
                std::copy(traj[m].begin(), traj[m].end(), col.begin());
            }
            s.columns.push_back({traj.beta().value(), m});
        }
    }
    return s;
}

SnapshotTransform nonlinear_term_transform(std::vector<ProblemSpec> specs) {
    return [specs = std::move(specs)](std::size_t sample, std::size_t level,
                                      std::span<const double> u, std::span<double> out) {
        const ProblemSpec& spec = specs.at(sample);
        const double t = spec.grid.time(level);
        for (std::size_t i = 0; i < u.size(); ++i) {
            out[i] = spec.nonlinear_term(u[i], spec.grid.interior_point(i), t);
        }
    };
}

namespace {

void fix_signs(Eigen::MatrixXd& u) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        Eigen::Index imax = 0;
        u.col(c).cwiseAbs().maxCoeff(&imax);
        if (u(imax, c) < 0.0) u.col(c) = -u.col(c);
    }
}

}  // namespace

ReducedBasis compute_basis(const Eigen::MatrixXd& x, std::size_t r) {
    const auto rows = static_cast<std::size_t>(x.rows());
    const auto cols = static_cast<std::size_t>(x.cols());
    if (r < 1 || r > std::min(rows, cols)) {
        throw std::invalid_argument("compute_basis: requested dimension " + std::to_string(r) +
                                    " outside [1, " + std::to_string(std::min(rows, cols)) + "]");
    }
    const auto rr = static_cast<Eigen::Index>(r);

    Eigen::MatrixXd u;
    Eigen::VectorXd sigma;
    if (cols < rows) {
        // Thin side: X = QR, then the small SVD of R. Keeps orthonormality at
        // machine precision, unlike forming X^T X.
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
        const Eigen::MatrixXd rfac = qr.matrixQR().topRows(x.cols()).triangularView<Eigen::Upper>();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(rfac, Eigen::ComputeFullU);
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
        u = q * svd.matrixU().leftCols(rr);
        sigma = svd.singularValues();
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU);
        u = svd.matrixU().leftCols(rr);
        sigma = svd.singularValues();
    }
    fix_signs(u);

    ReducedBasis b;
    b.vectors = std::move(u);
    b.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
#ifndef NDEBUG
    {
        const double lhs = truncation_error(x, b);
        const double rhs = discarded_energy(b);
        assert(std::abs(lhs - rhs) <= 1e-8 * std::max(lhs, rhs) + 1e-12 * x.squaredNorm());
    }
#endif
    return b;
}

ReducedBasis compute_basis(const SnapshotMatrix& snapshots, std::size_t r) {
    return compute_basis(snapshots.data, r);
}

double truncation_error(const Eigen::MatrixXd& x, const ReducedBasis& basis) {
    if (x.rows() != basis.vectors.rows()) throw std::invalid_argument("truncation_error: dimension mismatch");
    const Eigen::MatrixXd resid = x - basis.vectors * (basis.vectors.transpose() * x);
    return resid.squaredNorm();
}

double truncation_error(const SnapshotMatrix& snapshots, const ReducedBasis& basis) {
    return truncation_error(snapshots.data, basis);
}

double discarded_energy(const ReducedBasis& basis) {
    double s = 0.0;
    for (std::size_t i = basis.dim(); i < basis.singular_values.size(); ++i) {
        s += basis.singular_values[i] * basis.singular_values[i];
    }
    return s;
}

std::size_t numerical_rank(std::span<const double> sv, double rel_tol) {
    if (sv.empty() || sv.front() <= 0.0) return 0;
    const double cut = rel_tol * sv.front();
    return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

std::size_t energy_dimension(std::span<const double> sv, double tau) {
    if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("energy_dimension: tau must lie in (0, 1]");
    double total = 0.0;
    for (double s : sv) total += s * s;
    if (total == 0.0) return 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < sv.size(); ++i) {
        acc += sv[i] * sv[i];
        if (acc >= tau * total) return i + 1;
    }
    return sv.size();
}

}  // namespace fracrom
