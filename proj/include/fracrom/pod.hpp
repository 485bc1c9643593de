#pragma once

#include "fracrom/fom.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracrom {

enum class SnapshotKind { state, nonlinear };

struct SnapshotColumn {
    double beta;
    std::size_t level;
};

/// Columns are state (or nonlinear-term) vectors ordered by (sample, level).
struct SnapshotMatrix {
    Eigen::MatrixXd data;
    std::vector<SnapshotColumn> columns;
    SnapshotKind kind = SnapshotKind::state;

    std::size_t rows() const noexcept { return static_cast<std::size_t>(data.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(data.cols()); }
};

/// Maps the state of sample `sample` at level `level` to the column to store.
using SnapshotTransform = std::function<void(std::size_t sample, std::size_t level,
                                             std::span<const double> u, std::span<double> out)>;

/// Levels 1..M of every trajectory (u^0 is not a column). With a transform,
/// the columns are transform(u^m) instead and the kind is `nonlinear`.
SnapshotMatrix collect_snapshots(std::span<const Trajectory> trajectories,
                                 const SnapshotTransform& transform = {});

/// F(u) = g(u) - f(t_m) evaluated with specs[sample].
SnapshotTransform nonlinear_term_transform(std::vector<ProblemSpec> specs);

struct ReducedBasis {
    Eigen::MatrixXd vectors;              ///< N x r, orthonormal columns
    std::vector<double> singular_values;  ///< every computed sigma, nonincreasing

    std::size_t dim() const noexcept { return static_cast<std::size_t>(vectors.cols()); }
    std::size_t rows() const noexcept { return static_cast<std::size_t>(vectors.rows()); }
};

/// Leading r left singular vectors. Each vector's largest-magnitude entry is
/// made positive so the result is deterministic. Throws std::invalid_argument
/// unless 1 <= r <= min(N, n_s).
ReducedBasis compute_basis(const SnapshotMatrix& snapshots, std::size_t r);
ReducedBasis compute_basis(const Eigen::MatrixXd& snapshots, std::size_t r);

/// sum_j ||u_j - Phi Phi^T u_j||^2, computed directly from the snapshots.
double truncation_error(const SnapshotMatrix& snapshots, const ReducedBasis& basis);
double truncation_error(const Eigen::MatrixXd& snapshots, const ReducedBasis& basis);

/// sum_{i > r} sigma_i^2: what truncation_error must equal.
double discarded_energy(const ReducedBasis& basis);

/// Number of singular values above rel_tol * sigma_1.
std::size_t numerical_rank(std::span<const double> singular_values, double rel_tol = 1e-12);

/// Smallest r with sum_{i<=r} sigma_i^2 / sum sigma_i^2 >= tau.
std::size_t energy_dimension(std::span<const double> singular_values, double tau = 1.0 - 1e-10);

}  // namespace fracrom
