#include "fracrom/errors.hpp"
#include "fracrom/linear_solvers.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fracrom;

namespace {

Eigen::MatrixXd dense_of(const TridiagonalSystem& t) {
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = t.diag[i];
        if (i + 1 < n) {
            m(i, i + 1) = t.upper[i];
            m(i + 1, i) = t.lower[i];
        }
    }
    return m;
}

double rel_residual(const Eigen::MatrixXd& a, const std::vector<double>& x, const std::vector<double>& b) {
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), x.size()), bv(b.data(), b.size());
    return (a * xv - bv).norm() / bv.norm();
}

}  // namespace

TEST_SUITE("linear_solvers") {

TEST_CASE("Thomas: identity returns the rhs") {
    TridiagonalSystem t{{0, 0, 0}, {1, 1, 1, 1}, {0, 0, 0}};
    const std::vector<double> b{1, -2, 3, 4.5};
    CHECK(thomas_solve(t, b) == b);
}

TEST_CASE("Thomas: 3 x 3 hand example") {
    TridiagonalSystem t{{-1, -1}, {2, 2, 2}, {-1, -1}};
    const auto x = thomas_solve(t, std::vector<double>{1, 0, 0});
    CHECK(x[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(x[2] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("Thomas: random diagonally dominant 50 x 50 against dense LU") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        TridiagonalSystem t;
        const std::size_t n = 50;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            t.lower.push_back(u(rng));
            t.upper.push_back(u(rng));
        }
        for (std::size_t i = 0; i < n; ++i) t.diag.push_back((u(rng) > 0 ? 1 : -1) * (2.5 + std::abs(u(rng))));
        std::vector<double> b(n);
        for (auto& v : b) v = u(rng);
        const auto x = thomas_solve(t, b);
        const Eigen::MatrixXd m = dense_of(t);
        const Eigen::VectorXd ref = oracle::dense_solve(m, Eigen::Map<const Eigen::VectorXd>(b.data(), n));
        const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
        CHECK((xv - ref).norm() <= 1e-12 * ref.norm());
        CHECK(rel_residual(m, x, b) <= 1e-12);
    }
}

TEST_CASE("Thomas: zero pivot is reported") {
    TridiagonalSystem t{{1}, {0, 1}, {1}};
    CHECK_THROWS_AS(thomas_solve(t, std::vector<double>{1, 1}), ZeroPivotError);
    TridiagonalSystem t2{{1}, {1, 1}, {1}};
    CHECK_THROWS_AS(thomas_solve(t2, std::vector<double>{1, 1}), ZeroPivotError);
}

TEST_CASE("Thomas on I + gamma A matches dense") {
    const auto g = DiscretizationGrid::line({0, 1}, 63, 1.0, 64);
    const auto a = assemble_stiffness_1d(DiffusionField::scalar([](double x) { return 1 + x; }), g);
    const auto t = shifted_tridiagonal(a, 1.0, 0.03);
    std::vector<double> b(63);
    for (std::size_t i = 0; i < 63; ++i) b[i] = std::sin(0.3 * i);
    const auto x = thomas_solve(t, b);
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(63, 63) + 0.03 * a.to_dense();
    const Eigen::VectorXd ref = oracle::dense_solve(m, Eigen::Map<const Eigen::VectorXd>(b.data(), 63));
    CHECK((Eigen::Map<const Eigen::VectorXd>(x.data(), 63) - ref).norm() <= 1e-12 * ref.norm());
}

TEST_CASE("PCG: identity") {
    const auto g = DiscretizationGrid::plane({0, 1}, {0, 1}, 4, 1.0, 4);
    const auto a = assemble_stiffness_2d(DiffusionField::diagonal(1, 1), g);
    ShiftedOperator op(a, 1.0, 0.0);
    std::vector<double> b(16);
    for (std::size_t i = 0; i < 16; ++i) b[i] = 0.5 + i;
    const auto r = pcg_solve(op, b);
    for (std::size_t i = 0; i < 16; ++i) CHECK(r.x[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("PCG: 8 x 8 five-point Laplacian against dense") {
    const auto g = DiscretizationGrid::plane({0, 1}, {0, 1}, 8, 1.0, 4);
    const auto a = assemble_stiffness_2d(DiffusionField::diagonal(1, 1), g);
    ShiftedOperator op(a, 0.0, 1.0);
    std::vector<double> b(64);
    for (std::size_t i = 0; i < 64; ++i) b[i] = std::cos(0.7 * i) + 0.1;
    PcgOptions o;
    o.tol = 1e-14;
    const auto r = pcg_solve(op, b, o);
    const Eigen::VectorXd ref = oracle::dense_solve(a.to_dense(), Eigen::Map<const Eigen::VectorXd>(b.data(), 64));
    CHECK((Eigen::Map<const Eigen::VectorXd>(r.x.data(), 64) - ref).norm() <= 1e-12 * ref.norm());
    CHECK(r.relative_residual <= 1e-14);
}

TEST_CASE("PCG: tighter tolerance never gives a larger residual") {
    const auto g = DiscretizationGrid::plane({0, 1}, {0, 1}, 20, 1.0, 4);
    const auto a = assemble_stiffness_2d(DiffusionField::diagonal(1, 2), g);
    ShiftedOperator op(a, 1.0, 0.01);
    std::vector<double> b(400);
    for (std::size_t i = 0; i < 400; ++i) b[i] = std::sin(0.11 * i * i);
    double prev = 1.0;
    std::size_t prev_it = 0;
    for (double tol : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
        PcgOptions o;
        o.tol = tol;
        const auto r = pcg_solve(op, b, o);
        CHECK(r.relative_residual <= tol);
        CHECK(r.relative_residual <= prev);
        CHECK(r.iterations >= prev_it);
        prev = r.relative_residual;
        prev_it = r.iterations;
    }
}

TEST_CASE("PCG: zero rhs gives zero, cap raises ConvergenceError") {
    const auto g = DiscretizationGrid::plane({0, 1}, {0, 1}, 10, 1.0, 4);
    const auto a = assemble_stiffness_2d(DiffusionField::diagonal(1, 1), g);
    ShiftedOperator op(a, 0.0, 1.0);
    const auto r = pcg_solve(op, std::vector<double>(100, 0.0));
    for (double v : r.x) CHECK(v == 0.0);
    PcgOptions o;
    o.max_iterations = 2;
    o.tol = 1e-14;
    std::vector<double> b(100, 1.0);
    CHECK_THROWS_AS(pcg_solve(op, b, o), ConvergenceError);
}

}
