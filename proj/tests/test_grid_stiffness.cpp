#include "fracrom/fractional_kernel.hpp"
#include "fracrom/grid.hpp"
#include "fracrom/stiffness.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace fracrom;

TEST_SUITE("grid_stiffness") {

TEST_CASE("grid spacing and time levels") {
    const auto g = DiscretizationGrid::line({0.0, 1.0}, 63, 1.0, 64);
    CHECK(g.h() == doctest::Approx(1.0 / 64.0));
    CHECK(g.dt() == doctest::Approx(1.0 / 64.0));
    CHECK(g.node(0, 0) == 0.0);
    CHECK(g.node(0, 64) == doctest::Approx(1.0));
    CHECK(g.time(64) == 1.0);
    CHECK(g.unknowns() == 63);
    const auto p = DiscretizationGrid::plane({-1, 1}, {-1, 1}, 63, 1.0, 64);
    CHECK(p.unknowns() == 3969);
    CHECK(p.h(1) == doctest::Approx(2.0 / 64.0));
    CHECK(p.cell_volume() == doctest::Approx(p.h(0) * p.h(1)));
    // x fastest
    CHECK(p.interior_point(1).x == doctest::Approx(p.node(0, 2)));
    CHECK(p.interior_point(63).y == doctest::Approx(p.node(1, 2)));
    CHECK_THROWS_AS(DiscretizationGrid::line({0, 1}, 0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(DiscretizationGrid::line({1, 0}, 4, 1.0, 4), std::invalid_argument);
}

TEST_CASE("constant coefficient, N = 3") {
    const auto g = DiscretizationGrid::line({0, 1}, 3, 1.0, 4);
    const auto a = assemble_stiffness_1d(DiffusionField::constant(1.0), g);
    for (double d : a.diagonal()) CHECK(d == doctest::Approx(32.0));
    for (double o : a.near_band()) CHECK(o == doctest::Approx(-16.0));
    CHECK(a.far_band().empty());
}

TEST_CASE("variable coefficient 1 + x, one interior row") {
    const auto g = DiscretizationGrid::line({0, 1}, 63, 1.0, 64);
    const auto a = assemble_stiffness_1d(DiffusionField::scalar([](double x) { return 1.0 + x; }), g);
    const double h = g.h();
    const std::size_t i = 20;  // node x_{21}
    const double xm = (21 - 0.5) * h, xp = (21 + 0.5) * h;
    CHECK(a.entry(i, i - 1) == doctest::Approx(-(1 + xm) / (h * h)).epsilon(1e-13));
    CHECK(a.entry(i, i) == doctest::Approx((2 + xm + xp) / (h * h)).epsilon(1e-13));
    CHECK(a.entry(i, i + 1) == doctest::Approx(-(1 + xp) / (h * h)).epsilon(1e-13));
}

TEST_CASE("row sums vanish away from the boundary") {
    const auto g = DiscretizationGrid::line({0, 1}, 40, 1.0, 4);
    const auto a = assemble_stiffness_1d(DiffusionField::scalar([](double x) { return 2.0 + std::sin(x); }), g);
    const std::vector<double> ones(40, 1.0);
    const auto r = a.apply(ones);
    for (std::size_t i = 1; i + 1 < 40; ++i) CHECK(std::abs(r[i]) <= 1e-9 * a.diagonal()[i]);
    CHECK(r.front() > 0.0);
    CHECK(r.back() > 0.0);
}

TEST_CASE("symmetry, sign pattern and nonnegative row sums in 1D and 2D") {
    const auto g1 = DiscretizationGrid::line({0, 1}, 12, 1.0, 4);
    const auto g2 = DiscretizationGrid::plane({0, 1}, {0, 1}, 6, 1.0, 4);
    for (const auto& a : {assemble_stiffness_1d(DiffusionField::scalar([](double x) { return 1 + x; }), g1),
                          assemble_stiffness_2d(DiffusionField::diagonal(1.0, 2.0), g2)}) {
        const Eigen::MatrixXd d = a.to_dense();
        CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
        for (Eigen::Index i = 0; i < d.rows(); ++i) {
            double off = 0.0;
            for (Eigen::Index j = 0; j < d.cols(); ++j) {
                if (i == j) continue;
                CHECK(d(i, j) <= 0.0);
                off += std::abs(d(i, j));
            }
            CHECK(d(i, i) >= off * (1 - 1e-14));
        }
    }
}

TEST_CASE("2D Laplacian matches the sin-mode eigenvalues on an 8 x 8 grid") {
    const std::size_t n = 8;
    const auto g = DiscretizationGrid::plane({0, 1}, {0, 1}, n, 1.0, 4);
    const auto a = assemble_stiffness_2d(DiffusionField::diagonal(1.0, 1.0), g);
    CHECK(a.diagonal()[0] == doctest::Approx(4.0 / (g.h() * g.h())));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.to_dense());
    std::vector<double> expect;
    const double h = g.h();
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t l = 1; l <= n; ++l) {
            const double sk = std::sin(k * std::numbers::pi * h / 2), sl = std::sin(l * std::numbers::pi * h / 2);
            expect.push_back(4.0 / (h * h) * (sk * sk + sl * sl));
        }
    std::sort(expect.begin(), expect.end());
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(eig.eigenvalues()(static_cast<Eigen::Index>(i)) == doctest::Approx(expect[i]).epsilon(1e-11));
}

TEST_CASE("diag(1, 2) doubles the y-direction couplings") {
    const auto g = DiscretizationGrid::plane({0, 1}, {0, 1}, 5, 1.0, 4);
    const auto iso = assemble_stiffness_2d(DiffusionField::diagonal(1.0, 1.0), g);
    const auto ani = assemble_stiffness_2d(DiffusionField::diagonal(1.0, 2.0), g);
    CHECK(ani.far_offset() == 5);
    for (std::size_t i = 0; i < ani.far_band().size(); ++i)
        CHECK(ani.far_band()[i] == doctest::Approx(2.0 * iso.far_band()[i]));
    for (std::size_t i = 0; i < ani.near_band().size(); ++i) CHECK(ani.near_band()[i] == iso.near_band()[i]);
    const double h2 = g.h() * g.h();
    CHECK(ani.diagonal()[0] == doctest::Approx(6.0 / h2));
}

TEST_CASE("I + gamma A is strictly diagonally dominant with positive diagonal") {
    const auto g = DiscretizationGrid::plane({0, 1}, {0, 1}, 7, 1.0, 64);
    const auto a = assemble_stiffness_2d(DiffusionField::diagonal(1.0, 2.0), g);
    for (double beta : {0.05, 0.5, 0.95}) {
        const double gam = gamma_scale(FractionalOrder(beta), g.dt()).gamma;
        const Eigen::MatrixXd m =
            Eigen::MatrixXd::Identity(a.size(), a.size()) + gam * a.to_dense();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double off = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
            CHECK(m(i, i) > 0.0);
            CHECK(m(i, i) > off);
        }
    }
}

TEST_CASE("invalid coefficients and shapes are rejected") {
    const auto g1 = DiscretizationGrid::line({0, 1}, 8, 1.0, 4);
    CHECK_THROWS_AS(assemble_stiffness_1d(DiffusionField::scalar([](double x) { return x - 0.5; }), g1),
                    std::invalid_argument);
    CHECK_THROWS_AS(assemble_stiffness_1d(DiffusionField::constant(1.0), DiscretizationGrid::line({0, 1}, 1, 1.0, 4)),
                    std::invalid_argument);
    auto full = DiffusionField::diagonal(1.0, 1.0);
    full.mu_xy = 0.3;
    CHECK_THROWS_AS(assemble_stiffness_2d(full, DiscretizationGrid::plane({0, 1}, {0, 1}, 4, 1.0, 4)),
                    std::invalid_argument);
}

TEST_CASE("banded multiply agrees with the dense matrix") {
    const auto g = DiscretizationGrid::plane({0, 1}, {0, 1}, 6, 1.0, 4);
    const auto a = assemble_stiffness_2d(DiffusionField::diagonal(1.0, 2.0), g);
    const Eigen::MatrixXd b = Eigen::MatrixXd::Random(36, 3);
    CHECK((a.multiply(b) - a.to_dense() * b).cwiseAbs().maxCoeff() <= 1e-10);
}

}
