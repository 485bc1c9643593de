#include "fracrom/errors.hpp"
#include "fracrom/fom.hpp"
#include "fracrom/problems.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace fracrom;

namespace {

double final_error(const ProblemSpec& spec, double (*exact)(Point, double, double)) {
    const auto traj = fom_solve(spec);
    const auto ref = sample_exact(exact, spec.grid, spec.grid.final_time(), spec.beta.value());
    return discrete_l2_error(traj.final_state(), ref, spec.grid);
}

}  // namespace

TEST_SUITE("fom") {

TEST_CASE("Test I at beta = 0.2: error 1.31e-4 within 2%") {
    const double e = final_error(test1(FractionalOrder(0.2)), test1_exact);
    CHECK(std::abs(e - 1.31e-4) <= 0.02 * 1.31e-4);
}

TEST_CASE("Test II at beta = 0.4: error 6.72e-4 within 2%") {
    const double e = final_error(test2(FractionalOrder(0.4)), test2_exact);
    CHECK(std::abs(e - 6.72e-4) <= 0.02 * 6.72e-4);
}

TEST_CASE("zero data gives the zero trajectory with M + 1 states") {
    for (int dim : {1, 2}) {
        auto grid = dim == 1 ? DiscretizationGrid::line({0, 1}, 9, 1.0, 12)
                             : DiscretizationGrid::plane({0, 1}, {0, 1}, 5, 1.0, 12);
        ProblemSpec spec{grid, DiffusionField::diagonal(1.0, 1.0), std::nullopt, {}, {}, FractionalOrder(0.5)};
        const auto traj = fom_solve(spec);
        CHECK(traj.size() == 13);
        CHECK(traj.dim() == grid.unknowns());
        for (std::size_t m = 0; m < traj.size(); ++m)
            for (double v : traj[m]) CHECK(v == 0.0);
    }
}

TEST_CASE("trajectory starts at the sampled initial state") {
    const auto spec = example4(FractionalOrder(0.6), CaseGrid{9, 1.0, 8});
    const auto traj = fom_solve(spec);
    CHECK(traj.size() == 9);
    const auto u0 = spec.initial_state();
    for (std::size_t i = 0; i < u0.size(); ++i) CHECK(traj[0][i] == u0[i]);
}

TEST_CASE("second-order spatial convergence on Test I") {
    const double beta = 0.2;
    const std::size_t steps = 1024;
    double prev = 0.0;
    for (std::size_t n : {15u, 31u}) {
        const auto spec = test1(FractionalOrder(beta), CaseGrid{n, 1.0, steps});
        const double e = final_error(spec, test1_exact);
        if (prev > 0.0) {
            const double ratio = prev / e;
            CAPTURE(ratio);
            CHECK(ratio >= 3.2);
            CHECK(ratio <= 4.8);
        }
        prev = e;
    }
}

TEST_CASE("Newton on Test II: step below 1e-10, residual decreasing") {
    auto spec = test2(FractionalOrder(0.5));
    std::map<std::size_t, std::vector<NewtonRecord>> per_step;
    FomOptions o;
    o.on_newton = [&](const NewtonRecord& r) { per_step[r.step].push_back(r); };
    FomStats st;
    fom_solve(spec, o, &st);
    CHECK(per_step.size() == 64);
    for (const auto& [m, recs] : per_step) {
        CAPTURE(m);
        REQUIRE(!recs.empty());
        CHECK(recs.back().step_norm <= 1e-10);
        for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].residual_norm <= recs[i - 1].residual_norm + 1e-15);
    }
    CHECK(st.newton_iterations >= 64);
}

TEST_CASE("Newton cap raises ConvergenceError carrying the iterate") {
    auto spec = test2(FractionalOrder(0.5));
    FomOptions o;
    o.newton_max_iterations = 1;
    try {
        fom_solve(spec, o);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.last_iterate().size() == 63);
        CHECK(e.iterations() == 1);
    }
}

TEST_CASE("linear problems take one solve per step") {
    FomStats st;
    fom_solve(test1(FractionalOrder(0.5)), {}, &st);
    CHECK(st.linear_solves == 64);
    FomStats st2;
    fom_solve(example3(FractionalOrder(0.5), CaseGrid{15, 1.0, 16}), {}, &st2);
    CHECK(st2.linear_solves == 16);
    CHECK(st2.pcg_iterations > 0);
}

TEST_CASE("2D solve: Thomas is refused, PCG and dense agree on a tiny grid") {
    const auto spec = example3(FractionalOrder(0.5), CaseGrid{7, 1.0, 8});
    FomOptions o;
    o.solver = LinearSolverKind::thomas;
    CHECK_THROWS_AS(fom_solve(spec, o), std::invalid_argument);

    // Dense march of the same linear scheme.
    const auto a = assemble_stiffness(spec.mu, spec.grid).to_dense();
    const auto gam = gamma_scale(spec.beta, spec.grid.dt()).gamma;
    const auto w = l1_weights(spec.beta, 8);
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(a.rows(), a.cols()) + gam * a;
    StateHistory h(49);
    h.push_back(spec.initial_state());
    for (std::size_t k = 1; k <= 8; ++k) {
        const auto rhs = history_rhs(h, w.prefix(k));
        const Eigen::VectorXd u = m.fullPivLu().solve(Eigen::Map<const Eigen::VectorXd>(rhs.data(), 49));
        h.push_back(std::span<const double>(u.data(), 49));
    }
    FomOptions p;
    p.pcg.tol = 1e-13;
    const auto traj = fom_solve(spec, p);
    CHECK(discrete_l2_error(traj.final_state(), h.back(), spec.grid) <= 1e-11);
}

TEST_CASE("discrete L2 error") {
    const std::vector<double> u{1, 2, 3, 4}, v{0, 1, 2, 3};
    CHECK(discrete_l2_error(u, u, 0.25) == 0.0);
    CHECK(discrete_l2_error(u, v, 0.25) == doctest::Approx(1.0));
    std::vector<double> cu, cv;
    for (double x : u) cu.push_back(-3 * x);
    for (double x : v) cv.push_back(-3 * x);
    CHECK(discrete_l2_error(cu, cv, 0.25) == doctest::Approx(3 * discrete_l2_error(u, v, 0.25)));
    CHECK(discrete_l2_error(u, v, 0.5, 2) == doctest::Approx(std::sqrt(4 * 0.25)));
    CHECK_THROWS_AS(discrete_l2_error(u, std::vector<double>{1.0}, 0.25), std::invalid_argument);
}

}
