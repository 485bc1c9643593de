#include "fracrom/deim.hpp"
#include "fracrom/errors.hpp"
#include "fracrom/experiments.hpp"
#include "fracrom/offline.hpp"
#include "fracrom/problems.hpp"
#include "fracrom/rom.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fracrom;

namespace {

Eigen::MatrixXd unit(Eigen::Index n, std::initializer_list<Eigen::Index> cols) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(cols.size()));
    Eigen::Index c = 0;
    for (auto i : cols) m(i, c++) = 1.0;
    return m;
}

std::vector<double> gather(const Eigen::VectorXd& f, const std::vector<std::size_t>& idx) {
    std::vector<double> v;
    for (auto i : idx) v.push_back(f(static_cast<Eigen::Index>(i)));
    return v;
}

}  // namespace

TEST_SUITE("deim") {

TEST_CASE("canonical examples (0-based indices)") {
    CHECK(deim_select(unit(5, {2})) == std::vector<std::size_t>{2});
    CHECK(deim_select(unit(5, {0, 1})) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("ties go to the lowest index") {
    Eigen::MatrixXd psi(4, 1);
    psi << 0.5, -0.5, 0.5, -0.5;
    CHECK(deim_select(psi) == std::vector<std::size_t>{0});
}

TEST_CASE("selection matches an independent re-trace on 20 random bases") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::MatrixXd psi = oracle::random_orthonormal(30, 5, 4000 + seed);
        const auto got = deim_select(psi);
        CHECK(got == oracle::deim_retrace(psi));
        std::vector<std::size_t> sorted = got;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        CHECK(deim_select(psi) == got);
    }
}

TEST_CASE("dependent columns are reported") {
    Eigen::MatrixXd psi = oracle::random_orthonormal(10, 2, 3);
    Eigen::MatrixXd dep(10, 3);
    dep << psi, psi.col(0) * 2.0 - psi.col(1);
    CHECK_THROWS_AS(deim_select(dep), SingularMatrixError);
    CHECK_THROWS_AS(deim_select(Eigen::MatrixXd::Zero(6, 1)), SingularMatrixError);
}

TEST_CASE("Phi = Psi with identity rows at the points gives Q = Phi^T Psi") {
    const Eigen::MatrixXd psi = unit(6, {1, 4});
    const DeimOperator op(psi, psi, {1, 4});
    CHECK((op.projector() - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("s = 1: Q = Phi^T psi / psi[p]") {
    const Eigen::MatrixXd phi = oracle::random_orthonormal(12, 3, 21);
    const Eigen::MatrixXd psi = oracle::random_orthonormal(12, 1, 22);
    const auto idx = deim_select(psi);
    const DeimOperator op(phi, psi, idx);
    const Eigen::VectorXd expect = phi.transpose() * psi.col(0) / psi(static_cast<Eigen::Index>(idx[0]), 0);
    CHECK((op.projector().col(0) - expect).cwiseAbs().maxCoeff() <= 1e-13 * expect.cwiseAbs().maxCoeff());
}

TEST_CASE("full formula equals Q F(p); interpolation is exact on span(Psi)") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Eigen::MatrixXd phi = oracle::random_orthonormal(40, 4, 100 + seed);
        const Eigen::MatrixXd psi = oracle::random_orthonormal(40, 6, 200 + seed);
        const auto idx = deim_select(psi);
        const DeimOperator op(phi, psi, idx);

        const Eigen::VectorXd f = oracle::random_matrix(40, 1, 300 + seed).col(0);
        // Psi (P^T Psi)^{-1} P^T F, built densely.
        Eigen::MatrixXd pt_psi(6, 6);
        for (int k = 0; k < 6; ++k) pt_psi.row(k) = psi.row(static_cast<Eigen::Index>(idx[k]));
        const Eigen::VectorXd fp = Eigen::Map<const Eigen::VectorXd>(gather(f, idx).data(), 6);
        const Eigen::VectorXd full = psi * oracle::dense_solve(pt_psi, fp);
        const Eigen::VectorXd via_full = phi.transpose() * full;
        const Eigen::VectorXd via_q = op.project(gather(f, idx));
        CHECK((via_full - via_q).norm() <= 1e-12 * (1 + via_full.norm()));

        // Reconstruction agrees with F at the selected rows.
        const Eigen::VectorXd rec = op.reconstruct(gather(f, idx));
        for (auto i : idx) CHECK(std::abs(rec(static_cast<Eigen::Index>(i)) - f(static_cast<Eigen::Index>(i))) <= 1e-12 * (1 + f.norm()));

        // F in span(Psi): DEIM is exact.
        const Eigen::VectorXd c = oracle::random_matrix(6, 1, 400 + seed).col(0);
        const Eigen::VectorXd fs = psi * c;
        const Eigen::VectorXd exact = phi.transpose() * fs;
        const Eigen::VectorXd approx = op.project(gather(fs, idx));
        CHECK((exact - approx).norm() <= 1e-11 * exact.norm());
    }
}

TEST_CASE("apply_deim evaluates exactly s points and checks the count") {
    const Eigen::MatrixXd phi = oracle::random_orthonormal(25, 3, 1);
    const Eigen::MatrixXd psi = oracle::random_orthonormal(25, 5, 2);
    const DeimOperator op(phi, psi, deim_select(psi));
    std::size_t evaluations = 0;
    const auto out = apply_deim(op, [&](std::span<const std::size_t> idx) {
        evaluations += idx.size();
        return std::vector<double>(idx.size(), 0.0);
    });
    CHECK(evaluations == 5);
    CHECK(out.norm() == 0.0);
    const Eigen::VectorXd psi1 = psi.col(0);
    const auto first = apply_deim(op, [&](std::span<const std::size_t> idx) {
        std::vector<double> v;
        for (auto i : idx) v.push_back(psi1(static_cast<Eigen::Index>(i)));
        return v;
    });
    CHECK((first - phi.transpose() * psi1).norm() <= 1e-12);
    CHECK_THROWS_AS(apply_deim(op, [](std::span<const std::size_t>) { return std::vector<double>(2, 1.0); }),
                    std::invalid_argument);
}

TEST_CASE("operator construction validates its indices") {
    const Eigen::MatrixXd phi = oracle::random_orthonormal(10, 2, 1);
    const Eigen::MatrixXd psi = oracle::random_orthonormal(10, 2, 2);
    CHECK_THROWS_AS(DeimOperator(phi, psi, {1}), std::invalid_argument);
    CHECK_THROWS_AS(DeimOperator(phi, psi, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(DeimOperator(phi, psi, {1, 10}), std::invalid_argument);
}

TEST_CASE("Test II: DEIM ROM stays within 1e-5 of the full-evaluation ROM") {
    const auto& c = benchmark_case("test2");
    const std::vector<double> samples(c.samples.begin(), c.samples.end());
    OfflineOptions o;
    o.pod_dim = 4;
    o.deim_dim = 10;
    const auto model = build_offline(case_factory(c, {}), samples, o);
    REQUIRE(model.rom.deim.has_value());
    CHECK(model.rom.deim->points() == 10);
    for (double beta : {0.3, 0.7}) {
        const auto spec = test2(FractionalOrder(beta));
        const auto hyper = rom_solve(model.rom, spec).lift_final();
        RomOptions full;
        full.full_evaluation = true;
        const auto ref = rom_solve(model.rom, spec, full).lift_final();
        CHECK(discrete_l2_error(hyper, ref, spec.grid) < 1e-5);
    }
}

}
