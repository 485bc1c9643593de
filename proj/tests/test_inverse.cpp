#include "fracrom/errors.hpp"
#include "fracrom/experiments.hpp"
#include "fracrom/inverse.hpp"
#include "fracrom/problems.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace fracrom;

namespace {

/// Smooth, nonlinear synthetic map beta -> R^20.
std::vector<double> synthetic(double beta) {
    std::vector<double> u(20);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = (i + 1) / 21.0;
        u[i] = std::sin(3 * x) * std::exp(-beta) + x * beta * beta;
    }
    return u;
}

void check_monotone(const IdentificationResult& r) {
    REQUIRE(r.trace.size() == r.iterations + 1);
    for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k].objective <= r.trace[k - 1].objective);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
        CHECK(r.trace[k].k == k);
        if (k + 1 < r.trace.size())
            CHECK(r.trace[k + 1].beta == doctest::Approx(r.trace[k].beta + r.trace[k].step).epsilon(1e-15));
    }
}

}  // namespace

TEST_SUITE("inverse") {

TEST_CASE("LM direction examples") {
    const std::vector<double> e1{1, 0, 0}, zero{0, 0, 0};
    CHECK(lm_direction(e1, zero, 1.0) == 0.0);
    CHECK(lm_direction(e1, e1, 0.0) == doctest::Approx(-1.0));
    CHECK(lm_direction(e1, e1, 1.0) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(lm_direction(e1, e1, -1.0), std::invalid_argument);
    CHECK(lm_direction(zero, e1, 0.0) == 0.0);
}

TEST_CASE("Armijo: exact minimiser of a quadratic is accepted at m = 0") {
    const double star = 0.6;
    auto f = [&](double b) { return 0.5 * (b - star) * (b - star); };
    const double beta = 0.2;
    const double slope = beta - star;  // J = 1, r = beta - star
    const double d = -slope;
    const auto r = armijo_search(beta, d, slope, f(beta), f, 0.75, 0.25);
    CHECK(r.backtracks == 0);
    CHECK(r.beta == doctest::Approx(star));
    CHECK(!r.stalled);
}

TEST_CASE("Armijo: zero direction gives a zero step") {
    auto f = [](double b) { return b * b; };
    const auto r = armijo_search(0.4, 0.0, 0.3, f(0.4), f, 0.75, 0.25);
    CHECK(r.step == 0.0);
    CHECK(r.backtracks == 0);
    CHECK(r.beta == 0.4);
}

TEST_CASE("Armijo: trial points outside (0, 1) are skipped, ascent stalls") {
    auto f = [](double b) { return 0.5 * (b - 0.95) * (b - 0.95); };
    const double beta = 0.5, slope = beta - 0.95;
    const auto r = armijo_search(beta, 4.0, slope, f(beta), f, 0.5, 0.25);
    CHECK(r.beta < 1.0);
    CHECK(r.backtracks >= 3);
    auto up = [](double b) { return b; };
    const auto s = armijo_search(0.5, 0.1, -1.0, up(0.5), up, 0.5, 0.25, 10);
    CHECK(s.stalled);
    CHECK(s.backtracks == 10);
    CHECK(s.beta == 0.5);
}

TEST_CASE("sensitivity of a linear map is exact, residual vanishes on model data") {
    std::vector<double> v{1.0, -2.0, 0.5};
    FunctionForward fwd([&](double b) { return std::vector<double>{b * v[0], b * v[1], b * v[2]}; }, 3);
    ObservationData data{fwd.final_state(FractionalOrder(0.4)), 0.0, std::nullopt};
    const auto s = sensitivity(FractionalOrder(0.4), data, fwd, 1e-3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(s.j[i] == doctest::Approx(v[i]).epsilon(1e-10));
        CHECK(s.r[i] == 0.0);
    }
    CHECK(s.objective == 0.0);
    CHECK(objective(FractionalOrder(0.4), data, fwd) == 0.0);
}

TEST_CASE("backward difference at the right edge") {
    FunctionForward fwd([](double b) { return std::vector<double>{b * b}; }, 1);
    ObservationData data{{0.0}, 0.0, std::nullopt};
    const auto s = sensitivity(FractionalOrder(0.9995), data, fwd, 1e-3);
    CHECK(s.increment == doctest::Approx(-1e-3));
    CHECK(s.j[0] == doctest::Approx(2 * 0.9995 - 1e-3).epsilon(1e-10));
    CHECK_THROWS_AS(sensitivity(FractionalOrder(0.3), data, fwd, 0.8), std::invalid_argument);
}

TEST_CASE("finite differences on Test I are consistent across increments") {
    const auto& c = benchmark_case("test1");
    FomForward fwd(case_factory(c, {}));
    ObservationData data{std::vector<double>(63, 0.0), 0.0, std::nullopt};
    const auto a = sensitivity(FractionalOrder(0.5), data, fwd, 1e-3);
    const auto b = sensitivity(FractionalOrder(0.5), data, fwd, 1e-4);
    double jmax = 0.0;
    for (double x : b.j) jmax = std::max(jmax, std::abs(x));
    REQUIRE(jmax > 0.0);
    for (std::size_t i = 0; i < 63; ++i) {
        if (std::abs(b.j[i]) < 1e-2 * jmax) continue;
        CHECK(std::abs(a.j[i] - b.j[i]) <= 1e-2 * std::abs(b.j[i]));
    }
}

TEST_CASE("noise: zero level, determinism, sample deviation") {
    const std::vector<double> g(3969, 2.0);
    const auto clean = add_noise(g, 0.0, 5);
    CHECK(clean.g == g);
    const auto a = add_noise(g, 1.0, 42), b = add_noise(g, 1.0, 42), c = add_noise(g, 1.0, 43);
    CHECK(a.g == b.g);
    CHECK(a.g != c.g);
    CHECK(a.seed == std::optional<std::uint64_t>(42));
    double mean = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) mean += a.g[i] / g[i] - 1.0;
    mean /= static_cast<double>(g.size());
    double var = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double e = a.g[i] / g[i] - 1.0 - mean;
        var += e * e;
    }
    const double sd = std::sqrt(var / static_cast<double>(g.size() - 1));
    CHECK(sd >= 0.009);
    CHECK(sd <= 0.011);
    CHECK(std::abs(mean) <= 5e-4);
    CHECK_THROWS_AS(add_noise(g, -1.0, 1), std::invalid_argument);
}

TEST_CASE("identify recovers the order of a synthetic map") {
    FunctionForward fwd(synthetic, 20);
    const ObservationData data{synthetic(0.6), 0.0, std::nullopt};
    for (double b0 : {0.1, 0.3, 0.5, 0.9}) {
        CAPTURE(b0);
        LmConfig cfg;
        cfg.beta0 = b0;
        const auto r = identify(cfg, data, fwd);
        CHECK(r.converged);
        CHECK(std::abs(r.beta_inv - 0.6) <= 1e-6);
        CHECK(r.loop_passes == r.iterations + 1);
        check_monotone(r);
        CHECK(r.forward_solves > 0);
    }
}

TEST_CASE("unregularised variant also converges on the synthetic map") {
    FunctionForward fwd(synthetic, 20);
    const ObservationData data{synthetic(0.45), 0.0, std::nullopt};
    LmConfig cfg;
    cfg.beta0 = 0.7;
    cfg.regularized = false;
    const auto r = identify(cfg, data, fwd);
    CHECK(r.converged);
    CHECK(std::abs(r.beta_inv - 0.45) <= 1e-6);
    check_monotone(r);
}

TEST_CASE("iteration cap: not converged, full trace") {
    FunctionForward fwd(synthetic, 20);
    const ObservationData data{synthetic(0.6), 0.0, std::nullopt};
    LmConfig cfg;
    cfg.beta0 = 0.1;
    cfg.kmax = 1;
    const auto r = identify(cfg, data, fwd);
    CHECK(!r.converged);
    CHECK(r.iterations == 1);
    CHECK(r.trace.size() == 2);
    check_monotone(r);
}

TEST_CASE("configuration is validated") {
    LmConfig c;
    CHECK_NOTHROW(c.validate());
    c.sigma = 0.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.beta0 = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.rho = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.kmax = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("Example 1, clean data, beta0 = 0.5: recovery and descent") {
    IdentificationBench bench(benchmark_case("ex1"));
    const auto r = bench.run(0.5, bench.clean_data(), ForwardKind::rom);
    CHECK(r.converged);
    CHECK(std::abs(r.beta_inv - 0.75) <= 1e-7);
    check_monotone(r);
    CHECK(r.trace.back().objective < 1e-14);
    for (const auto& row : r.trace) CHECK(row.backtracks <= 5);
    CAPTURE(r.loop_passes);
    CHECK(r.loop_passes <= 14);
}

TEST_CASE("Example 2, clean data, beta0 = 0.3: recovery") {
    IdentificationBench bench(benchmark_case("ex2"));
    const auto r = bench.run(0.3, bench.clean_data(), ForwardKind::rom);
    CHECK(r.converged);
    CHECK(std::abs(r.beta_inv - 0.75) <= 1e-6);
    check_monotone(r);
    CAPTURE(r.loop_passes);
    CHECK(r.loop_passes <= 10);
}

TEST_CASE("clean data: FOM and ROM forwards agree on Example 1") {
    IdentificationBench bench(benchmark_case("ex1"));
    const auto rom = bench.run(0.6, bench.clean_data(), ForwardKind::rom);
    const auto fom = bench.run(0.6, bench.clean_data(), ForwardKind::fom);
    CHECK(std::abs(rom.beta_inv - fom.beta_inv) <= 1e-6);
}

}
