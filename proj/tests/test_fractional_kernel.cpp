#include "fracrom/fractional_kernel.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fracrom;

TEST_SUITE("fractional_kernel") {

TEST_CASE("order must lie strictly inside (0, 1)") {
    CHECK_THROWS_AS(FractionalOrder(0.0), std::invalid_argument);
    CHECK_THROWS_AS(FractionalOrder(1.0), std::invalid_argument);
    CHECK_THROWS_AS(FractionalOrder(-0.2), std::invalid_argument);
    CHECK_THROWS_AS(FractionalOrder(std::nan("")), std::invalid_argument);
    CHECK(FractionalOrder(0.3).value() == 0.3);
}

TEST_CASE("weights at beta = 0.5, m = 3") {
    const auto w = l1_weights(FractionalOrder(0.5), 3);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
    CHECK(w[2] == doctest::Approx(std::sqrt(3.0) - std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("single weight is one, m = 0 is rejected") {
    for (double b : {0.01, 0.5, 0.99}) CHECK(l1_weights(FractionalOrder(b), 1)[0] == 1.0);
    CHECK_THROWS_AS(l1_weights(FractionalOrder(0.5), 0), std::invalid_argument);
}

TEST_CASE("telescoping sum at beta = 0.25, m = 64") {
    const auto w = l1_weights(FractionalOrder(0.25), 64);
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j];
    // sum_{j<m} b_j = m^{1-beta}
    CHECK(s == doctest::Approx(std::pow(64.0, 0.75)).epsilon(1e-12));
}

TEST_CASE("weight invariants for 50 random (beta, m)") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ub(1e-3, 1.0 - 1e-3);
    std::uniform_int_distribution<std::size_t> um(1, 10000);
    for (int trial = 0; trial < 50; ++trial) {
        const double beta = ub(rng);
        const std::size_t m = um(rng);
        CAPTURE(beta);
        CAPTURE(m);
        const auto w = l1_weights(FractionalOrder(beta), m);
        REQUIRE(w.size() == m);
        CHECK(w[0] == 1.0);
        double sum = 0.0;
        bool positive = true, decreasing = true, matches = true;
        for (std::size_t j = 0; j < m; ++j) {
            positive = positive && w[j] > 0.0;
            if (j > 0) decreasing = decreasing && w[j] < w[j - 1];
            matches = matches && std::abs(w[j] - oracle::l1_weight(beta, j)) <= 1e-12 * w[j];
            sum += w[j];
        }
        CHECK(positive);
        CHECK(decreasing);
        CHECK(matches);
        const double expect = std::pow(static_cast<double>(m), 1.0 - beta);
        CHECK(std::abs(sum - expect) <= 1e-12 * expect);
    }
}

TEST_CASE("cached weights equal the closed form") {
    const FractionalOrder b(0.37);
    const auto c = cached_l1_weights(b, 200);
    const auto d = l1_weights(b, 200);
    REQUIRE(c->size() == 200);
    for (std::size_t j = 0; j < 200; ++j) CHECK((*c)[j] == d[j]);
    CHECK(cached_l1_weights(b, 200).get() == c.get());
}

TEST_CASE("gamma scale") {
    const double half_sqrt_pi = 0.5 * std::sqrt(std::numbers::pi);
    CHECK(gamma_scale(FractionalOrder(0.5), 1.0).gamma == doctest::Approx(half_sqrt_pi).epsilon(1e-14));
    CHECK(gamma_scale(FractionalOrder(0.5), 0.25).gamma == doctest::Approx(0.5 * half_sqrt_pi).epsilon(1e-14));
    CHECK(gamma_scale(FractionalOrder(0.5), 1.0).gamma == doctest::Approx(0.886227).epsilon(1e-6));
    CHECK(gamma_scale(FractionalOrder(0.5), 0.25).gamma == doctest::Approx(0.443113).epsilon(1e-6));
    // dt = 1: Gamma(2 - beta). Gamma(1.75) and Gamma(1.1) from tables.
    CHECK(gamma_scale(FractionalOrder(0.25), 1.0).gamma == doctest::Approx(0.919062526848883).epsilon(1e-13));
    CHECK(gamma_scale(FractionalOrder(0.9), 1.0).gamma == doctest::Approx(0.951350769866873).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_scale(FractionalOrder(0.5), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gamma_scale(FractionalOrder(0.5), -1.0), std::invalid_argument);
}

TEST_CASE("history: m = 1 returns u0") {
    StateHistory h(3);
    const std::vector<double> v{1.5, -2.0, 0.25};
    h.push_back(v);
    const auto w = l1_weights(FractionalOrder(0.4), 1);
    CHECK(history_rhs(h, w.values()) == v);
}

TEST_CASE("history: constant levels telescope to the constant") {
    StateHistory h(2);
    const std::vector<double> c{3.0, -7.0};
    for (int i = 0; i < 40; ++i) h.push_back(c);
    const auto w = l1_weights(FractionalOrder(0.6), 40);
    const auto out = history_rhs(h, w.values());
    CHECK(out[0] == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(out[1] == doctest::Approx(-7.0).epsilon(1e-13));
}

TEST_CASE("history: m = 3 expansion with unit vectors") {
    StateHistory h(3);
    h.push_back(std::vector<double>{1, 0, 0});
    h.push_back(std::vector<double>{0, 1, 0});
    h.push_back(std::vector<double>{0, 0, 1});
    const double b0 = 1.0, b1 = std::sqrt(2.0) - 1.0, b2 = std::sqrt(3.0) - std::sqrt(2.0);
    const auto out = history_rhs(h, l1_weights(FractionalOrder(0.5), 3).values());
    CHECK(out[0] == doctest::Approx(b2).epsilon(1e-14));
    CHECK(out[1] == doctest::Approx(b1 - b2).epsilon(1e-14));
    CHECK(out[2] == doctest::Approx(b0 - b1).epsilon(1e-14));
}

TEST_CASE("history is linear in the stored levels") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    const std::size_t dim = 17, m = 30;
    const double alpha = 0.73;
    StateHistory u(dim), v(dim), comb(dim);
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<double> a(dim), b(dim), c(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            a[i] = nd(rng);
            b[i] = nd(rng);
            c[i] = alpha * a[i] + alpha * b[i];
        }
        u.push_back(a);
        v.push_back(b);
        comb.push_back(c);
    }
    const auto w = l1_weights(FractionalOrder(0.45), m);
    const auto hu = history_rhs(u, w.values());
    const auto hv = history_rhs(v, w.values());
    const auto hc = history_rhs(comb, w.values());
    for (std::size_t i = 0; i < dim; ++i) {
        const double expect = alpha * hu[i] + alpha * hv[i];
        CHECK(std::abs(hc[i] - expect) <= 1e-13 * (std::abs(expect) + std::abs(hc[i]) + 1.0));
    }
}

TEST_CASE("history rejects mismatched inputs") {
    StateHistory h(2);
    CHECK_THROWS_AS(h.push_back(std::vector<double>{1.0}), std::invalid_argument);
    h.push_back(std::vector<double>{1.0, 2.0});
    h.push_back(std::vector<double>{1.0, 2.0});
    const auto w = l1_weights(FractionalOrder(0.5), 3);
    CHECK_THROWS_AS(history_rhs(h, w.values()), std::invalid_argument);
}

TEST_CASE("manufactured ODE converges at order 2 - beta") {
    for (double beta : {0.3, 0.5, 0.7}) {
        CAPTURE(beta);
        const auto p = oracle::observed_orders(beta, 64, 3);
        for (double q : p) CHECK(q >= 2.0 - beta - 0.15);
    }
}

}
