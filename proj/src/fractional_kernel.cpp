#include "fracrom/fractional_kernel.hpp"

#include "fracrom/simd/kernels.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace fracrom {

FractionalOrder::FractionalOrder(double beta) : beta_(beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("fractional order must lie in (0, 1), got " + std::to_string(beta));
    }
}

L1Weights l1_weights(FractionalOrder beta, std::size_t m) {
    if (m == 0) throw std::invalid_argument("l1_weights: need at least one weight");
    const double p = 1.0 - beta.value();
    std::vector<double> b(m);
    b[0] = 1.0;
    for (std::size_t j = 1; j < m; ++j) {
        // (j+1)^p - j^p without cancellation
        const auto jd = static_cast<double>(j);
        b[j] = std::pow(jd, p) * std::expm1(p * std::log1p(1.0 / jd));
    }
    return L1Weights(beta, std::move(b));
}

std::shared_ptr<const L1Weights> cached_l1_weights(FractionalOrder beta, std::size_t m) {
    using Key = std::pair<double, std::size_t>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const L1Weights>> cache;
    static std::deque<Key> order;
    constexpr std::size_t capacity = 64;

    const Key key{beta.value(), m};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto w = std::make_shared<const L1Weights>(l1_weights(beta, m));
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.emplace(key, w);
    if (inserted) {
        order.push_back(key);
        if (order.size() > capacity) {
            cache.erase(order.front());
            order.pop_front();
        }
    }
    return it->second;
}

GammaScale gamma_scale(FractionalOrder beta, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("gamma_scale: time step must be positive");
    const double b = beta.value();
    return GammaScale{std::pow(dt, b) * std::tgamma(2.0 - b), beta, dt};
}

StateHistory::StateHistory(std::size_t dim, std::size_t reserve_levels) : dim_(dim) {
    data_.reserve(dim * reserve_levels);
}

void StateHistory::push_back(std::span<const double> state) {
    if (state.size() != dim_) {
        throw std::invalid_argument("StateHistory: expected dimension " + std::to_string(dim_) +
                                    ", got " + std::to_string(state.size()));
    }
    data_.insert(data_.end(), state.begin(), state.end());
}

void history_rhs(const StateHistory& history, std::span<const double> weights,
                 std::span<double> out) {
    const std::size_t m = history.size();
    if (m == 0 || weights.size() != m) {
        throw std::invalid_argument("history_rhs: need one weight per stored level (" +
                                    std::to_string(m) + " levels, " +
                                    std::to_string(weights.size()) + " weights)");
    }
    if (out.size() != history.dim()) throw std::invalid_argument("history_rhs: output dimension mismatch");

    // Coefficient of level k: b_{m-1} for k = 0, b_{m-k-1} - b_{m-k} otherwise.
    std::vector<double> coeffs(m);
    coeffs[0] = weights[m - 1];
    for (std::size_t k = 1; k < m; ++k) coeffs[k] = weights[m - k - 1] - weights[m - k];
    simd::weighted_row_sum(coeffs, history.data(), history.dim(), out);
}

std::vector<double> history_rhs(const StateHistory& history, std::span<const double> weights) {
    std::vector<double> out(history.dim());
    history_rhs(history, weights, out);
    return out;
}

}  // namespace fracrom
