#pragma once

// L1 discretisation of the Caputo derivative of order beta in (0, 1):
//
//   D^beta u(t_m) ~ 1/(Gamma(2-beta) dt^beta) * sum_{j<m} b_j (u^{m-j} - u^{m-j-1}),
//   b_j = (j+1)^{1-beta} - j^{1-beta}.
//
// After multiplying through by gamma = dt^beta Gamma(2-beta), every time step
// has the form  u^m + gamma * (spatial terms) = history_rhs(u^0..u^{m-1}).

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fracrom {

/// Fractional order, validated to lie in the open interval (0, 1).
class FractionalOrder {
public:
    explicit FractionalOrder(double beta);

    double value() const noexcept { return beta_; }

    friend bool operator==(FractionalOrder, FractionalOrder) = default;

private:
    double beta_;
};

/// b_0 .. b_{m-1}. Strictly decreasing, b_0 == 1.
class L1Weights {
public:
    L1Weights(FractionalOrder beta, std::vector<double> b) : beta_(beta), b_(std::move(b)) {}

    FractionalOrder beta() const noexcept { return beta_; }
    std::size_t size() const noexcept { return b_.size(); }
    double operator[](std::size_t j) const { return b_[j]; }
    std::span<const double> values() const noexcept { return b_; }
    /// b_0 .. b_{m-1}; the weights needed at time level m.
    std::span<const double> prefix(std::size_t m) const { return std::span(b_).first(m); }

private:
    FractionalOrder beta_;
    std::vector<double> b_;
};

/// Closed-form weights. Throws std::invalid_argument for m == 0.
L1Weights l1_weights(FractionalOrder beta, std::size_t m);

/// Same values as l1_weights, shared through a small process-wide cache keyed
/// by (beta, m). Thread-safe.
std::shared_ptr<const L1Weights> cached_l1_weights(FractionalOrder beta, std::size_t m);

struct GammaScale {
    double gamma;
    FractionalOrder beta;
    double dt;
};

/// gamma = dt^beta * Gamma(2 - beta). Throws for dt <= 0.
GammaScale gamma_scale(FractionalOrder beta, double dt);

/// Dense, contiguous store of equally sized state vectors (time levels).
class StateHistory {
public:
    StateHistory() = default;
    explicit StateHistory(std::size_t dim, std::size_t reserve_levels = 0);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
    bool empty() const noexcept { return data_.empty(); }

    /// Appends a level; throws std::invalid_argument on dimension mismatch.
    void push_back(std::span<const double> state);

    std::span<const double> operator[](std::size_t level) const {
        return std::span(data_).subspan(level * dim_, dim_);
    }
    std::span<double> operator[](std::size_t level) {
        return std::span(data_).subspan(level * dim_, dim_);
    }
    std::span<const double> back() const { return (*this)[size() - 1]; }
    const double* data() const noexcept { return data_.data(); }

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

/// Memory term at level m = history.size():
///   sum_{j=1}^{m-1} (b_{j-1} - b_j) u^{m-j} + b_{m-1} u^0.
/// `weights` must hold exactly m values (b_0 .. b_{m-1}).
void history_rhs(const StateHistory& history, std::span<const double> weights,
                 std::span<double> out);

std::vector<double> history_rhs(const StateHistory& history, std::span<const double> weights);

}  // namespace fracrom
