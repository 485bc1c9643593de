#pragma once

#include "fracrom/fractional_kernel.hpp"
#include "fracrom/grid.hpp"
#include "fracrom/stiffness.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fracrom {

/// Pointwise reaction g(u) and its derivative.
struct Reaction {
    std::function<double(double)> g;
    std::function<double(double)> dg;
};

using SourceFunction = std::function<double(Point, double)>;
using InitialFunction = std::function<double(Point)>;

/// One instance of  D_t^beta u - div(mu grad u) + g(u) = f,  u = 0 on the
/// boundary, u(., 0) = u0.
struct ProblemSpec {
    DiscretizationGrid grid;
    DiffusionField mu;
    std::optional<Reaction> reaction;  ///< empty means g == 0 (linear problem)
    SourceFunction source;             ///< empty means f == 0
    InitialFunction u0;                ///< empty means u0 == 0
    FractionalOrder beta;

    bool linear() const noexcept { return !reaction.has_value(); }

    /// F_i(u_i, t) = g(u_i) - f(x_i, t): the nonlinear term as it enters the scheme.
    double nonlinear_term(double u, Point p, double t) const;
    double nonlinear_derivative(double u) const;

    std::vector<double> initial_state() const;
    std::vector<double> source_at(double t) const;
};

}  // namespace fracrom
