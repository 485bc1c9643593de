#include "fracrom/problem.hpp"

namespace fracrom {

double ProblemSpec::nonlinear_term(double u, Point p, double t) const {
    double v = reaction ? reaction->g(u) : 0.0;
    if (source) v -= source(p, t);
    return v;
}

double ProblemSpec::nonlinear_derivative(double u) const {
    return reaction ? reaction->dg(u) : 0.0;
}

std::vector<double> ProblemSpec::initial_state() const {
    std::vector<double> u(grid.unknowns(), 0.0);
    if (!u0) return u;
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = u0(grid.interior_point(k));
    return u;
}

std::vector<double> ProblemSpec::source_at(double t) const {
    std::vector<double> f(grid.unknowns(), 0.0);
    if (!source) return f;
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = source(grid.interior_point(k), t);
    return f;
}

}  // namespace fracrom
