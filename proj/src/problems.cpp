#include "fracrom/problems.hpp"

#include "fracrom/expression.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracrom {
namespace {

constexpr double pi = std::numbers::pi;

DiscretizationGrid line_grid(Interval x, const CaseGrid& g) {
    return DiscretizationGrid::line(x, g.n.value_or(63), g.final_time.value_or(1.0), g.steps.value_or(64));
}

DiscretizationGrid plane_grid(Interval x, Interval y, const CaseGrid& g) {
    return DiscretizationGrid::plane(x, y, g.n.value_or(63), g.final_time.value_or(1.0),
                                     g.steps.value_or(64));
}

double test2_shape(double x) { return x * (1.0 - x) * std::exp(-50.0 * (x - 0.5) * (x - 0.5)); }

}  // namespace

ProblemSpec test1(FractionalOrder beta, const CaseGrid& grid) {
    const double b = beta.value();
    const double g2b = std::tgamma(2.0 + b);
    return ProblemSpec{
        line_grid({0.0, 1.0}, grid),
        DiffusionField::scalar([](double x) { return 1.0 + x; }),
        std::nullopt,
        [b, g2b](Point p, double t) {
            const double s = std::sin(pi * p.x), c = std::cos(pi * p.x);
            return g2b * t * s + std::pow(t, 1.0 + b) * ((1.0 + p.x) * pi * pi * s - pi * c);
        },
        [](Point) { return 0.0; },
        beta,
    };
}

double test1_exact(Point p, double t, double beta) {
    return std::pow(t, 1.0 + beta) * std::sin(pi * p.x);
}

ProblemSpec test2(FractionalOrder beta, const CaseGrid& grid) {
    constexpr double mu = 0.05;
    const double b = beta.value();
    const double caputo_coeff = 4.0 * std::tgamma(3.0) / std::tgamma(3.0 - b);
    return ProblemSpec{
        line_grid({0.0, 1.0}, grid),
        DiffusionField::constant(mu),
        Reaction{[](double u) { return std::sin(u); }, [](double u) { return std::cos(u); }},
        [b, caputo_coeff](Point p, double t) {
            const double x = p.x;
            const double e = std::exp(-50.0 * (x - 0.5) * (x - 0.5));
            const double u = 4.0 * t * t * x * (1.0 - x) * e;
            // -(x(1-x)e)'' = (10000x^4 - 20000x^3 + 12000x^2 - 2000x - 98) e
            const double poly = (((10000.0 * x - 20000.0) * x + 12000.0) * x - 2000.0) * x - 98.0;
            return std::sin(u) + caputo_coeff * std::pow(t, 2.0 - b) * x * (1.0 - x) * e +
                   4.0 * mu * t * t * poly * e;
        },
        [](Point) { return 0.0; },
        beta,
    };
}

double test2_exact(Point p, double t, double) { return 4.0 * t * t * test2_shape(p.x); }

ProblemSpec example3(FractionalOrder beta, const CaseGrid& grid) {
    return ProblemSpec{
        plane_grid({-1.0, 1.0}, {-1.0, 1.0}, grid),
        DiffusionField::constant(1.0),
        std::nullopt,
        {},
        [](Point p) { return (p.x - 1.0) * (p.x + 1.0) * (p.y - 1.0) * (p.y + 1.0); },
        beta,
    };
}

ProblemSpec example4(FractionalOrder beta, const CaseGrid& grid) {
    const double b = beta.value();
    const double c1 = std::tgamma(3.0 + b) / std::tgamma(3.0);
    const double c2 = std::tgamma(3.0) / std::tgamma(3.0 - b);
    return ProblemSpec{
        plane_grid({0.0, 1.0}, {0.0, 1.0}, grid),
        DiffusionField::diagonal(1.0, 2.0),
        Reaction{[](double u) { return u * u * u; }, [](double u) { return 3.0 * u * u; }},
        [b, c1, c2](Point p, double t) {
            const double shape = std::sin(2.0 * pi * p.x) * std::sin(pi * p.y);
            const double u = (std::pow(t, 2.0 + b) + t * t + 1.0) * shape;
            return u * u * u + 6.0 * pi * pi * u + (c1 * t * t + c2 * std::pow(t, 2.0 - b)) * shape;
        },
        [](Point p) { return std::sin(2.0 * pi * p.x) * std::sin(pi * p.y); },
        beta,
    };
}

double example4_exact(Point p, double t, double beta) {
    return (std::pow(t, 2.0 + beta) + t * t + 1.0) * std::sin(2.0 * pi * p.x) * std::sin(pi * p.y);
}

std::span<const BenchmarkCase> benchmark_cases() {
    static const std::vector<BenchmarkCase> cases = {
        {"test1", "1D linear, mu = 1 + x, u = t^(1+beta) sin(pi x)", 1, test1, test1_exact,
         {0.2, 0.4, 0.6, 0.8}, 2, 2},
        {"test2", "1D nonlinear g = sin(u), mu = 0.05", 1, test2, test2_exact,
         {0.2, 0.4, 0.6, 0.8}, 4, 10},
        {"ex1", "identification on the test1 setup", 1, test1, test1_exact,
         {0.2, 0.4, 0.6, 0.8}, 4, 2},
        {"ex2", "identification on the test2 setup", 1, test2, test2_exact,
         {0.2, 0.4, 0.6, 0.8}, 4, 10},
        {"ex3", "2D linear on [-1,1]^2, mu = 1, f = 0", 2, example3, {},
         {0.2, 0.4, 0.6, 0.8}, 4, 0},
        {"ex4", "2D nonlinear g = u^3, mu = diag(1,2)", 2, example4, example4_exact,
         {0.2, 0.4, 0.6, 0.8}, 4, 10},
    };
    return cases;
}

const BenchmarkCase& benchmark_case(std::string_view id) {
    for (const auto& c : benchmark_cases()) {
        if (c.id == id) return c;
    }
    throw std::invalid_argument("unknown case '" + std::string(id) +
                                "' (expected test1, test2, ex1, ex2, ex3 or ex4)");
}

std::vector<double> sample_exact(const ExactSolution& exact, const DiscretizationGrid& grid,
                                 double t, double beta) {
    if (!exact) throw std::invalid_argument("sample_exact: case has no closed-form solution");
    std::vector<double> u(grid.unknowns());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = exact(grid.interior_point(k), t, beta);
    return u;
}

ProblemSpec make_custom_problem(const CustomProblem& def, FractionalOrder beta) {
    if (def.dimension != 1 && def.dimension != 2) {
        throw std::invalid_argument("custom problem: dimension must be 1 or 2");
    }
    if (def.domain.size() != static_cast<std::size_t>(def.dimension)) {
        throw std::invalid_argument("custom problem: need one domain interval per dimension");
    }
    const double b = beta.value();
    const auto grid = def.dimension == 1
                          ? DiscretizationGrid::line(def.domain[0], def.n, def.final_time, def.steps)
                          : DiscretizationGrid::plane(def.domain[0], def.domain[1], def.n,
                                                      def.final_time, def.steps);

    auto field = [b](const std::string& text) {
        auto e = Expression::parse(text);
        if (e.depends_on_u()) throw std::invalid_argument("custom problem: mu may not depend on u");
        return std::function<double(Point)>([e, b](Point p) { return e({p.x, p.y, 0.0, 0.0, b}); });
    };
    DiffusionField mu{field(def.mu_x), field(def.dimension == 2 ? def.mu_y : def.mu_x), 0.0};

    std::optional<Reaction> reaction;
    if (!def.reaction.empty()) {
        auto g = Expression::parse(def.reaction);
        auto dg = def.reaction_derivative.empty() ? g.derivative_u()
                                                  : Expression::parse(def.reaction_derivative);
        reaction = Reaction{[g, b](double u) { return g({0, 0, 0, u, b}); },
                            [dg, b](double u) { return dg({0, 0, 0, u, b}); }};
    }
    SourceFunction source;
    if (!def.source.empty()) {
        auto f = Expression::parse(def.source);
        source = [f, b](Point p, double t) { return f({p.x, p.y, t, 0.0, b}); };
    }
    InitialFunction u0;
    if (!def.initial.empty()) {
        auto e = Expression::parse(def.initial);
        u0 = [e, b](Point p) { return e({p.x, p.y, 0.0, 0.0, b}); };
    }
    return ProblemSpec{grid, std::move(mu), std::move(reaction), std::move(source), std::move(u0), beta};
}

ExactSolution custom_exact(const CustomProblem& def) {
    if (def.exact.empty()) return {};
    auto e = Expression::parse(def.exact);
    return [e](Point p, double t, double beta) { return e({p.x, p.y, t, 0.0, beta}); };
}

}  // namespace fracrom
