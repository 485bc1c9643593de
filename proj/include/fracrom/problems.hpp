#pragma once

// Benchmark catalog. Every case is a ProblemSpec factory in beta, optionally
// with a closed-form solution to measure errors against.

#include "fracrom/problem.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracrom {

/// Grid overrides; unset fields keep the case default.
struct CaseGrid {
    std::optional<std::size_t> n;       ///< interior nodes per axis
    std::optional<double> final_time;
    std::optional<std::size_t> steps;
};

/// u = t^{1+beta} sin(pi x), mu = 1 + x, g = 0 on [0, 1].
ProblemSpec test1(FractionalOrder beta, const CaseGrid& grid = {});
double test1_exact(Point p, double t, double beta);

/// u = 4 t^2 x(1-x) exp(-50 (x-1/2)^2), mu = 0.05, g = sin u on [0, 1].
ProblemSpec test2(FractionalOrder beta, const CaseGrid& grid = {});
double test2_exact(Point p, double t, double beta);

/// mu = 1, f = 0, g = 0, u0 = (x-1)(x+1)(y-1)(y+1) on [-1, 1]^2. No closed form.
ProblemSpec example3(FractionalOrder beta, const CaseGrid& grid = {});

/// u = (t^{2+beta} + t^2 + 1) sin(2 pi x) sin(pi y), mu = diag(1, 2), g = u^3 on [0, 1]^2.
ProblemSpec example4(FractionalOrder beta, const CaseGrid& grid = {});
double example4_exact(Point p, double t, double beta);

using ExactSolution = std::function<double(Point, double t, double beta)>;

struct BenchmarkCase {
    std::string id;
    std::string summary;
    int dimension;
    std::function<ProblemSpec(FractionalOrder, const CaseGrid&)> make;
    ExactSolution exact;  ///< empty when no closed form is known
    std::array<double, 4> samples;
    std::size_t pod_dim;   ///< default r
    std::size_t deim_dim;  ///< default s; 0 when the problem has no forcing or reaction
};

/// test1, test2, ex1, ex2, ex3, ex4 (ex1/ex2 reuse the test1/test2 setups).
std::span<const BenchmarkCase> benchmark_cases();

/// Throws std::invalid_argument for an unknown id.
const BenchmarkCase& benchmark_case(std::string_view id);

/// Exact solution sampled on the interior nodes.
std::vector<double> sample_exact(const ExactSolution& exact, const DiscretizationGrid& grid,
                                 double t, double beta);

/// User-defined problem from expressions (see expression.hpp for the grammar).
struct CustomProblem {
    int dimension = 1;
    std::vector<Interval> domain;   ///< one interval per axis
    std::size_t n = 63;
    double final_time = 1.0;
    std::size_t steps = 64;
    std::string mu_x = "1";
    std::string mu_y = "1";         ///< 2D only
    std::string reaction;           ///< g(u); empty means linear
    std::string reaction_derivative;  ///< empty means derive symbolically
    std::string source;             ///< f(x, y, t, beta); empty means 0
    std::string initial;            ///< u0(x, y, beta); empty means 0
    std::string exact;              ///< optional u(x, y, t, beta)
};

ProblemSpec make_custom_problem(const CustomProblem& def, FractionalOrder beta);
ExactSolution custom_exact(const CustomProblem& def);

}  // namespace fracrom
