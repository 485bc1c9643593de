#include "fracrom/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fracrom {

DiscretizationGrid::DiscretizationGrid(std::vector<Interval> axes, std::size_t n, double T,
                                       std::size_t M)
    : axes_(std::move(axes)), n_(n), T_(T), M_(M) {
    if (n_ == 0) throw std::invalid_argument("grid: need at least one interior node per axis");
    if (M_ == 0) throw std::invalid_argument("grid: need at least one time step");
    if (!(T_ > 0.0) || !std::isfinite(T_)) throw std::invalid_argument("grid: final time must be positive");
    for (const auto& ax : axes_) {
        if (!(ax.b > ax.a)) throw std::invalid_argument("grid: empty or reversed interval");
    }
}

DiscretizationGrid DiscretizationGrid::line(Interval x, std::size_t n, double final_time,
                                            std::size_t steps) {
    return DiscretizationGrid({x}, n, final_time, steps);
}

DiscretizationGrid DiscretizationGrid::plane(Interval x, Interval y, std::size_t n,
                                             double final_time, std::size_t steps) {
    return DiscretizationGrid({x, y}, n, final_time, steps);
}

double DiscretizationGrid::h(int d) const {
    const auto& ax = axis(d);
    return (ax.b - ax.a) / static_cast<double>(n_ + 1);
}

double DiscretizationGrid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dimension(); ++d) v *= h(d);
    return v;
}

double DiscretizationGrid::node(int d, std::size_t i) const {
    return axis(d).a + static_cast<double>(i) * h(d);
}

Point DiscretizationGrid::interior_point(std::size_t k) const {
    if (dimension() == 1) return {node(0, k + 1), 0.0};
    return {node(0, k % n_ + 1), node(1, k / n_ + 1)};
}

std::vector<Point> DiscretizationGrid::interior_points() const {
    std::vector<Point> pts(unknowns());
    for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = interior_point(k);
    return pts;
}

DiscretizationGrid DiscretizationGrid::with_time(double final_time, std::size_t steps) const {
    return DiscretizationGrid(axes_, n_, final_time, steps);
}

}  // namespace fracrom
