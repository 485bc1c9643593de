#pragma once

#include <cstddef>
#include <vector>

namespace fracrom {

struct Interval {
    double a;
    double b;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Uniform tensor grid (1D or 2D) with N interior nodes per axis, plus a
/// uniform time grid t_m = m * dt, m = 0..M. Only interior nodes carry
/// unknowns; the Dirichlet boundary values are implicit.
///
/// Interior unknowns are ordered lexicographically with x fastest:
/// k = i + N * j for node (x_{i+1}, y_{j+1}).
class DiscretizationGrid {
public:
    static DiscretizationGrid line(Interval x, std::size_t n, double final_time, std::size_t steps);
    static DiscretizationGrid plane(Interval x, Interval y, std::size_t n, double final_time,
                                    std::size_t steps);

    int dimension() const noexcept { return static_cast<int>(axes_.size()); }
    std::size_t nodes_per_axis() const noexcept { return n_; }
    std::size_t unknowns() const noexcept { return dimension() == 1 ? n_ : n_ * n_; }

    const Interval& axis(int d) const { return axes_.at(static_cast<std::size_t>(d)); }
    double h(int d = 0) const;
    /// Product of the mesh sizes: the weight of one node in the discrete L2 norm.
    double cell_volume() const;
    /// Boundary-inclusive node coordinate a + i h, i = 0..N+1.
    double node(int d, std::size_t i) const;

    double final_time() const noexcept { return T_; }
    std::size_t steps() const noexcept { return M_; }
    double dt() const noexcept { return T_ / static_cast<double>(M_); }
    double time(std::size_t m) const noexcept {
        return m == M_ ? T_ : static_cast<double>(m) * dt();
    }

    Point interior_point(std::size_t k) const;
    std::vector<Point> interior_points() const;

    /// Same space grid, different time horizon.
    DiscretizationGrid with_time(double final_time, std::size_t steps) const;

private:
    DiscretizationGrid(std::vector<Interval> axes, std::size_t n, double T, std::size_t M);

    std::vector<Interval> axes_;
    std::size_t n_;
    double T_;
    std::size_t M_;
};

}  // namespace fracrom
