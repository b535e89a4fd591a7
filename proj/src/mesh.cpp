#include "finnet/mesh.hpp"

#include <stdexcept>

namespace finnet {

namespace {

std::vector<double> spaced(double a, double b, int n) {
    if (n < 3) throw std::invalid_argument("grid: need at least 3 points per axis");
    if (!(a < b)) throw std::invalid_argument("grid: need a < b");
    std::vector<double> pts(n);
    for (int i = 0; i < n; ++i)
        pts[i] = a + (static_cast<double>(i) * (b - a)) / (n - 1);
    pts[0] = a;
    pts[n - 1] = b;
    return pts;
}

}  // namespace

Grid1D uniform_1d(double a, double b, int n, BoundarySides sides) {
    Grid1D g;
    g.a = a;
    g.b = b;
    g.n = n;
    g.points = spaced(a, b, n);
    g.h = (b - a) / (n - 1);

    g.boundary_ids.push_back(0);
    if (sides == BoundarySides::Both)
        g.boundary_ids.push_back(static_cast<std::uint32_t>(n - 1));
    std::uint32_t next_b = 0;
    for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(n); ++i) {
        if (next_b < g.boundary_ids.size() && g.boundary_ids[next_b] == i)
            ++next_b;
        else
            g.interior_ids.push_back(i);
    }
    return g;
}

Grid2D uniform_2d(double a, double b, int nx, int ny) {
    Grid2D g;
    g.a = a;
    g.b = b;
    g.nx = nx;
    g.ny = ny;
    g.xs = spaced(a, b, nx);
    g.ys = spaced(a, b, ny);
    g.hx = (b - a) / (nx - 1);
    g.hy = (b - a) / (ny - 1);

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            bool edge = (i == 0 || i == nx - 1 || j == 0 || j == ny - 1);
            (edge ? g.boundary_ids : g.interior_ids).push_back(g.idx(i, j));
        }
    return g;
}

}  // namespace finnet
