#pragma once

#include <cstdint>
#include <vector>

namespace finnet {

// Which ends of a 1-D interval carry boundary data.  A first-order problem
// pins only the left end; the right end stays an ordinary unknown.
enum class BoundarySides { Left, Both };

struct Grid1D {
    double a = 0.0;
    double b = 1.0;
    int n = 0;
    double h = 0.0;
    std::vector<double> points;
    std::vector<std::uint32_t> boundary_ids;   // ascending
    std::vector<std::uint32_t> interior_ids;   // ascending, complement
};

// n evenly spaced points on [a, b] with exact endpoints:
// points[i] = a + (i * (b - a)) / (n - 1).
Grid1D uniform_1d(double a, double b, int n, BoundarySides sides);

struct Grid2D {
    double a = 0.0;
    double b = 1.0;
    int nx = 0;
    int ny = 0;
    double hx = 0.0;
    double hy = 0.0;
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<std::uint32_t> boundary_ids;   // ascending by id
    std::vector<std::uint32_t> interior_ids;

    // row-major: x varies fastest
    std::uint32_t idx(int i, int j) const {
        return static_cast<std::uint32_t>(j) * static_cast<std::uint32_t>(nx) +
               static_cast<std::uint32_t>(i);
    }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
};

// Tensor grid on [a, b]^2, full rectangle boundary (outermost ring).
Grid2D uniform_2d(double a, double b, int nx, int ny);

}  // namespace finnet
