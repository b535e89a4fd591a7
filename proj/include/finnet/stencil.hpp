#pragma once

#include <vector>

#include "finnet/autodiff.hpp"
#include "finnet/mesh.hpp"

namespace finnet {

// Grid values as tape nodes (or constants, after boundary substitution).
struct Field1D {
    const Grid1D* grid = nullptr;
    std::vector<Var> v;
};

struct Field2D {
    const Grid2D* grid = nullptr;
    std::vector<Var> v;

    Var at(int i, int j) const { return v[grid->idx(i, j)]; }
};

// First derivative at point i.  Each throws std::out_of_range when the
// stencil would reach past the grid.
Var d1_forward(const Field1D& f, int i);    // (v[i+1] - v[i]) / h
Var d1_backward(const Field1D& f, int i);   // (v[i] - v[i-1]) / h
Var d1_central(const Field1D& f, int i);    // (v[i+1] - v[i-1]) / (2h)

// Second derivative, central: (v[i+1] - 2 v[i] + v[i-1]) / h^2.
Var d2_central(const Field1D& f, int i);

// Five-point Laplacian at interior point (i, j).
Var laplacian_2d(const Field2D& f, int i, int j);

// Norm of the central-difference gradient, smoothed near zero:
// sqrt(dx^2 + dy^2 + 1e-12).
Var grad_mag_2d(const Field2D& f, int i, int j);

}  // namespace finnet
