#pragma once

#include <functional>
#include <span>
#include <string>

#include "finnet/autodiff.hpp"
#include "finnet/mesh.hpp"
#include "finnet/stencil.hpp"

namespace finnet {

// A differential problem with a known closed-form solution.  `boundary_g`
// supplies the boundary data (it agrees with `exact` on the boundary by
// construction); `residual_*` evaluates the equation at one grid point with
// finite differences, choosing its own stencil near the ends.
struct ProblemSpec {
    std::string name;
    int dim = 1;
    double lo = 0.0;
    double hi = 1.0;
    BoundarySides sides = BoundarySides::Both;   // 1-D grids only
    double epsilon = 0.0;                        // eikonal smoothing weight

    std::function<double(std::span<const double>)> exact;
    std::function<double(std::span<const double>)> boundary_g;

    std::function<Var(const Field1D&, int)> residual_1d;
    std::function<Var(const Field2D&, int, int)> residual_2d;

    // Residual from autodiff derivatives instead of stencils (PINN baseline).
    std::function<Var(double, const Jet2&)> residual_jet;
};

// u' + u = x on [0,1], u(0) = 1.  Only the left end is boundary; the
// residual also covers the right end with a backward difference.
ProblemSpec first_order_ode();

// u'' + u = e^{-x} on [0,1], both ends pinned to the exact solution
// (cos x + sin x + e^{-x}) / 2.
ProblemSpec second_order_ode();

// u_xx + u_yy = 0 on [-1,1]^2 with u = x y on the rectangle edge.
ProblemSpec laplace_square();

// |grad u| = 1 + epsilon * lap u on [-1,1]^2, boundary data from the exact
// cone 1 - sqrt(x^2 + y^2).
ProblemSpec eikonal_square(double epsilon = 1e-4);

// Lookup by CLI name: ode1, ode2, laplace, eikonal.  Throws
// std::invalid_argument for anything else.
ProblemSpec problem_by_name(const std::string& name, double epsilon = 1e-4);

}  // namespace finnet
