#include "finnet/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace finnet {

ProblemSpec first_order_ode() {
    ProblemSpec p;
    p.name = "ode1";
    p.dim = 1;
    p.lo = 0.0;
    p.hi = 1.0;
    p.sides = BoundarySides::Left;
    p.exact = [](std::span<const double> x) {
        return x[0] - 1.0 + 2.0 * std::exp(-x[0]);
    };
    p.boundary_g = p.exact;
    p.residual_1d = [](const Field1D& f, int i) {
        Var du = (i == f.grid->n - 1) ? d1_backward(f, i) : d1_central(f, i);
        return du + f.v[i] - f.grid->points[i];
    };
    p.residual_jet = [](double x, const Jet2& j) { return j.du + j.u - x; };
    return p;
}

ProblemSpec second_order_ode() {
    ProblemSpec p;
    p.name = "ode2";
    p.dim = 1;
    p.lo = 0.0;
    p.hi = 1.0;
    p.sides = BoundarySides::Both;
    p.exact = [](std::span<const double> x) {
        return 0.5 * (std::cos(x[0]) + std::sin(x[0]) + std::exp(-x[0]));
    };
    p.boundary_g = p.exact;
    p.residual_1d = [](const Field1D& f, int i) {
        return d2_central(f, i) + f.v[i] - std::exp(-f.grid->points[i]);
    };
    p.residual_jet = [](double x, const Jet2& j) {
        return j.d2u + j.u - std::exp(-x);
    };
    return p;
}

ProblemSpec laplace_square() {
    ProblemSpec p;
    p.name = "laplace";
    p.dim = 2;
    p.lo = -1.0;
    p.hi = 1.0;
    p.exact = [](std::span<const double> x) { return x[0] * x[1]; };
    p.boundary_g = p.exact;
    p.residual_2d = [](const Field2D& f, int i, int j) {
        return laplacian_2d(f, i, j);
    };
    return p;
}

ProblemSpec eikonal_square(double epsilon) {
    ProblemSpec p;
    p.name = "eikonal";
    p.dim = 2;
    p.lo = -1.0;
    p.hi = 1.0;
    p.epsilon = epsilon;
    p.exact = [](std::span<const double> x) {
        return 1.0 - std::sqrt(x[0] * x[0] + x[1] * x[1]);
    };
    p.boundary_g = p.exact;
    p.residual_2d = [epsilon](const Field2D& f, int i, int j) {
        return grad_mag_2d(f, i, j) - 1.0 - epsilon * laplacian_2d(f, i, j);
    };
    return p;
}

ProblemSpec problem_by_name(const std::string& name, double epsilon) {
    if (name == "ode1") return first_order_ode();
    if (name == "ode2") return second_order_ode();
    if (name == "laplace") return laplace_square();
    if (name == "eikonal") return eikonal_square(epsilon);
    throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace finnet
