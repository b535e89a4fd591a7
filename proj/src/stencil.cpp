#include "finnet/stencil.hpp"

#include <stdexcept>

namespace finnet {

namespace {

void need_1d(const Field1D& f, int lo, int hi) {
    if (f.grid == nullptr) throw std::invalid_argument("stencil: field has no grid");
    if (lo < 0 || hi >= f.grid->n)
        throw std::out_of_range("stencil: point too close to the grid edge");
}

void need_2d(const Field2D& f, int i, int j) {
    if (f.grid == nullptr) throw std::invalid_argument("stencil: field has no grid");
    if (i < 1 || i > f.grid->nx - 2 || j < 1 || j > f.grid->ny - 2)
        throw std::out_of_range("stencil: (i, j) is not an interior point");
}

}  // namespace

Var d1_forward(const Field1D& f, int i) {
    need_1d(f, i, i + 1);
    double c = 1.0 / f.grid->h;
    return (f.v[i + 1] - f.v[i]) * c;
}

Var d1_backward(const Field1D& f, int i) {
    need_1d(f, i - 1, i);
    double c = 1.0 / f.grid->h;
    return (f.v[i] - f.v[i - 1]) * c;
}

Var d1_central(const Field1D& f, int i) {
    need_1d(f, i - 1, i + 1);
    double c = 1.0 / (2.0 * f.grid->h);
    return (f.v[i + 1] - f.v[i - 1]) * c;
}

Var d2_central(const Field1D& f, int i) {
    need_1d(f, i - 1, i + 1);
    double c = 1.0 / (f.grid->h * f.grid->h);
    return (f.v[i + 1] - 2.0 * f.v[i] + f.v[i - 1]) * c;
}

Var laplacian_2d(const Field2D& f, int i, int j) {
    need_2d(f, i, j);
    double cx = 1.0 / (f.grid->hx * f.grid->hx);
    double cy = 1.0 / (f.grid->hy * f.grid->hy);
    return (f.at(i + 1, j) - 2.0 * f.at(i, j) + f.at(i - 1, j)) * cx +
           (f.at(i, j + 1) - 2.0 * f.at(i, j) + f.at(i, j - 1)) * cy;
}

Var grad_mag_2d(const Field2D& f, int i, int j) {
    need_2d(f, i, j);
    Var dx = (f.at(i + 1, j) - f.at(i - 1, j)) * (1.0 / (2.0 * f.grid->hx));
    Var dy = (f.at(i, j + 1) - f.at(i, j - 1)) * (1.0 / (2.0 * f.grid->hy));
    return hypot_smooth(dx, dy);
}

}  // namespace finnet
