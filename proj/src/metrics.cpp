#include "finnet/metrics.hpp"

#include <stdexcept>
#include <vector>

namespace finnet {

double mse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("mse: length mismatch");
    if (a.empty()) throw std::invalid_argument("mse: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

namespace {

DerivativeStats pool(std::vector<double> ests, int order) {
    DerivativeStats s;
    s.order = order;
    s.count = static_cast<int>(ests.size());
    if (ests.empty()) return s;
    double m = 0.0;
    for (double e : ests) m += e;
    m /= static_cast<double>(ests.size());
    double v = 0.0;
    for (double e : ests) v += (e - m) * (e - m);
    s.mean = m;
    s.variance = v / static_cast<double>(ests.size());
    return s;
}

void check_order(int order) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("derivative stats: order must be 1 or 2");
}

}  // namespace

DerivativeStats interior_derivative_stats(const MlpParams& p, const Grid1D& g, int order) {
    check_order(order);
    std::vector<double> u(g.points.size());
    for (int i = 0; i < g.n; ++i) u[i] = mlp_eval(p, {&g.points[i], 1});

    std::vector<double> ests;
    for (std::uint32_t i : g.interior_ids) {
        if (i == 0 || i + 1 >= static_cast<std::uint32_t>(g.n)) continue;
        if (order == 1)
            ests.push_back((u[i + 1] - u[i - 1]) / (2.0 * g.h));
        else
            ests.push_back((u[i + 1] - 2.0 * u[i] + u[i - 1]) / (g.h * g.h));
    }
    return pool(std::move(ests), order);
}

DerivativeStats interior_derivative_stats(const MlpParams& p, const Grid2D& g, int order) {
    check_order(order);
    std::vector<double> u(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double pt[2] = {g.xs[i], g.ys[j]};
            u[g.idx(i, j)] = mlp_eval(p, pt);
        }

    std::vector<double> ests;
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            double c = u[g.idx(i, j)];
            double xm = u[g.idx(i - 1, j)], xp = u[g.idx(i + 1, j)];
            double ym = u[g.idx(i, j - 1)], yp = u[g.idx(i, j + 1)];
            if (order == 1) {
                ests.push_back((xp - xm) / (2.0 * g.hx));
                ests.push_back((yp - ym) / (2.0 * g.hy));
            } else {
                ests.push_back((xp - 2.0 * c + xm) / (g.hx * g.hx));
                ests.push_back((yp - 2.0 * c + ym) / (g.hy * g.hy));
            }
        }
    return pool(std::move(ests), order);
}

}  // namespace finnet
