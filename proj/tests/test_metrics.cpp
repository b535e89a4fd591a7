#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "finnet/metrics.hpp"

using namespace finnet;

TEST_CASE("mse is the plain mean of squared differences") {
    std::vector<double> a = {1.0, 3.0}, b = {0.0, 1.0};
    CHECK(mse(a, b) == 2.5);
    CHECK(mse(a, a) == 0.0);
    std::vector<double> c = {1.0};
    CHECK_THROWS_AS((void)mse(a, c), std::invalid_argument);
    std::vector<double> e;
    CHECK_THROWS_AS((void)mse(e, e), std::invalid_argument);
}

TEST_CASE("mse is symmetric, nonnegative, and zero only on equal inputs") {
    std::vector<double> a = {0.25, -1.5, 3.0, 0.0};
    std::vector<double> b = {0.3, -1.5, 2.0, -7.0};
    CHECK(mse(a, b) == mse(b, a));   // (a-b)^2 and (b-a)^2 agree bitwise
    CHECK(mse(a, b) > 0.0);
    std::vector<double> c = a;
    CHECK(mse(a, c) == 0.0);
    c[2] += 1e-9;                    // one differing slot is enough
    CHECK(mse(a, c) > 0.0);
}

TEST_CASE("shifting the field by a constant leaves the stats alone") {
    // the difference stencils kill constants, so adding c to the output
    // bias moves every prediction by c but no derivative estimate
    MlpParams p = mlp_init(MlpSpec{1, {8, 8}}, 7);
    MlpParams shifted = p;
    shifted.layers.back().b[0] += 5.0;
    Grid1D g = uniform_1d(0.0, 1.0, 11, BoundarySides::Both);
    for (int order : {1, 2}) {
        DerivativeStats s0 = interior_derivative_stats(p, g, order);
        DerivativeStats s1 = interior_derivative_stats(shifted, g, order);
        CHECK(s1.count == s0.count);
        CHECK(std::fabs(s1.mean - s0.mean) <= 1e-9);
        CHECK(std::fabs(s1.variance - s0.variance) <= 1e-9);
    }

    MlpParams q = mlp_init(MlpSpec{2, {6}}, 11);
    MlpParams qs = q;
    qs.layers.back().b[0] -= 3.0;
    Grid2D g2 = uniform_2d(0.0, 1.0, 6, 6);
    for (int order : {1, 2}) {
        DerivativeStats s0 = interior_derivative_stats(q, g2, order);
        DerivativeStats s1 = interior_derivative_stats(qs, g2, order);
        CHECK(std::fabs(s1.mean - s0.mean) <= 1e-9);
        CHECK(std::fabs(s1.variance - s0.variance) <= 1e-9);
    }
}

TEST_CASE("stats match a manual recompute over the same points") {
    MlpParams p = mlp_init(MlpSpec{1, {8, 8}}, 7);
    Grid1D g = uniform_1d(0.0, 1.0, 11, BoundarySides::Left);

    std::vector<double> u(g.points.size());
    for (int i = 0; i < g.n; ++i) u[i] = mlp_eval(p, {&g.points[i], 1});

    for (int order : {1, 2}) {
        std::vector<double> ests;
        for (std::uint32_t i : g.interior_ids) {
            if (i + 1 >= static_cast<std::uint32_t>(g.n)) continue;  // no right neighbor
            if (order == 1)
                ests.push_back((u[i + 1] - u[i - 1]) / (2.0 * g.h));
            else
                ests.push_back((u[i + 1] - 2.0 * u[i] + u[i - 1]) / (g.h * g.h));
        }
        double m = 0.0;
        for (double e : ests) m += e;
        m /= static_cast<double>(ests.size());
        double v = 0.0;
        for (double e : ests) v += (e - m) * (e - m);
        v /= static_cast<double>(ests.size());

        DerivativeStats s = interior_derivative_stats(p, g, order);
        CHECK(s.order == order);
        CHECK(s.count == 9);  // interior is 1..10; i=10 has no right neighbor
        CHECK(s.mean == doctest::Approx(m).epsilon(1e-15));
        CHECK(s.variance == doctest::Approx(v).epsilon(1e-15));
    }

    Grid1D gb = uniform_1d(0.0, 1.0, 12, BoundarySides::Both);
    CHECK(interior_derivative_stats(p, gb, 1).count == 10);
}

TEST_CASE("near-linear network reports its slope with near-zero spread") {
    MlpParams p;
    p.spec = MlpSpec{1, {1}};
    p.layers = {{1, 1, {1e-4}, {0.0}}, {1, 1, {2.0}, {0.5}}};
    // u(x) = 0.5 + 2 tanh(1e-4 x): slope 2e-4 up to O(1e-8) relative error
    Grid1D g = uniform_1d(0.0, 1.0, 21, BoundarySides::Both);

    DerivativeStats d1 = interior_derivative_stats(p, g, 1);
    CHECK(d1.mean == doctest::Approx(2e-4).epsilon(1e-6));
    CHECK(d1.variance <= 1e-16);

    DerivativeStats d2 = interior_derivative_stats(p, g, 2);
    CHECK(std::fabs(d2.mean) <= 1e-8);
}

TEST_CASE("an all-bias network is flat to the bit") {
    MlpParams p = mlp_init(MlpSpec{2, {4}}, 3);
    for (auto& l : p.layers) {
        for (double& w : l.w) w = 0.0;
        for (double& b : l.b) b = 0.0;
    }
    Grid2D g = uniform_2d(-1.0, 1.0, 6, 5);
    DerivativeStats d1 = interior_derivative_stats(p, g, 1);
    CHECK(d1.count == 24);  // 4*3 interior points, two axes each
    CHECK(d1.mean == 0.0);
    CHECK(d1.variance == 0.0);
    CHECK(interior_derivative_stats(p, g, 2).count == 24);
}

TEST_CASE("2-D stats agree with a manual sweep") {
    MlpParams p = mlp_init(MlpSpec{2, {6}}, 11);
    Grid2D g = uniform_2d(0.0, 1.0, 5, 7);

    std::vector<double> u(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double pt[2] = {g.xs[i], g.ys[j]};
            u[g.idx(i, j)] = mlp_eval(p, pt);
        }
    std::vector<double> ests;
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            ests.push_back((u[g.idx(i + 1, j)] - u[g.idx(i - 1, j)]) / (2.0 * g.hx));
            ests.push_back((u[g.idx(i, j + 1)] - u[g.idx(i, j - 1)]) / (2.0 * g.hy));
        }
    double m = 0.0;
    for (double e : ests) m += e;
    m /= static_cast<double>(ests.size());

    DerivativeStats s = interior_derivative_stats(p, g, 1);
    CHECK(s.count == static_cast<int>(ests.size()));
    CHECK(s.mean == doctest::Approx(m).epsilon(1e-15));
}

TEST_CASE("order must be 1 or 2") {
    MlpParams p = mlp_init(MlpSpec{1, {2}}, 1);
    Grid1D g = uniform_1d(0.0, 1.0, 5, BoundarySides::Both);
    CHECK_THROWS_AS((void)interior_derivative_stats(p, g, 3), std::invalid_argument);
    Grid2D g2 = uniform_2d(0.0, 1.0, 4, 4);
    MlpParams p2 = mlp_init(MlpSpec{2, {2}}, 1);
    CHECK_THROWS_AS((void)interior_derivative_stats(p2, g2, 0), std::invalid_argument);
}
