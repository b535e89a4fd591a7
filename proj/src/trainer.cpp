#include "finnet/trainer.hpp"

#include <cmath>
#include <stdexcept>

#include "finnet/metrics.hpp"
#include "finnet/optimizer.hpp"

namespace finnet {

namespace {

void point_of(const Grid1D& g, std::uint32_t id, double* pt) { pt[0] = g.points[id]; }

void point_of(const Grid2D& g, std::uint32_t id, double* pt) {
    pt[0] = g.xs[id % static_cast<std::uint32_t>(g.nx)];
    pt[1] = g.ys[id / static_cast<std::uint32_t>(g.nx)];
}

template <class Grid>
std::vector<double> exact_values_impl(const ProblemSpec& prob, const Grid& g) {
    std::size_t n = g.interior_ids.size() + g.boundary_ids.size();
    std::vector<double> out(n);
    double pt[2];
    for (std::uint32_t id = 0; id < n; ++id) {
        point_of(g, id, pt);
        out[id] = prob.exact({pt, static_cast<std::size_t>(prob.dim)});
    }
    return out;
}

template <class Field, class Grid>
Field forward_field_impl(const MlpOnTape& net, const Grid& g) {
    Field f;
    f.grid = &g;
    std::size_t n = g.interior_ids.size() + g.boundary_ids.size();
    f.v.reserve(n);
    double pt[2];
    int dim = net.spec().input_dim;
    for (std::uint32_t id = 0; id < n; ++id) {
        point_of(g, id, pt);
        f.v.push_back(net.forward({pt, static_cast<std::size_t>(dim)}));
    }
    return f;
}

template <class Field>
Var boundary_mse_impl(const Field& f, const ProblemSpec& p) {
    const auto& ids = f.grid->boundary_ids;
    if (ids.empty()) throw std::invalid_argument("boundary_mse: no boundary points");
    Var acc = Var::constant(0.0);
    double pt[2];
    for (std::uint32_t id : ids) {
        point_of(*f.grid, id, pt);
        double g = p.boundary_g({pt, static_cast<std::size_t>(p.dim)});
        acc = acc + square(f.v[id] - g);
    }
    return acc * (1.0 / static_cast<double>(ids.size()));
}

template <class Field>
void substitute_boundary_impl(Field& f, const ProblemSpec& p) {
    double pt[2];
    for (std::uint32_t id : f.grid->boundary_ids) {
        point_of(*f.grid, id, pt);
        f.v[id] = Var::constant(p.boundary_g({pt, static_cast<std::size_t>(p.dim)}));
    }
}

}  // namespace

std::vector<double> exact_values(const ProblemSpec& prob, const Grid1D& g) {
    return exact_values_impl(prob, g);
}
std::vector<double> exact_values(const ProblemSpec& prob, const Grid2D& g) {
    return exact_values_impl(prob, g);
}

Field1D forward_field(const MlpOnTape& net, const Grid1D& g) {
    return forward_field_impl<Field1D>(net, g);
}
Field2D forward_field(const MlpOnTape& net, const Grid2D& g) {
    return forward_field_impl<Field2D>(net, g);
}

Var boundary_mse(const Field1D& f, const ProblemSpec& p) { return boundary_mse_impl(f, p); }
Var boundary_mse(const Field2D& f, const ProblemSpec& p) { return boundary_mse_impl(f, p); }

void substitute_boundary(Field1D& f, const ProblemSpec& p) { substitute_boundary_impl(f, p); }
void substitute_boundary(Field2D& f, const ProblemSpec& p) { substitute_boundary_impl(f, p); }

Var residual_mse(const Field1D& f, const ProblemSpec& p) {
    if (!p.residual_1d) throw std::invalid_argument("residual_mse: not a 1-D problem");
    const auto& ids = f.grid->interior_ids;
    Var acc = Var::constant(0.0);
    for (std::uint32_t id : ids)
        acc = acc + square(p.residual_1d(f, static_cast<int>(id)));
    return acc * (1.0 / static_cast<double>(ids.size()));
}

Var residual_mse(const Field2D& f, const ProblemSpec& p) {
    if (!p.residual_2d) throw std::invalid_argument("residual_mse: not a 2-D problem");
    const auto& ids = f.grid->interior_ids;
    Var acc = Var::constant(0.0);
    std::uint32_t nx = static_cast<std::uint32_t>(f.grid->nx);
    for (std::uint32_t id : ids) {
        int i = static_cast<int>(id % nx);
        int j = static_cast<int>(id / nx);
        acc = acc + square(p.residual_2d(f, i, j));
    }
    return acc * (1.0 / static_cast<double>(ids.size()));
}

namespace {

template <class Grid>
TrainResult train_finnet_impl(const ProblemSpec& prob, const Grid& grid,
                              const MlpSpec& netspec, const TrainConfig& cfg) {
    if (netspec.input_dim != prob.dim)
        throw std::invalid_argument("train: network input_dim does not match problem");

    MlpParams params = mlp_init(netspec, cfg.seed);
    AdamConfig ac;
    ac.lr = cfg.lr;
    Adam adam(ac, params);
    std::vector<double> exact = exact_values_impl(prob, grid);

    TrainResult out;
    out.history.epochs.reserve(cfg.epochs);
    Tape tape;
    std::vector<double> u(exact.size());

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        tape.reset();
        MlpOnTape net(tape, params);
        auto field = forward_field_impl<
            std::conditional_t<std::is_same_v<Grid, Grid1D>, Field1D, Field2D>>(net, grid);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = field.v[i].value();

        Var lb = boundary_mse_impl(field, prob);
        substitute_boundary_impl(field, prob);
        Var lr = residual_mse(field, prob);
        Var loss = lb + lr;

        out.history.epochs.push_back({loss.value(), mse(u, exact)});
        if (!std::isfinite(loss.value()) || loss.value() > kDivergenceCap) {
            out.history.diverged_at = epoch;
            break;
        }
        adam.step(params, net.grads(tape.gradient(loss)));
    }
    out.params = std::move(params);
    return out;
}

}  // namespace

TrainResult train_finnet(const ProblemSpec& prob, const Grid1D& grid,
                         const MlpSpec& net, const TrainConfig& cfg) {
    return train_finnet_impl(prob, grid, net, cfg);
}

TrainResult train_finnet(const ProblemSpec& prob, const Grid2D& grid,
                         const MlpSpec& net, const TrainConfig& cfg) {
    return train_finnet_impl(prob, grid, net, cfg);
}

TrainResult train_pinn(const ProblemSpec& prob, const Grid1D& grid,
                       const MlpSpec& netspec, const TrainConfig& cfg) {
    if (!prob.residual_jet)
        throw std::invalid_argument("train_pinn: problem has no autodiff residual");
    if (netspec.input_dim != 1)
        throw std::invalid_argument("train_pinn: 1-D problems only");

    MlpParams params = mlp_init(netspec, cfg.seed);
    AdamConfig ac;
    ac.lr = cfg.lr;
    Adam adam(ac, params);
    std::vector<double> exact = exact_values(prob, grid);

    TrainResult out;
    out.history.epochs.reserve(cfg.epochs);
    Tape tape;
    std::vector<double> u(exact.size());

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        tape.reset();
        MlpOnTape net(tape, params);

        Var lb = Var::constant(0.0);
        for (std::uint32_t id : grid.boundary_ids) {
            Var ub = net.forward({&grid.points[id], 1});
            u[id] = ub.value();
            double g = prob.boundary_g({&grid.points[id], 1});
            lb = lb + square(ub - g);
        }
        lb = lb * (1.0 / static_cast<double>(grid.boundary_ids.size()));

        Var lr = Var::constant(0.0);
        for (std::uint32_t id : grid.interior_ids) {
            double x = grid.points[id];
            Jet2 j = net.forward_jet({&x, 1}, 0);
            u[id] = j.u.value();
            lr = lr + square(prob.residual_jet(x, j));
        }
        lr = lr * (1.0 / static_cast<double>(grid.interior_ids.size()));
        Var loss = lb + lr;

        out.history.epochs.push_back({loss.value(), mse(u, exact)});
        if (!std::isfinite(loss.value()) || loss.value() > kDivergenceCap) {
            out.history.diverged_at = epoch;
            break;
        }
        adam.step(params, net.grads(tape.gradient(loss)));
    }
    out.params = std::move(params);
    return out;
}

std::vector<double> predict_grid(const MlpParams& p, const Grid1D& g) {
    std::vector<double> out(g.points.size());
    for (int i = 0; i < g.n; ++i) out[i] = mlp_eval(p, {&g.points[i], 1});
    return out;
}

std::vector<double> predict_grid(const MlpParams& p, const Grid2D& g) {
    std::vector<double> out(g.size());
    double pt[2];
    for (std::uint32_t id = 0; id < g.size(); ++id) {
        point_of(g, id, pt);
        out[id] = mlp_eval(p, pt);
    }
    return out;
}

double evaluate_mse(const MlpParams& p, const ProblemSpec& prob, const Grid1D& g) {
    auto pred = predict_grid(p, g);
    auto ex = exact_values(prob, g);
    return mse(pred, ex);
}

double evaluate_mse(const MlpParams& p, const ProblemSpec& prob, const Grid2D& g) {
    auto pred = predict_grid(p, g);
    auto ex = exact_values(prob, g);
    return mse(pred, ex);
}

}  // namespace finnet
