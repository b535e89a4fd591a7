// Acceptance gates for the finite-difference training method.  Each criterion
// prints one [PASS]/[FAIL] line (with indented evidence above it) and the
// process exits nonzero if any hard criterion fails.  Criterion 8 compares
// against the collocation baseline and is informational: it is printed and
// recorded but never gates the exit code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "finnet/run.hpp"

using namespace finnet;
namespace fs = std::filesystem;

namespace {

int hard_failures = 0;

void report(int num, bool pass, bool soft, const std::string& text) {
    std::printf("[%s]%s criterion %d: %s\n", pass ? "PASS" : "FAIL",
                soft ? " (soft)" : "", num, text.c_str());
    std::fflush(stdout);
    if (!pass && !soft) ++hard_failures;
}

std::string g3(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

fs::path out_root() { return fs::temp_directory_path() / "finnet-acceptance"; }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string slurp(const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> loss_column(const fs::path& file) {
    std::vector<double> out;
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);  // epoch,loss,mse
    while (std::getline(in, line)) {
        auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        out.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    return out;
}

// ---- criteria 1-4: the four worked examples at their default settings -------

// default-seed loss trend, checked as an invariant once criteria 1-4 ran
struct Trend { std::string problem; double early, late; };
std::vector<Trend> trends;

void example_criterion(int num, const std::string& problem, double mse_gate,
                       double loss_gate, double wall_cap) {
    int good = 0;
    double max_wall = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RunConfig cfg;
        cfg.problem = problem;
        cfg.seed = seed;
        cfg.out_dir = out_root() / (problem + "-s" + std::to_string(seed));
        RunSummary s = run_solve(cfg);
        bool ok = !s.diverged && s.final_mse <= mse_gate && s.final_loss <= loss_gate;
        if (ok) ++good;
        max_wall = std::max(max_wall, s.wall_seconds);
        std::printf("    %s seed %llu: loss %.6g  mse %.6g  wall %.1fs%s%s\n",
                    problem.c_str(), static_cast<unsigned long long>(seed),
                    s.final_loss, s.final_mse, s.wall_seconds,
                    s.diverged ? "  DIVERGED" : "", ok ? "" : "  (miss)");
        std::fflush(stdout);
        if (seed == 1) {
            std::vector<double> losses = loss_column(s.dir / "history.csv");
            if (losses.size() >= 1000) {
                std::vector<double> head(losses.begin(), losses.begin() + 500);
                std::vector<double> tail(losses.end() - 500, losses.end());
                trends.push_back({problem, median(head), median(tail)});
            }
        }
    }
    bool pass = good >= 3 && max_wall <= wall_cap;
    std::string text = problem + ": " + std::to_string(good) + "/5 seeds at mse<=" +
                       g3(mse_gate);
    if (loss_gate < 1e300) text += " and loss<=" + g3(loss_gate);
    text += "; max wall " + g3(max_wall) + "s";
    if (wall_cap < 1e300) text += " (cap " + g3(wall_cap) + "s)";
    report(num, pass, false, text);
}

void invariant_loss_trend() {
    // well after the warm-up the loss should sit below where it started;
    // compare the median over the last 500 epochs against the first 500
    bool pass = trends.size() == 4;
    std::string detail = "seed-1 loss medians, last 500 epochs over first 500:";
    for (const Trend& t : trends) {
        bool ok = t.late < t.early;
        pass = pass && ok;
        detail += " " + t.problem + "=" + g3(t.late / t.early) + (ok ? "" : "(UP)");
    }
    detail += " (need < 1)";
    std::printf("[%s] invariant: %s\n", pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++hard_failures;
}

// ---- criterion 5: stencil exactness, linearity, convergence orders ----------

bool stencil_exactness(std::string& detail) {
    Grid1D g = uniform_1d(0.0, 1.0, 9, BoundarySides::Both);
    Field1D lin, quad;
    lin.grid = quad.grid = &g;
    for (double x : g.points) {
        lin.v.push_back(Var::constant(3.0 * x - 1.0));
        quad.v.push_back(Var::constant(x * x));
    }
    double worst = 0.0;
    for (int i = 1; i < 8; ++i) {
        worst = std::max(worst, std::fabs(d1_forward(lin, i).value() - 3.0));
        worst = std::max(worst, std::fabs(d1_backward(lin, i).value() - 3.0));
        worst = std::max(worst, std::fabs(d1_central(lin, i).value() - 3.0));
        worst = std::max(worst, std::fabs(d2_central(quad, i).value() - 2.0));
    }

    Grid2D g2 = uniform_2d(-1.0, 1.0, 7, 7);
    Field2D saddle, plane;
    saddle.grid = plane.grid = &g2;
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 7; ++i) {
            double x = g2.xs[i], y = g2.ys[j];
            saddle.v.push_back(Var::constant(x * x - y * y));
            plane.v.push_back(Var::constant(3.0 * x + 4.0 * y));
        }
    for (int j = 1; j < 6; ++j)
        for (int i = 1; i < 6; ++i) {
            worst = std::max(worst, std::fabs(laplacian_2d(saddle, i, j).value()));
            worst = std::max(worst, std::fabs(grad_mag_2d(plane, i, j).value() - 5.0));
        }
    detail += "exactness worst " + g3(worst);
    return worst <= 1e-12;
}

bool stencil_linearity(std::string& detail) {
    Grid1D g = uniform_1d(0.0, 1.0, 9, BoundarySides::Both);
    Field1D f1, f2, mix;
    f1.grid = f2.grid = mix.grid = &g;
    const double a = 2.5, b = -0.75;
    for (double x : g.points) {
        double u = std::sin(3.0 * x), w = std::exp(-x);
        f1.v.push_back(Var::constant(u));
        f2.v.push_back(Var::constant(w));
        mix.v.push_back(Var::constant(a * u + b * w));
    }
    double worst = 0.0;
    for (int i = 1; i < 8; ++i) {
        worst = std::max(worst, std::fabs(d1_central(mix, i).value() -
                                          (a * d1_central(f1, i).value() +
                                           b * d1_central(f2, i).value())));
        worst = std::max(worst, std::fabs(d2_central(mix, i).value() -
                                          (a * d2_central(f1, i).value() +
                                           b * d2_central(f2, i).value())));
    }
    detail += "; linearity worst " + g3(worst);
    return worst <= 1e-12;
}

void criterion_stencils() {
    std::string detail;
    bool pass = stencil_exactness(detail);
    pass = stencil_linearity(detail) && pass;
    detail += "; orders";
    for (const StencilOrder& s : stencil_orders()) {
        bool ok = s.order >= s.min_required;
        pass = pass && ok;
        detail += " " + s.name + "=" + g3(s.order) + (ok ? "" : "(LOW)");
    }
    report(5, pass, false, detail);
}

// ---- criterion 6: loss gradients against numerical differences --------------

double finnet_loss_value(const MlpParams& p, const ProblemSpec& prob, const Grid1D& g) {
    Tape t;
    MlpOnTape net(t, p);
    Field1D f = forward_field(net, g);
    Var lb = boundary_mse(f, prob);
    substitute_boundary(f, prob);
    return (lb + residual_mse(f, prob)).value();
}

MlpParams finnet_loss_grads(const MlpParams& p, const ProblemSpec& prob, const Grid1D& g) {
    Tape t;
    MlpOnTape net(t, p);
    Field1D f = forward_field(net, g);
    Var lb = boundary_mse(f, prob);
    substitute_boundary(f, prob);
    Var loss = lb + residual_mse(f, prob);
    return net.grads(t.gradient(loss));
}

double pinn_loss_value(const MlpParams& p, const ProblemSpec& prob, const Grid1D& g) {
    Tape t;
    MlpOnTape net(t, p);
    Var lb = Var::constant(0.0);
    for (std::uint32_t id : g.boundary_ids) {
        double gx = prob.boundary_g({&g.points[id], 1});
        lb = lb + square(net.forward({&g.points[id], 1}) - gx);
    }
    lb = lb * (1.0 / static_cast<double>(g.boundary_ids.size()));
    Var lr = Var::constant(0.0);
    for (std::uint32_t id : g.interior_ids) {
        double x = g.points[id];
        lr = lr + square(prob.residual_jet(x, net.forward_jet({&x, 1}, 0)));
    }
    lr = lr * (1.0 / static_cast<double>(g.interior_ids.size()));
    return (lb + lr).value();
}

MlpParams pinn_loss_grads(const MlpParams& p, const ProblemSpec& prob, const Grid1D& g) {
    Tape t;
    MlpOnTape net(t, p);
    Var lb = Var::constant(0.0);
    for (std::uint32_t id : g.boundary_ids) {
        double gx = prob.boundary_g({&g.points[id], 1});
        lb = lb + square(net.forward({&g.points[id], 1}) - gx);
    }
    lb = lb * (1.0 / static_cast<double>(g.boundary_ids.size()));
    Var lr = Var::constant(0.0);
    for (std::uint32_t id : g.interior_ids) {
        double x = g.points[id];
        lr = lr + square(prob.residual_jet(x, net.forward_jet({&x, 1}, 0)));
    }
    lr = lr * (1.0 / static_cast<double>(g.interior_ids.size()));
    Var loss = lb + lr;
    return net.grads(t.gradient(loss));
}

template <class LossFn>
double max_grad_rel_err(MlpParams p, const MlpParams& analytic, LossFn loss) {
    double worst = 0.0;
    for (std::size_t l = 0; l < p.layers.size(); ++l) {
        auto probe = [&](std::vector<double>& theta, const std::vector<double>& want) {
            for (std::size_t k = 0; k < theta.size(); ++k) {
                double keep = theta[k];
                double h = 1e-6 * std::max(1.0, std::fabs(keep));
                theta[k] = keep + h;
                double up = loss(p);
                theta[k] = keep - h;
                double dn = loss(p);
                theta[k] = keep;
                double numeric = (up - dn) / (2.0 * h);
                double a = want[k];
                double rel = std::fabs(a - numeric) /
                             std::max({std::fabs(a), std::fabs(numeric), 1e-8});
                worst = std::max(worst, rel);
            }
        };
        probe(p.layers[l].w, analytic.layers[l].w);
        probe(p.layers[l].b, analytic.layers[l].b);
    }
    return worst;
}

void criterion_gradients() {
    ProblemSpec prob = second_order_ode();
    Grid1D grid = uniform_1d(prob.lo, prob.hi, 11, prob.sides);
    MlpParams p = mlp_init(MlpSpec{1, {4}}, 42);

    MlpParams ga = finnet_loss_grads(p, prob, grid);
    double worst_fd = max_grad_rel_err(
        p, ga, [&](const MlpParams& q) { return finnet_loss_value(q, prob, grid); });

    MlpParams gp = pinn_loss_grads(p, prob, grid);
    double worst_pinn = max_grad_rel_err(
        p, gp, [&](const MlpParams& q) { return pinn_loss_value(q, prob, grid); });

    // jet derivatives against numerical differences of the plain forward
    double worst_jet = 0.0;
    Tape t;
    MlpOnTape net(t, p);
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        Jet2 j = net.forward_jet({&x, 1}, 0);
        double h1 = 1e-6, h2 = 1e-5;
        double xp = x + h1, xm = x - h1;
        double du = (mlp_eval(p, {&xp, 1}) - mlp_eval(p, {&xm, 1})) / (2.0 * h1);
        xp = x + h2;
        xm = x - h2;
        double d2u = (mlp_eval(p, {&xp, 1}) - 2.0 * mlp_eval(p, {&x, 1}) +
                      mlp_eval(p, {&xm, 1})) / (h2 * h2);
        worst_jet = std::max(worst_jet, std::fabs(j.du.value() - du) /
                                            std::max(std::fabs(du), 1e-8));
        worst_jet = std::max(worst_jet, std::fabs(j.d2u.value() - d2u) /
                                            std::max(std::fabs(d2u), 1e-8));
    }

    bool pass = worst_fd < 1e-4 && worst_pinn < 1e-4 && worst_jet < 1e-4;
    report(6, pass, false,
           "all 13 weight/bias gradients vs central differences: fd-loss " +
               g3(worst_fd) + ", collocation-loss " + g3(worst_pinn) +
               ", jets " + g3(worst_jet) + " (need < 1e-4)");
}

// ---- criterion 7: boundary substitution invariants ---------------------------

void criterion_substitution() {
    ProblemSpec prob = second_order_ode();
    Grid1D grid = uniform_1d(prob.lo, prob.hi, 9, prob.sides);
    MlpParams p = mlp_init(MlpSpec{1, {6}}, 3);
    bool pass = true;
    std::string detail;

    Tape ta;
    MlpOnTape na(ta, p);
    Field1D fa = forward_field(na, grid);
    substitute_boundary(fa, prob);
    double g0 = prob.boundary_g({&grid.points[0], 1});
    double g8 = prob.boundary_g({&grid.points[8], 1});
    bool exact_bounds = fa.v[0].is_const() && fa.v[8].is_const() &&
                        fa.v[0].value() == g0 && fa.v[8].value() == g8;
    pass = pass && exact_bounds;
    detail += std::string("boundary==g(B) ") + (exact_bounds ? "exact" : "WRONG");

    Var ra = residual_mse(fa, prob);
    MlpParams ga = na.grads(ta.gradient(ra));

    Tape tb;
    MlpOnTape nb(tb, p);
    Field1D fb = forward_field(nb, grid);
    fb.v[0] = tb.var(1e6);
    fb.v[8] = tb.var(-1e6) * 3.0;
    substitute_boundary(fb, prob);
    Var rb = residual_mse(fb, prob);
    bool invariant = rb.value() == ra.value();
    MlpParams gb = nb.grads(tb.gradient(rb));
    for (std::size_t l = 0; l < ga.layers.size(); ++l) {
        for (std::size_t k = 0; k < ga.layers[l].w.size(); ++k)
            invariant = invariant && ga.layers[l].w[k] == gb.layers[l].w[k];
        for (std::size_t k = 0; k < ga.layers[l].b.size(); ++k)
            invariant = invariant && ga.layers[l].b[k] == gb.layers[l].b[k];
    }
    pass = pass && invariant;
    detail += std::string("; residual+grads boundary-invariant ") +
              (invariant ? "bitwise" : "NO");

    // exact solutions as fixed points of the discrete loss
    auto fixed_point = [](const ProblemSpec& pr, int n, double bound, double& got) {
        if (pr.dim == 1) {
            Grid1D g = uniform_1d(pr.lo, pr.hi, n, pr.sides);
            Field1D f;
            f.grid = &g;
            for (double x : g.points) f.v.push_back(Var::constant(pr.exact({&x, 1})));
            got = residual_mse(f, pr).value();
            return boundary_mse(f, pr).value() == 0.0 && got <= bound;
        }
        Grid2D g = uniform_2d(pr.lo, pr.hi, n, n);
        Field2D f;
        f.grid = &g;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double pt[2] = {g.xs[i], g.ys[j]};
                f.v.push_back(Var::constant(pr.exact(pt)));
            }
        got = residual_mse(f, pr).value();
        return boundary_mse(f, pr).value() == 0.0 && got <= bound;
    };
    double l1, l2, ll;
    bool fp1 = fixed_point(first_order_ode(), 101, 3e-7, l1);    // one-sided end term
    bool fp2 = fixed_point(second_order_ode(), 101, 1.5e-10, l2);
    bool fpl = fixed_point(laplace_square(), 32, 1e-24, ll);     // zero up to rounding
    pass = pass && fp1 && fp2 && fpl;
    detail += "; fixed-point losses " + g3(l1) + "/" + g3(l2) + "/" + g3(ll) +
              (fp1 && fp2 && fpl ? "" : " OUT OF BOUNDS");

    report(7, pass, false, detail);
}

// ---- criterion 8 (soft): comparison against the collocation baseline --------

void criterion_compare() {
    bool pass = true;
    std::string detail;
    for (const char* problem : {"ode1", "ode2"}) {
        auto rows = run_compare(problem, std::vector<std::uint64_t>{1, 2, 3, 4, 5},
                                out_root() / (std::string("compare-") + problem));
        std::printf("    %-6s %-8s %-6s %-14s %-14s %-14s %s\n", problem, "method",
                    "seed", "final_loss", "final_mse", "d1_variance", "flat");
        std::vector<double> mf, mp;
        int flat_flags = 0;
        for (const CompareRow& r : rows) {
            std::printf("    %-6s %-8s %-6llu %-14.6g %-14.6g %-14.6g %s%s\n", "",
                        r.method.c_str(), static_cast<unsigned long long>(r.seed),
                        r.final_loss, r.final_mse, r.d1.variance,
                        r.flat ? "yes" : "no", r.diverged ? " (diverged)" : "");
            (r.method == "finnet" ? mf : mp).push_back(r.final_mse);
            if (r.flat) ++flat_flags;
        }
        double medf = median(mf), medp = median(mp);
        bool won = medf < medp;
        pass = pass && won;
        std::printf("    %s medians: finnet %.6g vs pinn %.6g; %d flat seed(s)\n",
                    problem, medf, medp, flat_flags);
        std::fflush(stdout);
        detail += std::string(detail.empty() ? "" : "; ") + problem +
                  " median mse finnet " + g3(medf) + " vs pinn " + g3(medp) +
                  (won ? "" : " (baseline ahead)");
    }
    if (!pass)
        std::printf("    note: a converged collocation run can beat the "
                    "finite-difference truncation floor; the flat-line failure "
                    "mode is what the table is flagging, not raw mse\n");
    report(8, pass, true, detail);
}

// ---- criterion 9: byte determinism -------------------------------------------

void criterion_determinism() {
    RunConfig cfg;
    cfg.problem = "ode1";
    cfg.seed = 1;
    cfg.out_dir = out_root() / "det-a";
    run_solve(cfg);
    cfg.out_dir = out_root() / "det-b";
    run_solve(cfg);
    bool hist = slurp(out_root() / "det-a" / "history.csv") ==
                slurp(out_root() / "det-b" / "history.csv");
    bool ckpt = slurp(out_root() / "det-a" / "params.ckpt") ==
                slurp(out_root() / "det-b" / "params.ckpt");
    report(9, hist && ckpt,
           false, std::string("identical config+seed: history.csv ") +
                      (hist ? "byte-identical" : "DIFFERS") + ", params.ckpt " +
                      (ckpt ? "byte-identical" : "DIFFERS"));
}

}  // namespace

int main() {
    fs::remove_all(out_root());
    fs::create_directories(out_root());
    std::printf("artifacts under %s\n", out_root().string().c_str());

    example_criterion(1, "ode1", 1e-5, 1e300, 60.0);
    example_criterion(2, "ode2", 1e-3, 5.0, 1e300);
    example_criterion(3, "laplace", 5e-3, 1e300, 600.0);
    example_criterion(4, "eikonal", 1e-3, 1e300, 900.0);
    invariant_loss_trend();
    criterion_stencils();
    criterion_gradients();
    criterion_substitution();
    criterion_compare();
    criterion_determinism();

    if (hard_failures)
        std::printf("acceptance: %d hard criterion(s) failed\n", hard_failures);
    else
        std::printf("acceptance: all hard criteria passed\n");
    return hard_failures ? 1 : 0;
}
