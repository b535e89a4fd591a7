#include "finnet/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

namespace finnet {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- config -----------------------------------------------------------------

std::vector<int> parse_hidden(const std::string& text) {
    std::vector<int> widths;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        std::size_t used = 0;
        int w = 0;
        try {
            w = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad layer width '" + item + "'");
        }
        if (used != item.size() || w < 1)
            throw ConfigError("bad layer width '" + item + "'");
        widths.push_back(w);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (widths.empty()) throw ConfigError("empty layer list");
    return widths;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& v) {
    std::size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
}

double parse_real(const std::string& v) {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
}

std::uint64_t parse_seed(const std::string& v) {
    std::size_t used = 0;
    unsigned long long x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
}

// problem=..., method=... and the numeric knobs; anything else is a typo the
// user should hear about rather than a silently ignored line.
void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value,
              const std::string& where) {
    try {
        if (key == "problem") cfg.problem = value;
        else if (key == "method") cfg.method = value;
        else if (key == "epochs") cfg.epochs = static_cast<int>(parse_int(value));
        else if (key == "lr") cfg.lr = parse_real(value);
        else if (key == "mesh_n") cfg.mesh_n = static_cast<int>(parse_int(value));
        else if (key == "hidden") cfg.hidden = parse_hidden(value);
        else if (key == "epsilon") cfg.epsilon = parse_real(value);
        else if (key == "seed") cfg.seed = parse_seed(value);
        else if (key == "out_dir") cfg.out_dir = value;
        else throw ConfigError(where + ": unknown key '" + key + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError(where + ": bad value for '" + key + "'");
    }
}

}  // namespace

void load_config_file(RunConfig& cfg, const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read config file " + file.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::string where = file.string() + ":" + std::to_string(lineno);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(where + ": expected key=value");
        apply_kv(cfg, key, value, where);
    }
}

void resolve_defaults(RunConfig& cfg) {
    bool ode = cfg.problem == "ode1" || cfg.problem == "ode2";
    bool flat2d = cfg.problem == "laplace" || cfg.problem == "eikonal";
    if (!ode && !flat2d)
        throw ConfigError(cfg.problem.empty()
                              ? "no problem selected"
                              : "unknown problem '" + cfg.problem + "'");
    if (cfg.method != "finnet" && cfg.method != "pinn")
        throw ConfigError("unknown method '" + cfg.method + "'");
    if (cfg.method == "pinn" && !ode)
        throw ConfigError("method pinn supports ode1 and ode2 only");

    if (cfg.epochs == 0) cfg.epochs = (cfg.problem == "laplace") ? 8000 : 5000;
    if (cfg.lr == 0.0)
        cfg.lr = (cfg.problem == "eikonal" && cfg.method == "finnet") ? 0.001 : 0.01;
    if (cfg.mesh_n == 0) cfg.mesh_n = ode ? 101 : 32;
    if (cfg.hidden.empty()) {
        if (cfg.method == "pinn") cfg.hidden = {32, 32, 32, 32};
        else if (ode) cfg.hidden = {16, 16};
        else if (cfg.problem == "laplace") cfg.hidden = {8, 8};
        else cfg.hidden = {64, 64, 64, 64};
    }
    if (cfg.out_dir.empty())
        cfg.out_dir = std::filesystem::path("out") /
                      (cfg.problem + "-" + cfg.method + "-s" + std::to_string(cfg.seed));

    if (cfg.epochs < 1) throw ConfigError("epochs must be positive");
    if (!(cfg.lr > 0.0) || !std::isfinite(cfg.lr)) throw ConfigError("lr must be positive");
    if (cfg.mesh_n < 3) throw ConfigError("mesh_n must be at least 3");
    if (!(cfg.epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");
    for (int w : cfg.hidden)
        if (w < 1) throw ConfigError("hidden widths must be positive");
}

// ---- artifact writers --------------------------------------------------------

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    return out;
}

std::string hidden_str(const std::vector<int>& hidden) {
    std::string s;
    for (std::size_t i = 0; i < hidden.size(); ++i)
        s += (i ? "," : "") + std::to_string(hidden[i]);
    return s;
}

}  // namespace

void write_history_csv(const std::filesystem::path& file, const TrainHistory& h) {
    std::ofstream out = open_out(file);
    out << "epoch,loss,mse\n";
    for (std::size_t e = 0; e < h.epochs.size(); ++e)
        out << e << ',' << fmt17(h.epochs[e].loss) << ',' << fmt17(h.epochs[e].mse)
            << '\n';
}

void write_solution_csv(const std::filesystem::path& file, const Grid1D& g,
                        std::span<const double> pred, std::span<const double> exact) {
    std::ofstream out = open_out(file);
    out << "x,u_pred,u_exact\n";
    for (int i = 0; i < g.n; ++i)
        out << fmt17(g.points[i]) << ',' << fmt17(pred[i]) << ',' << fmt17(exact[i])
            << '\n';
}

void write_solution_csv(const std::filesystem::path& file, const Grid2D& g,
                        std::span<const double> pred, std::span<const double> exact) {
    std::ofstream out = open_out(file);
    out << "x,y,u_pred,u_exact\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            std::uint32_t id = g.idx(i, j);
            out << fmt17(g.xs[i]) << ',' << fmt17(g.ys[j]) << ',' << fmt17(pred[id])
                << ',' << fmt17(exact[id]) << '\n';
        }
}

void write_summary(const std::filesystem::path& file, const RunSummary& s) {
    std::ofstream out = open_out(file);
    out << "problem=" << s.cfg.problem << '\n';
    out << "method=" << s.cfg.method << '\n';
    out << "epochs=" << s.cfg.epochs << '\n';
    out << "lr=" << fmt17(s.cfg.lr) << '\n';
    out << "mesh_n=" << s.cfg.mesh_n << '\n';
    out << "hidden=" << hidden_str(s.cfg.hidden) << '\n';
    out << "seed=" << s.cfg.seed << '\n';
    if (s.cfg.problem == "eikonal") out << "epsilon=" << fmt17(s.cfg.epsilon) << '\n';
    out << "out_dir=" << s.cfg.out_dir.string() << '\n';
    out << "final_loss=" << fmt17(s.final_loss) << '\n';
    out << "final_mse=" << fmt17(s.final_mse) << '\n';
    out << "diverged=" << (s.diverged ? 1 : 0) << '\n';
    if (s.diverged) out << "diverged_at=" << s.diverged_at << '\n';
    out << "d1_mean=" << fmt17(s.d1.mean) << '\n';
    out << "d1_variance=" << fmt17(s.d1.variance) << '\n';
    out << "d2_mean=" << fmt17(s.d2.mean) << '\n';
    out << "d2_variance=" << fmt17(s.d2.variance) << '\n';
    out << "wall_seconds=" << fmt17(s.wall_seconds) << '\n';
}

std::map<std::string, std::string> read_kv_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

// ---- solve / compare ----------------------------------------------------------

namespace {

template <class Grid>
void finish_run(RunSummary& s, const TrainResult& r, const ProblemSpec& prob,
                const Grid& grid) {
    const auto& hist = r.history.epochs;
    s.final_loss = hist.empty() ? 0.0 : hist.back().loss;
    s.final_mse = hist.empty() ? 0.0 : hist.back().mse;
    s.diverged = r.history.diverged_at.has_value();
    s.diverged_at = r.history.diverged_at.value_or(-1);
    s.d1 = interior_derivative_stats(r.params, grid, 1);
    s.d2 = interior_derivative_stats(r.params, grid, 2);

    std::filesystem::create_directories(s.dir);
    write_history_csv(s.dir / "history.csv", r.history);
    save_params(r.params, s.dir / "params.ckpt");

    auto pred = predict_grid(r.params, grid);
    auto exact = exact_values(prob, grid);
    write_solution_csv(s.dir / "solution.csv", grid, pred, exact);
    if constexpr (std::is_same_v<Grid, Grid1D>)
        write_line_plot_svg(s.dir / "plot.svg", grid.points, pred, exact);
    else
        write_heatmap_svg(s.dir / "plot.svg", grid, pred, exact);
}

}  // namespace

RunSummary run_solve(const RunConfig& in) {
    RunConfig cfg = in;
    resolve_defaults(cfg);
    ProblemSpec prob = problem_by_name(cfg.problem, cfg.epsilon);
    MlpSpec net{prob.dim, cfg.hidden};
    TrainConfig tc{cfg.epochs, cfg.lr, cfg.seed};

    RunSummary s;
    s.cfg = cfg;
    s.dir = cfg.out_dir;

    auto t0 = std::chrono::steady_clock::now();
    if (prob.dim == 1) {
        Grid1D grid = uniform_1d(prob.lo, prob.hi, cfg.mesh_n, prob.sides);
        TrainResult r = cfg.method == "pinn" ? train_pinn(prob, grid, net, tc)
                                             : train_finnet(prob, grid, net, tc);
        s.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0).count();
        finish_run(s, r, prob, grid);
    } else {
        Grid2D grid = uniform_2d(prob.lo, prob.hi, cfg.mesh_n, cfg.mesh_n);
        TrainResult r = train_finnet(prob, grid, net, tc);
        s.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0).count();
        finish_run(s, r, prob, grid);
    }
    write_summary(s.dir / "summary.txt", s);
    return s;
}

std::vector<CompareRow> run_compare(const std::string& problem,
                                    std::span<const std::uint64_t> seeds,
                                    const std::filesystem::path& out_dir) {
    if (seeds.empty()) throw ConfigError("compare: need at least one seed");
    {
        RunConfig probe;
        probe.problem = problem;
        probe.method = "pinn";
        resolve_defaults(probe);   // rejects 2-D problems up front
    }

    std::vector<CompareRow> rows;
    for (const char* method : {"finnet", "pinn"}) {
        for (std::uint64_t seed : seeds) {
            RunConfig cfg;
            cfg.problem = problem;
            cfg.method = method;
            cfg.seed = seed;
            cfg.out_dir = out_dir / (std::string(method) + "-s" + std::to_string(seed));
            RunSummary s = run_solve(cfg);

            CompareRow row;
            row.method = method;
            row.seed = seed;
            row.final_loss = s.final_loss;
            row.final_mse = s.final_mse;
            row.d1 = s.d1;
            row.d2 = s.d2;
            row.diverged = s.diverged;
            row.flat = flat_solution(s.final_loss, s.final_mse, s.d1);
            rows.push_back(row);
        }
    }

    std::ofstream out = open_out(out_dir / "compare.csv");
    out << "method,seed,final_loss,final_mse,d1_mean,d1_var,d2_mean,d2_var\n";
    for (const CompareRow& r : rows)
        out << r.method << ',' << r.seed << ',' << fmt17(r.final_loss) << ','
            << fmt17(r.final_mse) << ',' << fmt17(r.d1.mean) << ','
            << fmt17(r.d1.variance) << ',' << fmt17(r.d2.mean) << ','
            << fmt17(r.d2.variance) << '\n';
    return rows;
}

// ---- stencil orders ------------------------------------------------------------

double order_from_errors(std::span<const double> hs, std::span<const double> errs) {
    if (hs.size() != errs.size() || hs.size() < 2)
        throw std::invalid_argument("order_from_errors: need matching arrays of 2+");
    std::vector<double> lx(hs.size()), ly(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        lx[i] = std::log(hs[i]);
        ly[i] = std::log(std::max(errs[i], 1e-300));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(hs.size());
    my /= static_cast<double>(hs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    return num / den;
}

namespace {

double err_1d(const std::function<Var(const Field1D&, int)>& st,
              const std::function<double(double)>& f, double truth, double x0,
              double h) {
    Grid1D g = uniform_1d(x0 - 2.0 * h, x0 + 2.0 * h, 5, BoundarySides::Both);
    Field1D fld;
    fld.grid = &g;
    for (double x : g.points) fld.v.push_back(Var::constant(f(x)));
    return std::abs(st(fld, 2).value() - truth);
}

double err_2d(const std::function<Var(const Field2D&, int, int)>& st,
              const std::function<double(double, double)>& f, double truth,
              double c0, double h) {
    Grid2D g = uniform_2d(c0 - 2.0 * h, c0 + 2.0 * h, 5, 5);
    Field2D fld;
    fld.grid = &g;
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i)
            fld.v.push_back(Var::constant(f(g.xs[i], g.ys[j])));
    return std::abs(st(fld, 2, 2).value() - truth);
}

}  // namespace

std::vector<StencilOrder> stencil_orders() {
    const double hs[] = {0.1, 0.05, 0.025};
    const double x0 = 0.5, c0 = 0.3;

    struct Fn1 {
        const char* tag;
        double (*f)(double);
        double d1;
        double d2;
    };
    const Fn1 fns[] = {
        {"sin", [](double x) { return std::sin(x); }, std::cos(x0), -std::sin(x0)},
        {"exp", [](double x) { return std::exp(x); }, std::exp(x0), std::exp(x0)},
    };

    auto f2 = [](double x, double y) { return std::sin(x) * std::cos(y); };
    double lap_truth = -2.0 * std::sin(c0) * std::cos(c0);
    double fx = std::cos(c0) * std::cos(c0), fy = -std::sin(c0) * std::sin(c0);
    double gm_truth = std::sqrt(fx * fx + fy * fy + 1e-12);

    struct Case1 {
        const char* name;
        Var (*st)(const Field1D&, int);
        int order;
        double req;
    };
    const Case1 cases1[] = {
        {"d1_forward", d1_forward, 1, 0.9},
        {"d1_backward", d1_backward, 1, 0.9},
        {"d1_central", d1_central, 1, 1.9},
        {"d2_central", d2_central, 2, 1.9},
    };

    std::vector<StencilOrder> out;
    for (const Case1& c : cases1)
        for (const Fn1& fn : fns) {
            double truth = c.order == 1 ? fn.d1 : fn.d2;
            double errs[3];
            for (int k = 0; k < 3; ++k) errs[k] = err_1d(c.st, fn.f, truth, x0, hs[k]);
            out.push_back({std::string(c.name) + "(" + fn.tag + ")",
                           order_from_errors(hs, errs), c.req});
        }

    {
        double errs[3];
        for (int k = 0; k < 3; ++k)
            errs[k] = err_2d(laplacian_2d, f2, lap_truth, c0, hs[k]);
        out.push_back({"laplacian_2d", order_from_errors(hs, errs), 1.9});
        for (int k = 0; k < 3; ++k)
            errs[k] = err_2d(grad_mag_2d, f2, gm_truth, c0, hs[k]);
        out.push_back({"grad_mag_2d", order_from_errors(hs, errs), 1.9});
    }
    return out;
}

}  // namespace finnet
