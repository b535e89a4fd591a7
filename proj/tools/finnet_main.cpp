#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "finnet/run.hpp"

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int do_solve(const finnet::RunConfig& cfg) {
    finnet::RunSummary s = finnet::run_solve(cfg);
    std::printf("problem=%s method=%s seed=%llu epochs=%d\n", s.cfg.problem.c_str(),
                s.cfg.method.c_str(), static_cast<unsigned long long>(s.cfg.seed),
                s.cfg.epochs);
    std::printf("final_loss=%s final_mse=%s wall_seconds=%.1f\n",
                finnet::fmt17(s.final_loss).c_str(), finnet::fmt17(s.final_mse).c_str(),
                s.wall_seconds);
    std::printf("artifacts: %s\n", s.dir.string().c_str());
    if (s.diverged) {
        std::fprintf(stderr, "training diverged at epoch %d (partial history kept)\n",
                     s.diverged_at);
        return 1;
    }
    return 0;
}

int do_compare(const std::string& problem, const std::vector<std::uint64_t>& seeds,
               const std::string& out_dir) {
    auto rows = finnet::run_compare(problem, seeds, out_dir);
    std::printf("%-8s %-6s %-14s %-14s %-14s %-5s\n", "method", "seed", "final_loss",
                "final_mse", "d1_variance", "flat");
    std::vector<double> mse_finnet, mse_pinn;
    for (const auto& r : rows) {
        std::printf("%-8s %-6llu %-14.6g %-14.6g %-14.6g %s%s\n", r.method.c_str(),
                    static_cast<unsigned long long>(r.seed), r.final_loss, r.final_mse,
                    r.d1.variance, r.flat ? "yes" : "no",
                    r.diverged ? " (diverged)" : "");
        (r.method == "finnet" ? mse_finnet : mse_pinn).push_back(r.final_mse);
    }
    std::printf("median mse: finnet %.6g, pinn %.6g\n", median(mse_finnet),
                median(mse_pinn));
    std::printf("table: %s/compare.csv\n", out_dir.c_str());
    return 0;
}

int do_stencil_check() {
    bool ok = true;
    for (const auto& s : finnet::stencil_orders()) {
        bool pass = s.order >= s.min_required;
        ok = ok && pass;
        std::printf("%-18s measured order %5.3f  (needs >= %.1f)  %s\n", s.name.c_str(),
                    s.order, s.min_required, pass ? "ok" : "LOW");
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neural PDE solver trained through finite-difference residuals"};
    app.require_subcommand(1);

    std::string config_file, problem, method, hidden_text, out_dir;
    int epochs = 0, mesh_n = 0;
    double lr = 0.0, epsilon = 0.0;
    std::uint64_t seed = 0;

    CLI::App* solve = app.add_subcommand("solve", "train one network, write artifacts");
    solve->add_option("--config", config_file, "key=value config file");
    solve->add_option("--problem", problem, "ode1 | ode2 | laplace | eikonal");
    solve->add_option("--method", method, "finnet | pinn");
    solve->add_option("--epochs", epochs, "training epochs");
    solve->add_option("--lr", lr, "Adam learning rate");
    solve->add_option("--mesh-n", mesh_n, "grid points per axis");
    solve->add_option("--hidden", hidden_text, "hidden widths, e.g. 16,16");
    solve->add_option("--epsilon", epsilon, "eikonal smoothing weight");
    solve->add_option("--seed", seed, "init seed");
    solve->add_option("--out", out_dir, "artifact directory");

    std::string cp_problem, cp_out;
    std::vector<std::uint64_t> cp_seeds{1, 2, 3, 4, 5};
    CLI::App* compare =
        app.add_subcommand("compare", "finnet vs pinn across seeds (1-D problems)");
    compare->add_option("--problem", cp_problem, "ode1 | ode2")->required();
    compare->add_option("--seeds", cp_seeds, "seed list")->delimiter(',');
    compare->add_option("--out", cp_out, "output directory");

    CLI::App* stencil =
        app.add_subcommand("stencil-check", "measure stencil convergence orders");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;   // bad usage is a config error
    }

    try {
        if (solve->parsed()) {
            finnet::RunConfig cfg;
            if (solve->count("--config")) finnet::load_config_file(cfg, config_file);
            if (solve->count("--problem")) cfg.problem = problem;
            if (solve->count("--method")) cfg.method = method;
            if (solve->count("--epochs")) cfg.epochs = epochs;
            if (solve->count("--lr")) cfg.lr = lr;
            if (solve->count("--mesh-n")) cfg.mesh_n = mesh_n;
            if (solve->count("--hidden")) cfg.hidden = finnet::parse_hidden(hidden_text);
            if (solve->count("--epsilon")) cfg.epsilon = epsilon;
            if (solve->count("--seed")) cfg.seed = seed;
            if (solve->count("--out")) cfg.out_dir = out_dir;
            return do_solve(cfg);
        }
        if (compare->parsed()) {
            if (cp_out.empty()) cp_out = "out/compare-" + cp_problem;
            return do_compare(cp_problem, cp_seeds, cp_out);
        }
        if (stencil->parsed()) return do_stencil_check();
    } catch (const finnet::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
