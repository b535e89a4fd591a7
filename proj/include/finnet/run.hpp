#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "finnet/metrics.hpp"
#include "finnet/problems.hpp"
#include "finnet/trainer.hpp"

namespace finnet {

// Settings for one training run.  Zero / empty fields mean "use the default
// for this problem and method"; resolve_defaults fills them in.
struct RunConfig {
    std::string problem;
    std::string method = "finnet";
    int epochs = 0;
    double lr = 0.0;
    int mesh_n = 0;                  // points per axis
    std::vector<int> hidden;
    double epsilon = 1e-4;           // eikonal smoothing weight
    std::uint64_t seed = 1;
    std::filesystem::path out_dir;   // empty: out/<problem>-<method>-s<seed>
};

// Bad user input (config file or flag values).  The CLI maps this to exit
// code 2; genuine runtime failures keep exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// key=value lines, blank lines and '#' comments allowed.  Unknown keys and
// unparsable values raise ConfigError naming the file, line and key.
void load_config_file(RunConfig& cfg, const std::filesystem::path& file);

// Accepts "16,16" style width lists.
std::vector<int> parse_hidden(const std::string& text);

// Fill the remaining zero/empty fields and validate the combination.
void resolve_defaults(RunConfig& cfg);

struct RunSummary {
    RunConfig cfg;                   // fully resolved
    double final_loss = 0.0;
    double final_mse = 0.0;
    bool diverged = false;
    int diverged_at = -1;
    DerivativeStats d1, d2;
    double wall_seconds = 0.0;
    std::filesystem::path dir;
};

// Train once and write history.csv, solution.csv, summary.txt, params.ckpt
// and plot.svg under the run directory.
RunSummary run_solve(const RunConfig& cfg);

struct CompareRow {
    std::string method;
    std::uint64_t seed = 0;
    double final_loss = 0.0;
    double final_mse = 0.0;
    DerivativeStats d1, d2;
    bool diverged = false;
    bool flat = false;
};

// Low loss yet bad solution with a nearly constant derivative: the failure
// mode where the optimizer settles for a straight line through the boundary
// data instead of the solution.
inline bool flat_solution(double final_loss, double final_mse, const DerivativeStats& d1) {
    return final_loss <= 1e-2 && final_mse >= 1e-2 && d1.variance <= 1e-3;
}

// Both methods across the given seeds; writes compare.csv plus one run
// directory per row under out_dir.  1-D problems only (pinn restriction).
std::vector<CompareRow> run_compare(const std::string& problem,
                                    std::span<const std::uint64_t> seeds,
                                    const std::filesystem::path& out_dir);

// ---- artifact writers (also used by tests) ----------------------------------

std::string fmt17(double v);   // shortest round-trip decimal, %.17g

void write_history_csv(const std::filesystem::path& file, const TrainHistory& h);
void write_solution_csv(const std::filesystem::path& file, const Grid1D& g,
                        std::span<const double> pred, std::span<const double> exact);
void write_solution_csv(const std::filesystem::path& file, const Grid2D& g,
                        std::span<const double> pred, std::span<const double> exact);
void write_summary(const std::filesystem::path& file, const RunSummary& s);

// summary.txt / config files share the same key=value shape.
std::map<std::string, std::string> read_kv_file(const std::filesystem::path& file);

void write_line_plot_svg(const std::filesystem::path& file,
                         std::span<const double> xs, std::span<const double> pred,
                         std::span<const double> exact);
void write_heatmap_svg(const std::filesystem::path& file, const Grid2D& g,
                       std::span<const double> pred, std::span<const double> exact);

// ---- stencil order measurement ----------------------------------------------

// Least-squares slope of log(err) against log(h).
double order_from_errors(std::span<const double> hs, std::span<const double> errs);

struct StencilOrder {
    std::string name;
    double order = 0.0;
    double min_required = 0.0;
};

// Convergence order of every stencil on smooth trig/exponential fields,
// h in {0.1, 0.05, 0.025}.
std::vector<StencilOrder> stencil_orders();

}  // namespace finnet
