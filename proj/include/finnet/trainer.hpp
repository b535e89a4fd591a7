#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "finnet/mesh.hpp"
#include "finnet/network.hpp"
#include "finnet/problems.hpp"

namespace finnet {

struct TrainConfig {
    int epochs = 5000;
    double lr = 0.01;
    std::uint64_t seed = 1;
};

struct EpochRecord {
    double loss = 0.0;
    double mse = 0.0;   // against the exact solution, before substitution
};

struct TrainHistory {
    std::vector<EpochRecord> epochs;
    std::optional<int> diverged_at;   // set when training aborted early
};

struct TrainResult {
    MlpParams params;
    TrainHistory history;
};

// Training aborts (partial history kept) once the loss stops being a number
// or exceeds this.
inline constexpr double kDivergenceCap = 1e12;

// ---- epoch building blocks --------------------------------------------------
// One epoch of the finite-difference loss is: forward everywhere, measure the
// boundary mismatch, overwrite boundary entries with exact data, then run the
// residual stencils on the patched field.  The pieces are public so each step
// can be exercised on its own.

Field1D forward_field(const MlpOnTape& net, const Grid1D& g);
Field2D forward_field(const MlpOnTape& net, const Grid2D& g);

// Mean squared mismatch between field values and boundary data, over the
// boundary points.  Evaluate before substitution or it is identically zero.
Var boundary_mse(const Field1D& f, const ProblemSpec& p);
Var boundary_mse(const Field2D& f, const ProblemSpec& p);

// Replace every boundary entry with the exact boundary value as a plain
// constant.  Stencils touching these entries see values without gradient.
void substitute_boundary(Field1D& f, const ProblemSpec& p);
void substitute_boundary(Field2D& f, const ProblemSpec& p);

// Mean squared equation residual over the residual points (all interior
// points; for the first-order problem that includes the unpinned right end).
Var residual_mse(const Field1D& f, const ProblemSpec& p);
Var residual_mse(const Field2D& f, const ProblemSpec& p);

// ---- training loops ---------------------------------------------------------

TrainResult train_finnet(const ProblemSpec& prob, const Grid1D& grid,
                         const MlpSpec& net, const TrainConfig& cfg);
TrainResult train_finnet(const ProblemSpec& prob, const Grid2D& grid,
                         const MlpSpec& net, const TrainConfig& cfg);

// Collocation baseline: derivatives from autodiff jets at the interior
// points, boundary term from forward passes.  1-D problems only.
TrainResult train_pinn(const ProblemSpec& prob, const Grid1D& grid,
                       const MlpSpec& net, const TrainConfig& cfg);

// ---- evaluation -------------------------------------------------------------

std::vector<double> exact_values(const ProblemSpec& prob, const Grid1D& g);
std::vector<double> exact_values(const ProblemSpec& prob, const Grid2D& g);

std::vector<double> predict_grid(const MlpParams& p, const Grid1D& g);
std::vector<double> predict_grid(const MlpParams& p, const Grid2D& g);

double evaluate_mse(const MlpParams& p, const ProblemSpec& prob, const Grid1D& g);
double evaluate_mse(const MlpParams& p, const ProblemSpec& prob, const Grid2D& g);

}  // namespace finnet
