#pragma once

#include <span>

#include "finnet/mesh.hpp"
#include "finnet/network.hpp"

namespace finnet {

// Mean squared difference.  Throws std::invalid_argument on length mismatch
// or empty input.
double mse(std::span<const double> a, std::span<const double> b);

// Central-difference derivative estimates of the network over the interior
// of a grid, pooled into mean and population variance.  A near-zero variance
// with a wrong mean is the signature of a network that went flat.
struct DerivativeStats {
    int order = 1;       // 1 or 2
    int count = 0;       // number of pooled estimates
    double mean = 0.0;
    double variance = 0.0;
};

DerivativeStats interior_derivative_stats(const MlpParams& p, const Grid1D& g, int order);

// 2-D: both axes pooled together (x and y sweeps through each interior point).
DerivativeStats interior_derivative_stats(const MlpParams& p, const Grid2D& g, int order);

}  // namespace finnet
