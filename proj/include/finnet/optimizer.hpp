#pragma once

#include <cstdint>
#include <vector>

#include "finnet/network.hpp"

namespace finnet {

struct AdamConfig {
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Bias-corrected Adam over MlpParams.  One step per call; the whole batch is
// one step, there is no minibatching anywhere in this project.
class Adam {
public:
    Adam(const AdamConfig& cfg, const MlpParams& shape);

    // Throws std::runtime_error naming the offending parameter if any
    // gradient entry is NaN or infinite.
    void step(MlpParams& params, const MlpParams& grads);

    std::int64_t steps_taken() const { return t_; }

private:
    AdamConfig cfg_;
    std::vector<std::vector<double>> mw_, vw_, mb_, vb_;
    std::int64_t t_ = 0;
};

}  // namespace finnet
