#include "finnet/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace finnet {

Adam::Adam(const AdamConfig& cfg, const MlpParams& shape) : cfg_(cfg) {
    for (const LayerParams& l : shape.layers) {
        mw_.emplace_back(l.w.size(), 0.0);
        vw_.emplace_back(l.w.size(), 0.0);
        mb_.emplace_back(l.b.size(), 0.0);
        vb_.emplace_back(l.b.size(), 0.0);
    }
}

namespace {

void check_finite(double g, std::size_t layer, const char* kind, std::size_t idx) {
    if (std::isfinite(g)) return;
    throw std::runtime_error("adam: non-finite gradient at layer " +
                             std::to_string(layer) + " " + kind + "[" +
                             std::to_string(idx) + "]");
}

}  // namespace

void Adam::step(MlpParams& params, const MlpParams& grads) {
    if (params.layers.size() != mw_.size() || grads.layers.size() != mw_.size())
        throw std::invalid_argument("adam: parameter shape mismatch");

    t_ += 1;
    double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));

    for (std::size_t li = 0; li < params.layers.size(); ++li) {
        LayerParams& p = params.layers[li];
        const LayerParams& g = grads.layers[li];
        if (p.w.size() != g.w.size() || p.b.size() != g.b.size())
            throw std::invalid_argument("adam: gradient shape mismatch");

        auto update = [&](std::vector<double>& m, std::vector<double>& v,
                          std::vector<double>& x, const std::vector<double>& gx,
                          const char* kind) {
            for (std::size_t k = 0; k < x.size(); ++k) {
                check_finite(gx[k], li, kind, k);
                m[k] = cfg_.beta1 * m[k] + (1.0 - cfg_.beta1) * gx[k];
                v[k] = cfg_.beta2 * v[k] + (1.0 - cfg_.beta2) * gx[k] * gx[k];
                double mhat = m[k] / c1;
                double vhat = v[k] / c2;
                x[k] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
            }
        };
        update(mw_[li], vw_[li], p.w, g.w, "w");
        update(mb_[li], vb_[li], p.b, g.b, "b");
    }
}

}  // namespace finnet
