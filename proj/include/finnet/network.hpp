#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "finnet/autodiff.hpp"

namespace finnet {

// Fully connected tanh network with a single linear output unit.
struct MlpSpec {
    int input_dim = 1;
    std::vector<int> hidden;
};

struct LayerParams {
    int in = 0;
    int out = 0;
    std::vector<double> w;   // row-major, out rows of in entries
    std::vector<double> b;
};

struct MlpParams {
    MlpSpec spec;
    std::vector<LayerParams> layers;
    std::size_t count() const;
};

// Xavier-uniform weights drawn from a splitmix64 stream seeded with `seed`,
// row-major in layer order; biases zero.  Same seed, same bits, everywhere.
MlpParams mlp_init(const MlpSpec& spec, std::uint64_t seed);

// Mesh-free forward pass on plain doubles.  Accumulation order matches the
// taped forward exactly (bias first, then terms by index), so a trained
// network evaluates to the same bits on and off the tape.
double mlp_eval(const MlpParams& p, std::span<const double> x);

// Text checkpoint, 17 significant digits, exact round-trip.
void save_params(const MlpParams& p, const std::filesystem::path& file);
MlpParams load_params(const std::filesystem::path& file);

// Network staged onto a tape: every weight and bias becomes a leaf once,
// after which forward / forward_jet can run for any number of points.
// Weights of each layer occupy a contiguous id range so hidden layers can
// use the dense fused node.
class MlpOnTape {
public:
    MlpOnTape(Tape& tape, const MlpParams& p);

    Var forward(std::span<const double> x) const;

    // Second-order jet along `axis`; the other coordinate (if any) stays
    // frozen at its value in x.
    Jet2 forward_jet(std::span<const double> x, int axis) const;

    // Adjoints rearranged into the shape of the parameters that were staged.
    MlpParams grads(const std::vector<double>& adjoints) const;

    const MlpSpec& spec() const { return spec_; }

private:
    struct StagedLayer {
        int in = 0;
        int out = 0;
        std::uint32_t w_first = 0;
        std::vector<Var> w;
        std::vector<Var> b;
    };

    Tape* tape_;
    MlpSpec spec_;
    std::vector<StagedLayer> layers_;
    mutable std::vector<Var> act_, z_;   // forward() scratch, reused per point
};

}  // namespace finnet
