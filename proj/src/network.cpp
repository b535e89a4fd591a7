#include "finnet/network.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace finnet {

namespace {

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::vector<int> layer_widths(const MlpSpec& spec) {
    if (spec.input_dim < 1)
        throw std::invalid_argument("mlp: input_dim must be positive");
    if (spec.hidden.empty())
        throw std::invalid_argument("mlp: need at least one hidden layer");
    std::vector<int> widths;
    widths.push_back(spec.input_dim);
    for (int h : spec.hidden) {
        if (h < 1) throw std::invalid_argument("mlp: hidden width must be positive");
        widths.push_back(h);
    }
    widths.push_back(1);
    return widths;
}

}  // namespace

std::size_t MlpParams::count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.w.size() + l.b.size();
    return n;
}

MlpParams mlp_init(const MlpSpec& spec, std::uint64_t seed) {
    auto widths = layer_widths(spec);
    SplitMix64 rng{seed};

    MlpParams p;
    p.spec = spec;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        LayerParams layer;
        layer.in = widths[l];
        layer.out = widths[l + 1];
        layer.w.resize(static_cast<std::size_t>(layer.in) * layer.out);
        layer.b.assign(layer.out, 0.0);
        double bound = std::sqrt(6.0 / (layer.in + layer.out));
        for (double& w : layer.w) w = bound * (2.0 * rng.u01() - 1.0);
        p.layers.push_back(std::move(layer));
    }
    return p;
}

double mlp_eval(const MlpParams& p, std::span<const double> x) {
    if (static_cast<int>(x.size()) != p.spec.input_dim)
        throw std::invalid_argument("mlp_eval: point dimension mismatch");

    std::vector<double> act(x.begin(), x.end());
    std::vector<double> next;
    for (std::size_t l = 0; l < p.layers.size(); ++l) {
        const LayerParams& layer = p.layers[l];
        next.assign(layer.out, 0.0);
        for (int r = 0; r < layer.out; ++r) {
            double acc = layer.b[r];
            const double* row = layer.w.data() + static_cast<std::size_t>(r) * layer.in;
            for (int k = 0; k < layer.in; ++k) acc += row[k] * act[k];
            next[r] = acc;
        }
        bool last = (l + 1 == p.layers.size());
        if (!last)
            for (double& v : next) v = std::tanh(v);
        act.swap(next);
    }
    return act[0];
}

MlpOnTape::MlpOnTape(Tape& tape, const MlpParams& p) : tape_(&tape), spec_(p.spec) {
    if (spec_.input_dim > 2)
        throw std::invalid_argument("MlpOnTape: points are 1-D or 2-D");
    layers_.reserve(p.layers.size());
    for (const LayerParams& src : p.layers) {
        StagedLayer sl;
        sl.in = src.in;
        sl.out = src.out;
        sl.w.reserve(src.w.size());
        for (std::size_t k = 0; k < src.w.size(); ++k) {
            Var v = tape.var(src.w[k]);
            if (k == 0) sl.w_first = v.id();
            sl.w.push_back(v);
        }
        sl.b.reserve(src.b.size());
        for (double bv : src.b) sl.b.push_back(tape.var(bv));
        layers_.push_back(std::move(sl));
    }
}

Var MlpOnTape::forward(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != spec_.input_dim)
        throw std::invalid_argument("forward: point dimension mismatch");

    // First layer: inputs are plain constants, generic edges.
    std::array<Var, 2> xv;
    for (int k = 0; k < spec_.input_dim; ++k) xv[k] = Var::constant(x[k]);
    std::span<const Var> xs(xv.data(), static_cast<std::size_t>(spec_.input_dim));

    std::vector<Var>& act = act_;
    std::vector<Var>& z = z_;
    {
        const StagedLayer& l0 = layers_.front();
        z.clear();
        for (int r = 0; r < l0.out; ++r) {
            std::span<const Var> row(l0.w.data() + static_cast<std::size_t>(r) * l0.in,
                                     static_cast<std::size_t>(l0.in));
            z.push_back(tape_->affine(row, xs, l0.b[r]));
        }
        act.clear();
        for (Var v : z) act.push_back(tanh(v));
    }

    // Hidden and output layers: activations of the previous layer sit in a
    // contiguous id block (the tanh nodes above were recorded back to back),
    // so the dense fused node applies.
    for (std::size_t li = 1; li < layers_.size(); ++li) {
        const StagedLayer& l = layers_[li];
        std::uint32_t x_first = act.front().id();
        z.clear();
        for (int r = 0; r < l.out; ++r)
            z.push_back(tape_->affine_dense(
                l.w_first + static_cast<std::uint32_t>(r) * l.in, x_first,
                static_cast<std::uint32_t>(l.in), l.b[r]));
        bool last = (li + 1 == layers_.size());
        if (last) return z[0];
        act.clear();
        for (Var v : z) act.push_back(tanh(v));
    }
    return act[0];   // unreachable: loop returns at the output layer
}

Jet2 MlpOnTape::forward_jet(std::span<const double> x, int axis) const {
    if (static_cast<int>(x.size()) != spec_.input_dim)
        throw std::invalid_argument("forward_jet: point dimension mismatch");
    if (axis < 0 || axis >= spec_.input_dim)
        throw std::invalid_argument("forward_jet: axis out of range");

    std::vector<Jet2> act;
    for (int k = 0; k < spec_.input_dim; ++k)
        act.push_back(k == axis ? jet_lift(x[k]) : jet_const(x[k]));

    std::vector<Var> u, du, d2u;
    Var zero = Var::constant(0.0);
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        const StagedLayer& l = layers_[li];
        u.clear(); du.clear(); d2u.clear();
        for (const Jet2& a : act) {
            u.push_back(a.u);
            du.push_back(a.du);
            d2u.push_back(a.d2u);
        }
        std::vector<Jet2> next;
        for (int r = 0; r < l.out; ++r) {
            std::span<const Var> row(l.w.data() + static_cast<std::size_t>(r) * l.in,
                                     static_cast<std::size_t>(l.in));
            Jet2 zr{tape_->affine(row, u, l.b[r]),
                    tape_->affine(row, du, zero),
                    tape_->affine(row, d2u, zero)};
            next.push_back(li + 1 == layers_.size() ? zr : tanh(zr));
        }
        if (li + 1 == layers_.size()) return next[0];
        act.swap(next);
    }
    return act[0];   // unreachable: loop returns at the output layer
}

MlpParams MlpOnTape::grads(const std::vector<double>& adjoints) const {
    MlpParams g;
    g.spec = spec_;
    for (const StagedLayer& l : layers_) {
        LayerParams gl;
        gl.in = l.in;
        gl.out = l.out;
        gl.w.reserve(l.w.size());
        gl.b.reserve(l.b.size());
        for (Var v : l.w) gl.w.push_back(Tape::grad_at(adjoints, v));
        for (Var v : l.b) gl.b.push_back(Tape::grad_at(adjoints, v));
        g.layers.push_back(std::move(gl));
    }
    return g;
}

// ---- checkpoint -------------------------------------------------------------

void save_params(const MlpParams& p, const std::filesystem::path& file) {
    std::FILE* f = std::fopen(file.string().c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + file.string());
    std::fprintf(f, "finnet-mlp 1\n");
    std::fprintf(f, "input_dim %d\n", p.spec.input_dim);
    std::fprintf(f, "layers %zu\n", p.layers.size());
    for (std::size_t li = 0; li < p.layers.size(); ++li) {
        const LayerParams& l = p.layers[li];
        std::fprintf(f, "layer %zu %d %d\n", li, l.in, l.out);
        for (int r = 0; r < l.out; ++r) {
            const double* row = l.w.data() + static_cast<std::size_t>(r) * l.in;
            for (int k = 0; k < l.in; ++k)
                std::fprintf(f, "%s%.17g", k ? " " : "", row[k]);
            std::fprintf(f, "\n");
        }
        for (int r = 0; r < l.out; ++r)
            std::fprintf(f, "%s%.17g", r ? " " : "", l.b[r]);
        std::fprintf(f, "\n");
    }
    std::fclose(f);
}

MlpParams load_params(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    auto fail = [&](const std::string& what) {
        throw std::runtime_error(file.string() + ": malformed checkpoint (" + what + ")");
    };

    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "finnet-mlp" || version != 1)
        fail("header");

    std::string key;
    MlpParams p;
    std::size_t n_layers = 0;
    if (!(in >> key >> p.spec.input_dim) || key != "input_dim") fail("input_dim");
    if (!(in >> key >> n_layers) || key != "layers") fail("layer count");

    for (std::size_t li = 0; li < n_layers; ++li) {
        LayerParams l;
        std::size_t idx = 0;
        if (!(in >> key >> idx >> l.in >> l.out) || key != "layer" || idx != li)
            fail("layer header");
        if (l.in < 1 || l.out < 1) fail("layer shape");
        l.w.resize(static_cast<std::size_t>(l.in) * l.out);
        l.b.resize(l.out);
        for (double& v : l.w)
            if (!(in >> v)) fail("weights");
        for (double& v : l.b)
            if (!(in >> v)) fail("biases");
        p.layers.push_back(std::move(l));
    }
    if (p.layers.empty() || p.layers.back().out != 1) fail("output width");
    if (p.layers.front().in != p.spec.input_dim) fail("input width");
    for (std::size_t li = 0; li + 1 < p.layers.size(); ++li) {
        if (p.layers[li].out != p.layers[li + 1].in) fail("width chain");
        p.spec.hidden.push_back(p.layers[li].out);
    }
    return p;
}

}  // namespace finnet
