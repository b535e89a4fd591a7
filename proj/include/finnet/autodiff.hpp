#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace finnet {

class Tape;

// Handle to a scalar node on a Tape.  A default-constructed Var (or one made
// with Var::constant) carries a plain value and no tape: it participates in
// arithmetic but records no edges, so nothing flows back through it.
class Var {
public:
    Var() = default;

    static Var constant(double v) { return Var(nullptr, kConstId, v); }

    double value() const { return value_; }
    bool is_const() const { return id_ == kConstId; }

    // Node id on the owning tape.  Only meaningful when !is_const().
    std::uint32_t id() const { return id_; }
    Tape* tape() const { return tape_; }

private:
    friend class Tape;
    Var(Tape* t, std::uint32_t id, double v) : tape_(t), id_(id), value_(v) {}

    static constexpr std::uint32_t kConstId = 0xffffffffu;

    Tape* tape_ = nullptr;
    std::uint32_t id_ = kConstId;
    double value_ = 0.0;
};

// Record of scalar operations for one reverse sweep.  Nodes live in flat
// arrays; generic nodes own a slice of the shared edge pool, dense nodes
// (see affine_dense) reconstruct their partials from neighbouring values
// instead of storing edges.  reset() keeps capacity so a training loop can
// reuse one tape across epochs without reallocating.
class Tape {
public:
    Var var(double value);

    std::size_t size() const { return values_.size(); }
    std::size_t edge_count() const { return eparent_.size(); }
    double value_at(std::uint32_t id) const { return values_[id]; }

    void reset();

    // b + sum_k w[k]*x[k] where w and x are contiguous id ranges [first,
    // first+n) on this tape.  One node, no stored edges: backward reads the
    // operand values straight from the value array.  The bias must be a
    // non-const node (it is a trainable leaf in every caller).
    Var affine_dense(std::uint32_t w_first, std::uint32_t x_first,
                     std::uint32_t n, Var bias);

    // b + sum_k w[k]*x[k] for arbitrary operands; const entries contribute
    // to the value but record no edge.
    Var affine(std::span<const Var> w, std::span<const Var> x, Var bias);

    // sum_k c[k]*v[k] with fixed real coefficients (stencils are these).
    Var lincomb(std::span<const Var> v, std::span<const double> c);

    // Adjoints of every node with respect to root.  Nodes the root does not
    // depend on get 0.  Throws std::invalid_argument if root is const or
    // lives on another tape.
    std::vector<double> gradient(Var root) const;

    static double grad_at(const std::vector<double>& adj, Var v) {
        return v.is_const() ? 0.0 : adj[v.id()];
    }

private:
    friend Var binary_op(Var a, Var b, double value, double pa, double pb);
    friend Var unary_op(Var a, double value, double pa);

    enum Kind : std::uint8_t { kGeneric = 0, kDense = 1 };

    struct Rec {
        std::uint32_t a = 0, b = 0, c = 0, d = 0;
    };

    Var generic_node(double value);
    void edge(Var parent, double partial);
    void check_owns(Var v) const;

    std::vector<double> values_;
    std::vector<std::uint8_t> kind_;
    std::vector<Rec> rec_;
    std::vector<std::uint32_t> eparent_;
    std::vector<double> epartial_;
};

Var operator+(Var a, Var b);
Var operator-(Var a, Var b);
Var operator*(Var a, Var b);
Var operator/(Var a, Var b);
Var operator-(Var a);

inline Var operator+(Var a, double b) { return a + Var::constant(b); }
inline Var operator+(double a, Var b) { return Var::constant(a) + b; }
inline Var operator-(Var a, double b) { return a - Var::constant(b); }
inline Var operator-(double a, Var b) { return Var::constant(a) - b; }
inline Var operator*(Var a, double b) { return a * Var::constant(b); }
inline Var operator*(double a, Var b) { return Var::constant(a) * b; }
inline Var operator/(Var a, double b) { return a / Var::constant(b); }
inline Var operator/(double a, Var b) { return Var::constant(a) / b; }

Var tanh(Var a);
Var exp(Var a);
Var sqrt(Var a);   // argument must be >= 0
Var square(Var a);

// sqrt(a^2 + 1e-12): |a| with a smooth, finite slope at 0.
Var abs_smooth(Var a);

// sqrt(a^2 + b^2 + 1e-12), same floor as abs_smooth.
Var hypot_smooth(Var a, Var b);

// Truncated second-order Taylor coefficients of a scalar function of one
// input: u, du/dx, d2u/dx2, each a tape node so the chain through them is
// differentiable with respect to network parameters.
struct Jet2 {
    Var u, du, d2u;
};

// Jet of the coordinate x itself: (x, 1, 0).  All three channels are
// constants: parameter dependence enters later, through the first layer's
// weights.
Jet2 jet_lift(double x);

// Jet of a frozen coordinate: (c, 0, 0).  Used for the axis a 1-D sweep
// does not vary.
Jet2 jet_const(double c);

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);

Jet2 operator+(const Jet2& a, double b);
Jet2 operator+(double a, const Jet2& b);
Jet2 operator-(const Jet2& a, double b);
Jet2 operator-(double a, const Jet2& b);
Jet2 operator*(const Jet2& a, double b);
Jet2 operator*(double a, const Jet2& b);

Jet2 tanh(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 square(const Jet2& a);
Jet2 abs_smooth(const Jet2& a);

}  // namespace finnet
