#include "finnet/autodiff.hpp"

#include <cmath>
#include <stdexcept>

namespace finnet {

namespace {

// Tape an operation runs on: the unique tape among its operands, or null
// when every operand is const (the caller then folds to a constant).
Tape* pick_tape(Var a, Var b) {
    Tape* t = a.tape();
    if (t == nullptr) return b.tape();
    if (b.tape() != nullptr && b.tape() != t)
        throw std::invalid_argument("autodiff: operands live on different tapes");
    return t;
}

}  // namespace

Var Tape::var(double value) { return generic_node(value); }

Var Tape::generic_node(double value) {
    auto id = static_cast<std::uint32_t>(values_.size());
    values_.push_back(value);
    kind_.push_back(kGeneric);
    Rec r;
    r.a = static_cast<std::uint32_t>(eparent_.size());
    r.b = 0;
    rec_.push_back(r);
    return Var(this, id, value);
}

void Tape::edge(Var parent, double partial) {
    if (parent.is_const()) return;
    check_owns(parent);
    eparent_.push_back(parent.id());
    epartial_.push_back(partial);
    rec_.back().b += 1;
}

void Tape::check_owns(Var v) const {
    if (v.tape() != this)
        throw std::invalid_argument("autodiff: operand belongs to another tape");
}

void Tape::reset() {
    values_.clear();
    kind_.clear();
    rec_.clear();
    eparent_.clear();
    epartial_.clear();
}

Var Tape::affine_dense(std::uint32_t w_first, std::uint32_t x_first,
                       std::uint32_t n, Var bias) {
    if (bias.is_const())
        throw std::invalid_argument("affine_dense: bias must be a tape node");
    check_owns(bias);
    if (w_first + n > values_.size() || x_first + n > values_.size())
        throw std::out_of_range("affine_dense: operand range exceeds tape");

    double acc = values_[bias.id()];
    const double* w = values_.data() + w_first;
    const double* x = values_.data() + x_first;
    for (std::uint32_t k = 0; k < n; ++k) acc += w[k] * x[k];

    auto id = static_cast<std::uint32_t>(values_.size());
    values_.push_back(acc);
    kind_.push_back(kDense);
    Rec r;
    r.a = w_first;
    r.b = x_first;
    r.c = n;
    r.d = bias.id();
    rec_.push_back(r);
    return Var(this, id, acc);
}

Var Tape::affine(std::span<const Var> w, std::span<const Var> x, Var bias) {
    if (w.size() != x.size())
        throw std::invalid_argument("affine: w and x length mismatch");
    double acc = bias.value();
    for (std::size_t k = 0; k < w.size(); ++k)
        acc += w[k].value() * x[k].value();

    Var out = generic_node(acc);
    edge(bias, 1.0);
    for (std::size_t k = 0; k < w.size(); ++k) {
        edge(w[k], x[k].value());
        edge(x[k], w[k].value());
    }
    return out;
}

Var Tape::lincomb(std::span<const Var> v, std::span<const double> c) {
    if (v.size() != c.size())
        throw std::invalid_argument("lincomb: operand and coefficient counts differ");
    double acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) acc += c[k] * v[k].value();

    Var out = generic_node(acc);
    for (std::size_t k = 0; k < v.size(); ++k) edge(v[k], c[k]);
    return out;
}

std::vector<double> Tape::gradient(Var root) const {
    if (root.is_const())
        throw std::invalid_argument("gradient: root is a constant");
    check_owns(root);

    std::vector<double> adj(values_.size(), 0.0);
    adj[root.id()] = 1.0;

    for (std::uint32_t i = root.id() + 1; i-- > 0;) {
        double a = adj[i];
        if (a == 0.0) continue;
        const Rec& r = rec_[i];
        if (kind_[i] == kGeneric) {
            for (std::uint32_t e = r.a; e < r.a + r.b; ++e)
                adj[eparent_[e]] += a * epartial_[e];
        } else {
            const double* w = values_.data() + r.a;
            const double* x = values_.data() + r.b;
            double* aw = adj.data() + r.a;
            double* ax = adj.data() + r.b;
            for (std::uint32_t k = 0; k < r.c; ++k) {
                aw[k] += a * x[k];
                ax[k] += a * w[k];
            }
            adj[r.d] += a;
        }
    }
    return adj;
}

// Free-function ops.  All fold to a plain constant when no operand carries a
// tape, so expressions over substituted boundary values record nothing.

Var binary_op(Var a, Var b, double value, double pa, double pb) {
    Tape* t = pick_tape(a, b);
    if (t == nullptr) return Var::constant(value);
    Var out = t->generic_node(value);
    t->edge(a, pa);
    t->edge(b, pb);
    return out;
}

Var unary_op(Var a, double value, double pa) {
    Tape* t = a.tape();
    if (t == nullptr) return Var::constant(value);
    Var out = t->generic_node(value);
    t->edge(a, pa);
    return out;
}

Var operator+(Var a, Var b) { return binary_op(a, b, a.value() + b.value(), 1.0, 1.0); }
Var operator-(Var a, Var b) { return binary_op(a, b, a.value() - b.value(), 1.0, -1.0); }

Var operator*(Var a, Var b) {
    return binary_op(a, b, a.value() * b.value(), b.value(), a.value());
}

Var operator/(Var a, Var b) {
    double bv = b.value();
    if (bv == 0.0) throw std::domain_error("autodiff: division by zero");
    double q = a.value() / bv;
    return binary_op(a, b, q, 1.0 / bv, -q / bv);
}

Var operator-(Var a) { return unary_op(a, -a.value(), -1.0); }

Var tanh(Var a) {
    double t = std::tanh(a.value());
    return unary_op(a, t, 1.0 - t * t);
}

Var exp(Var a) {
    double e = std::exp(a.value());
    return unary_op(a, e, e);
}

Var sqrt(Var a) {
    if (a.value() < 0.0) throw std::domain_error("autodiff: sqrt of negative value");
    double s = std::sqrt(a.value());
    return unary_op(a, s, 0.5 / s);
}

Var square(Var a) {
    double v = a.value();
    return unary_op(a, v * v, 2.0 * v);
}

Var abs_smooth(Var a) {
    double v = a.value();
    double s = std::sqrt(v * v + 1e-12);
    return unary_op(a, s, v / s);
}

Var hypot_smooth(Var a, Var b) {
    double av = a.value(), bv = b.value();
    double s = std::sqrt(av * av + bv * bv + 1e-12);
    return binary_op(a, b, s, av / s, bv / s);
}

// ---- second-order jets ----------------------------------------------------

Jet2 jet_lift(double x) {
    return {Var::constant(x), Var::constant(1.0), Var::constant(0.0)};
}

Jet2 jet_const(double c) {
    return {Var::constant(c), Var::constant(0.0), Var::constant(0.0)};
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.u + b.u, a.du + b.du, a.d2u + b.d2u};
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.u - b.u, a.du - b.du, a.d2u - b.d2u};
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.u * b.u,
            a.du * b.u + a.u * b.du,
            a.d2u * b.u + 2.0 * (a.du * b.du) + a.u * b.d2u};
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
    Var q = a.u / b.u;
    Var dq = (a.du - q * b.du) / b.u;
    Var d2q = (a.d2u - 2.0 * (dq * b.du) - q * b.d2u) / b.u;
    return {q, dq, d2q};
}

Jet2 operator-(const Jet2& a) { return {-a.u, -a.du, -a.d2u}; }

Jet2 operator+(const Jet2& a, double b) { return {a.u + b, a.du, a.d2u}; }
Jet2 operator+(double a, const Jet2& b) { return {a + b.u, b.du, b.d2u}; }
Jet2 operator-(const Jet2& a, double b) { return {a.u - b, a.du, a.d2u}; }
Jet2 operator-(double a, const Jet2& b) { return {a - b.u, -b.du, -b.d2u}; }
Jet2 operator*(const Jet2& a, double b) { return {a.u * b, a.du * b, a.d2u * b}; }
Jet2 operator*(double a, const Jet2& b) { return {a * b.u, a * b.du, a * b.d2u}; }

Jet2 tanh(const Jet2& a) {
    Var t = tanh(a.u);
    Var s = 1.0 - square(t);
    return {t, s * a.du, s * a.d2u - 2.0 * (t * (s * square(a.du)))};
}

Jet2 exp(const Jet2& a) {
    Var e = exp(a.u);
    return {e, e * a.du, e * a.d2u + e * square(a.du)};
}

Jet2 sqrt(const Jet2& a) {
    Var s = sqrt(a.u);
    Var ds = a.du / (2.0 * s);
    return {s, ds, a.d2u / (2.0 * s) - square(a.du) / (4.0 * (a.u * s))};
}

Jet2 square(const Jet2& a) {
    return {square(a.u), 2.0 * (a.u * a.du),
            2.0 * (a.u * a.d2u) + 2.0 * square(a.du)};
}

Jet2 abs_smooth(const Jet2& a) {
    return sqrt(square(a) + jet_const(1e-12));
}

}  // namespace finnet
