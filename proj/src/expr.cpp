#include "flowlab/expr.hpp"

#include <cmath>

namespace flowlab {

namespace {
constexpr double kPoleTol = 1e-14;
constexpr size_t kMaxPolyDegree = 64;
} // namespace

struct Expr::Node {
    Kind kind;
    Complex c0{};          // Constant value / Scale factor / ExpLinear A
    Complex c1{};          // ExpLinear k
    Complex m{}, n{}, s{}, d{};  // Mobius coefficients
    int exponent = 0;
    std::shared_ptr<const Node> lhs, rhs;  // Sum/Product children; lhs doubles as "inner"
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Expr::Node node) {
    return std::make_shared<const Expr::Node>(std::move(node));
}

bool is_const(const NodePtr& n, Complex* out = nullptr) {
    if (n->kind != Expr::Kind::Constant) return false;
    if (out) *out = n->c0;
    return true;
}

} // namespace

Expr Expr::constant(Complex c) {
    require_finite(c, "Expr::constant");
    Node n;
    n.kind = Kind::Constant;
    n.c0 = c;
    return Expr(make_node(std::move(n)));
}

Expr Expr::identity() {
    Node n;
    n.kind = Kind::Identity;
    return Expr(make_node(std::move(n)));
}

Expr Expr::sum(Expr lhs, Expr rhs) {
    Complex a, b;
    if (is_const(lhs.node_, &a) && is_const(rhs.node_, &b)) return constant(a + b);
    if (is_const(lhs.node_, &a) && a == Complex{}) return rhs;
    if (is_const(rhs.node_, &b) && b == Complex{}) return lhs;
    Node n;
    n.kind = Kind::Sum;
    n.lhs = lhs.node_;
    n.rhs = rhs.node_;
    return Expr(make_node(std::move(n)));
}

Expr Expr::product(Expr lhs, Expr rhs) {
    Complex a, b;
    if (is_const(lhs.node_, &a) && is_const(rhs.node_, &b)) return constant(a * b);
    if (is_const(lhs.node_, &a)) return scale(a, rhs);
    if (is_const(rhs.node_, &b)) return scale(b, lhs);
    Node n;
    n.kind = Kind::Product;
    n.lhs = lhs.node_;
    n.rhs = rhs.node_;
    return Expr(make_node(std::move(n)));
}

Expr Expr::scale(Complex c, Expr inner) {
    require_finite(c, "Expr::scale");
    if (c == Complex{}) return constant({});
    if (c == Complex{1.0, 0.0}) return inner;
    Complex v;
    if (is_const(inner.node_, &v)) return constant(c * v);
    if (inner.node_->kind == Kind::Scale)
        return scale(c * inner.node_->c0, Expr(inner.node_->lhs));
    if (inner.node_->kind == Kind::ExpLinear)
        return exp_linear(c * inner.node_->c0, inner.node_->c1);
    Node n;
    n.kind = Kind::Scale;
    n.c0 = c;
    n.lhs = inner.node_;
    return Expr(make_node(std::move(n)));
}

Expr Expr::exp_linear(Complex a, Complex k) {
    require_finite(a, "Expr::exp_linear");
    require_finite(k, "Expr::exp_linear");
    if (a == Complex{}) return constant({});
    if (k == Complex{}) return constant(a);
    Node n;
    n.kind = Kind::ExpLinear;
    n.c0 = a;
    n.c1 = k;
    return Expr(make_node(std::move(n)));
}

Expr Expr::power(Expr inner, int n) {
    if (n < 0) raise(ErrorCode::InvalidExpr, "Expr::power: negative exponent");
    if (n == 0) return constant({1.0, 0.0});
    if (n == 1) return inner;
    Complex v;
    if (is_const(inner.node_, &v)) return constant(std::pow(v, n));
    Node node;
    node.kind = Kind::Power;
    node.exponent = n;
    node.lhs = inner.node_;
    return Expr(make_node(std::move(node)));
}

Expr Expr::mobius(Complex m, Complex n, Complex s, Complex d, Expr inner) {
    require_finite(m, "Expr::mobius");
    require_finite(n, "Expr::mobius");
    require_finite(s, "Expr::mobius");
    require_finite(d, "Expr::mobius");
    if (std::abs(m * d - n * s) == 0.0)
        raise(ErrorCode::InvalidExpr, "Expr::mobius: m*d - n*s must be nonzero");
    Node node;
    node.kind = Kind::Mobius;
    node.m = m;
    node.n = n;
    node.s = s;
    node.d = d;
    node.lhs = inner.node_;
    return Expr(make_node(std::move(node)));
}

Expr::Kind Expr::kind() const { return node_->kind; }

namespace {

Complex eval_node(const Expr::Node& n, Complex z) {
    switch (n.kind) {
        case Expr::Kind::Constant: return n.c0;
        case Expr::Kind::Identity: return z;
        case Expr::Kind::Sum:      return eval_node(*n.lhs, z) + eval_node(*n.rhs, z);
        case Expr::Kind::Product:  return eval_node(*n.lhs, z) * eval_node(*n.rhs, z);
        case Expr::Kind::Scale:    return n.c0 * eval_node(*n.lhs, z);
        case Expr::Kind::ExpLinear: return n.c0 * std::exp(n.c1 * z);
        case Expr::Kind::Power: {
            Complex base = eval_node(*n.lhs, z);
            Complex acc{1.0, 0.0};
            Complex p = base;
            int e = n.exponent;
            while (e > 0) {
                if (e & 1) acc *= p;
                p *= p;
                e >>= 1;
            }
            return acc;
        }
        case Expr::Kind::Mobius: {
            Complex w = eval_node(*n.lhs, z);
            Complex den = n.s * w + n.d;
            if (std::abs(den) < kPoleTol)
                raise(ErrorCode::PoleHit, "Expr::eval: Mobius denominator vanishes");
            return (n.m * w + n.n) / den;
        }
    }
    raise(ErrorCode::InvalidExpr, "Expr::eval: corrupt node");
}

} // namespace

Complex Expr::eval(Complex z) const {
    require_finite(z, "Expr::eval");
    Complex v = eval_node(*node_, z);
    require_finite(v, "Expr::eval");
    return v;
}

Expr Expr::derivative() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Constant: return constant({});
        case Kind::Identity: return constant({1.0, 0.0});
        case Kind::Sum:
            return sum(Expr(n.lhs).derivative(), Expr(n.rhs).derivative());
        case Kind::Product: {
            Expr a(n.lhs), b(n.rhs);
            return sum(product(a.derivative(), b), product(a, b.derivative()));
        }
        case Kind::Scale:
            return scale(n.c0, Expr(n.lhs).derivative());
        case Kind::ExpLinear:
            return exp_linear(n.c0 * n.c1, n.c1);
        case Kind::Power: {
            Expr inner(n.lhs);
            Expr chain = inner.derivative();
            return scale(Complex(double(n.exponent), 0.0),
                         product(power(inner, n.exponent - 1), chain));
        }
        case Kind::Mobius: {
            // d/dw (m w + n)/(s w + d) = (m d - n s)/(s w + d)^2
            Expr inner(n.lhs);
            Complex det = n.m * n.d - n.n * n.s;
            if (n.s == Complex{}) {
                // affine: (m w + n)/d
                return scale(n.m / n.d, inner.derivative());
            }
            Expr recip = mobius({}, {1.0, 0.0}, n.s, n.d, inner); // 1/(s w + d)
            return scale(det, product(power(recip, 2), inner.derivative()));
        }
    }
    raise(ErrorCode::InvalidExpr, "Expr::derivative: corrupt node");
}

std::optional<std::vector<Complex>> Expr::as_polynomial() const {
    using Coeffs = std::vector<Complex>;
    const Node& n = *node_;
    auto trim = [](Coeffs c) {
        while (c.size() > 1 && c.back() == Complex{}) c.pop_back();
        return c;
    };
    switch (n.kind) {
        case Kind::Constant: return Coeffs{n.c0};
        case Kind::Identity: return Coeffs{{}, {1.0, 0.0}};
        case Kind::Sum: {
            auto a = Expr(n.lhs).as_polynomial();
            auto b = Expr(n.rhs).as_polynomial();
            if (!a || !b) return std::nullopt;
            Coeffs out(std::max(a->size(), b->size()));
            for (size_t i = 0; i < a->size(); ++i) out[i] += (*a)[i];
            for (size_t i = 0; i < b->size(); ++i) out[i] += (*b)[i];
            return trim(std::move(out));
        }
        case Kind::Product: {
            auto a = Expr(n.lhs).as_polynomial();
            auto b = Expr(n.rhs).as_polynomial();
            if (!a || !b) return std::nullopt;
            if (a->size() + b->size() > kMaxPolyDegree) return std::nullopt;
            Coeffs out(a->size() + b->size() - 1);
            for (size_t i = 0; i < a->size(); ++i)
                for (size_t j = 0; j < b->size(); ++j) out[i + j] += (*a)[i] * (*b)[j];
            return trim(std::move(out));
        }
        case Kind::Scale: {
            auto a = Expr(n.lhs).as_polynomial();
            if (!a) return std::nullopt;
            for (auto& c : *a) c *= n.c0;
            return a;
        }
        case Kind::ExpLinear: return std::nullopt;  // k == 0 folds to Constant at build
        case Kind::Power: {
            auto a = Expr(n.lhs).as_polynomial();
            if (!a) return std::nullopt;
            if ((a->size() - 1) * size_t(n.exponent) > kMaxPolyDegree) return std::nullopt;
            Coeffs acc{{1.0, 0.0}};
            for (int e = 0; e < n.exponent; ++e) {
                Coeffs next(acc.size() + a->size() - 1);
                for (size_t i = 0; i < acc.size(); ++i)
                    for (size_t j = 0; j < a->size(); ++j) next[i + j] += acc[i] * (*a)[j];
                acc = std::move(next);
            }
            return trim(std::move(acc));
        }
        case Kind::Mobius: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Expr> Expr::antiderivative() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Constant:
            return scale(n.c0, identity());
        case Kind::Identity:
            return scale({0.5, 0.0}, power(identity(), 2));
        case Kind::Sum: {
            auto a = Expr(n.lhs).antiderivative();
            auto b = Expr(n.rhs).antiderivative();
            if (!a || !b) return std::nullopt;
            return sum(*a, *b);
        }
        case Kind::Scale: {
            auto a = Expr(n.lhs).antiderivative();
            if (!a) return std::nullopt;
            return scale(n.c0, *a);
        }
        case Kind::ExpLinear: {
            // int A e^{k z} dz = (A/k)(e^{k z} - 1); k != 0 guaranteed at build
            return sum(exp_linear(n.c0 / n.c1, n.c1), constant(-n.c0 / n.c1));
        }
        case Kind::Product:
        case Kind::Power: {
            auto poly = as_polynomial();
            if (!poly) return std::nullopt;
            Expr acc = constant({});
            for (size_t i = 0; i < poly->size(); ++i) {
                Complex coeff = (*poly)[i] / Complex(double(i + 1), 0.0);
                acc = sum(acc, scale(coeff, power(identity(), int(i) + 1)));
            }
            return acc;
        }
        case Kind::Mobius:
            return std::nullopt;
    }
    return std::nullopt;
}

double Expr::cauchy_riemann_residual(Complex z, double h) const {
    if (!(h >= 1e-7 && h <= 1e-3))
        raise(ErrorCode::InvalidExpr, "cauchy_riemann_residual: h outside [1e-7, 1e-3]");
    // For analytic W: dW/db = i dW/da. Residual is |W_b - i W_a|.
    Complex wa = (eval(z + Complex{h, 0.0}) - eval(z - Complex{h, 0.0})) / (2.0 * h);
    Complex wb = (eval(z + Complex{0.0, h}) - eval(z - Complex{0.0, h})) / (2.0 * h);
    return std::abs(wb - kI * wa);
}

} // namespace flowlab
