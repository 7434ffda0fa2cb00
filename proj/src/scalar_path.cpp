#include "flowlab/scalar_path.hpp"

#include <cmath>

namespace flowlab {

struct ScalarPath::Node {
    enum class Kind { Constant, Linear, Poly, Sinusoid, SqrtQuad, Quotient } kind;
    double a = 0.0, b = 0.0, c = 0.0;
    std::vector<double> coeffs;
    std::shared_ptr<const Node> num, den;
};

namespace {

using Node = ScalarPath::Node;
using Kind = Node::Kind;

double node_value(const Node& n, double t);

double node_derivative(const Node& n, double t) {
    switch (n.kind) {
        case Kind::Constant: return 0.0;
        case Kind::Linear:   return n.a;
        case Kind::Poly: {
            double acc = 0.0;
            for (size_t i = n.coeffs.size(); i-- > 1;)
                acc = acc * t + double(i) * n.coeffs[i];
            return acc;
        }
        case Kind::Sinusoid: return n.a * n.b * std::cos(n.b * t + n.c);
        case Kind::SqrtQuad: {
            double q = n.a * t * t + n.b * t + n.c;
            if (q <= 0.0)
                raise(ErrorCode::NonFinite, "ScalarPath: sqrt_quad derivative at nonpositive operand");
            return (2.0 * n.a * t + n.b) / (2.0 * std::sqrt(q));
        }
        case Kind::Quotient: {
            double nv = node_value(*n.num, t), dv = node_value(*n.den, t);
            double nd = node_derivative(*n.num, t), dd = node_derivative(*n.den, t);
            return (nd * dv - nv * dd) / (dv * dv);
        }
    }
    raise(ErrorCode::NonFinite, "ScalarPath: corrupt node");
}

double node_value(const Node& n, double t) {
    switch (n.kind) {
        case Kind::Constant: return n.a;
        case Kind::Linear:   return n.a * t + n.b;
        case Kind::Poly: {
            double acc = 0.0;
            for (size_t i = n.coeffs.size(); i-- > 0;) acc = acc * t + n.coeffs[i];
            return acc;
        }
        case Kind::Sinusoid: return n.a * std::sin(n.b * t + n.c);
        case Kind::SqrtQuad: {
            double q = n.a * t * t + n.b * t + n.c;
            if (q < 0.0)
                raise(ErrorCode::NonFinite, "ScalarPath: sqrt_quad of negative operand");
            return std::sqrt(q);
        }
        case Kind::Quotient:
            return node_value(*n.num, t) / node_value(*n.den, t);
    }
    raise(ErrorCode::NonFinite, "ScalarPath: corrupt node");
}

std::shared_ptr<const Node> make(Node n) {
    return std::make_shared<const Node>(std::move(n));
}

} // namespace

ScalarPath ScalarPath::constant(double v) {
    require_finite(v, "ScalarPath::constant");
    Node n;
    n.kind = Kind::Constant;
    n.a = v;
    return ScalarPath(make(std::move(n)));
}

ScalarPath ScalarPath::linear(double a, double b) {
    require_finite(a, "ScalarPath::linear");
    require_finite(b, "ScalarPath::linear");
    Node n;
    n.kind = Kind::Linear;
    n.a = a;
    n.b = b;
    return ScalarPath(make(std::move(n)));
}

ScalarPath ScalarPath::poly(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    for (double c : coeffs) require_finite(c, "ScalarPath::poly");
    Node n;
    n.kind = Kind::Poly;
    n.coeffs = std::move(coeffs);
    return ScalarPath(make(std::move(n)));
}

ScalarPath ScalarPath::sinusoid(double amp, double freq, double phase) {
    require_finite(amp, "ScalarPath::sinusoid");
    require_finite(freq, "ScalarPath::sinusoid");
    require_finite(phase, "ScalarPath::sinusoid");
    Node n;
    n.kind = Kind::Sinusoid;
    n.a = amp;
    n.b = freq;
    n.c = phase;
    return ScalarPath(make(std::move(n)));
}

ScalarPath ScalarPath::sqrt_quad(double a, double b, double c) {
    require_finite(a, "ScalarPath::sqrt_quad");
    require_finite(b, "ScalarPath::sqrt_quad");
    require_finite(c, "ScalarPath::sqrt_quad");
    Node n;
    n.kind = Kind::SqrtQuad;
    n.a = a;
    n.b = b;
    n.c = c;
    return ScalarPath(make(std::move(n)));
}

ScalarPath ScalarPath::quotient(ScalarPath num, ScalarPath den) {
    Node n;
    n.kind = Kind::Quotient;
    n.num = num.node_;
    n.den = den.node_;
    return ScalarPath(make(std::move(n)));
}

double ScalarPath::value(double t) const {
    double v = node_value(*node_, t);
    require_finite(v, "ScalarPath::value");
    return v;
}

double ScalarPath::derivative(double t) const {
    double v = node_derivative(*node_, t);
    require_finite(v, "ScalarPath::derivative");
    return v;
}

void ScalarPath::validate_on(double t0, double t1, int samples) const {
    if (samples < 2) samples = 2;
    for (int i = 0; i < samples; ++i) {
        double t = t0 + (t1 - t0) * double(i) / double(samples - 1);
        value(t);       // throws on trouble
        derivative(t);
    }
}

} // namespace flowlab
