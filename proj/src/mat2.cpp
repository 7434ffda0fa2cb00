#include "flowlab/mat2.hpp"

#include <cmath>

namespace flowlab {

namespace {
constexpr double kCommuteTol = 1e-9;
constexpr int kTaylorTerms = 18;
} // namespace

Mat2C Mat2C::operator+(const Mat2C& o) const {
    return {m11 + o.m11, m12 + o.m12, m21 + o.m21, m22 + o.m22};
}

Mat2C Mat2C::operator-(const Mat2C& o) const {
    return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
}

Mat2C Mat2C::operator*(const Mat2C& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
}

Mat2C Mat2C::scaled(Complex c) const {
    return {c * m11, c * m12, c * m21, c * m22};
}

double Mat2C::max_abs() const {
    return std::max(std::max(std::abs(m11), std::abs(m12)),
                    std::max(std::abs(m21), std::abs(m22)));
}

Mat2C mat2_exp(const Mat2C& m) {
    if (m.m11 == Complex{} && m.m22 == Complex{} && m.m12 == std::conj(m.m21)) {
        double b = std::abs(m.m21);
        if (b == 0.0) return Mat2C::identity();
        double ch = std::cosh(b), sh = std::sinh(b) / b;
        return {Complex{ch, 0.0}, sh * m.m12, sh * m.m21, Complex{ch, 0.0}};
    }
    // scaling and squaring, Taylor core
    double norm = m.max_abs();
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    Mat2C t = m.scaled(Complex{scale, 0.0});
    Mat2C acc = Mat2C::identity();
    Mat2C term = Mat2C::identity();
    for (int k = 1; k <= kTaylorTerms; ++k) {
        term = term * t;
        term = term.scaled(Complex{1.0 / double(k), 0.0});
        acc = acc + term;
    }
    for (int i = 0; i < squarings; ++i) acc = acc * acc;
    return acc;
}

double commute_residual(const Mat2C& a, const Mat2C& c) {
    return (a * c - c * a).max_abs();
}

FundamentalSolution fundamental_solution(const BFunc& B, double t, const QuadratureConfig& cfg) {
    Complex w = integrate(B, 0.0, t, cfg);
    Mat2C d_now = Mat2C::antidiagonal(B(t));
    Mat2C w_mat = Mat2C::antidiagonal(w);
    FundamentalSolution out;
    out.commute_residual = commute_residual(d_now, w_mat);
    out.commuting = out.commute_residual < kCommuteTol;
    out.value = mat2_exp(w_mat);
    return out;
}

Mat2C ode_oracle(const BFunc& B, double t, int steps) {
    if (steps < 100)
        raise(ErrorCode::InvalidManifest, "ode_oracle: steps must be >= 100");
    auto rhs = [&B](double s, const Mat2C& x) {
        return Mat2C::antidiagonal(B(s)) * x;
    };
    Mat2C x = Mat2C::identity();
    double h = t / double(steps);
    for (int i = 0; i < steps; ++i) {
        double s = h * double(i);
        Mat2C k1 = rhs(s, x);
        Mat2C k2 = rhs(s + 0.5 * h, x + k1.scaled(Complex{0.5 * h, 0.0}));
        Mat2C k3 = rhs(s + 0.5 * h, x + k2.scaled(Complex{0.5 * h, 0.0}));
        Mat2C k4 = rhs(s + h, x + k3.scaled(Complex{h, 0.0}));
        Mat2C incr = k1 + k2.scaled({2.0, 0.0}) + k3.scaled({2.0, 0.0}) + k4;
        x = x + incr.scaled(Complex{h / 6.0, 0.0});
        if (!is_finite(x.m11) || !is_finite(x.m12) || !is_finite(x.m21) || !is_finite(x.m22))
            raise(ErrorCode::NonFinite, "ode_oracle: state blew up");
    }
    return x;
}

BFunc b_path_from_integral(ScalarPath r, ScalarPath theta) {
    return [r = std::move(r), theta = std::move(theta)](double t) {
        Complex inner{r.derivative(t), r.value(t) * theta.derivative(t)};
        return inner * std::polar(1.0, theta.value(t));
    };
}

} // namespace flowlab
