#ifndef FLOWLAB_MAT2_HPP
#define FLOWLAB_MAT2_HPP

#include "flowlab/quadrature.hpp"

namespace flowlab {

struct Mat2C {
    Complex m11{}, m12{}, m21{}, m22{};

    static Mat2C identity() { return {{1.0, 0.0}, {}, {}, {1.0, 0.0}}; }
    /// [[0, conj(b)], [b, 0]] — the coefficient-matrix shape of the
    /// linearly-dependent evolution system.
    static Mat2C antidiagonal(Complex b) { return {{}, std::conj(b), b, {}}; }

    Mat2C operator+(const Mat2C& o) const;
    Mat2C operator-(const Mat2C& o) const;
    Mat2C operator*(const Mat2C& o) const;
    Mat2C scaled(Complex c) const;

    double max_abs() const;
    Complex det() const { return m11 * m22 - m12 * m21; }
};

/// Matrix exponential. Antidiagonal [[0, conj(b)], [b, 0]] uses the closed
/// form cosh|b| I + (sinh|b|/|b|) M; everything else goes through
/// scaling-and-squaring with an 18-term Taylor core.
Mat2C mat2_exp(const Mat2C& m);

/// Max entrywise magnitude of A C - C A.
double commute_residual(const Mat2C& a, const Mat2C& c);

/// exp(int_0^t D) for D(s) = [[0, conj(B(s))], [B(s), 0]], valid exactly when
/// D(t) commutes with its integral. `commuting` is false (and `value` is the
/// exponential anyway, for mismatch probes) when the commute residual at t
/// exceeds 1e-9.
struct FundamentalSolution {
    bool commuting = false;
    double commute_residual = 0.0;
    Mat2C value;
};

using BFunc = std::function<Complex(double)>;

FundamentalSolution fundamental_solution(const BFunc& B, double t,
                                         const QuadratureConfig& cfg = {});

/// RK4 integration of X'(t) = D(t) X(t), X(0) = I. Independent oracle for the
/// commuting-family closed form; steps >= 100.
Mat2C ode_oracle(const BFunc& B, double t, int steps);

/// The B(t) whose running integral is r(t) e^{i Theta(t)}:
/// B = (r' + i r Theta') e^{i Theta}. Theta-constant instances satisfy the
/// commuting hypothesis; Theta-varying ones probe its sharpness.
BFunc b_path_from_integral(ScalarPath r, ScalarPath theta);

} // namespace flowlab

#endif
