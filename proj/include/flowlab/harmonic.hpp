#ifndef FLOWLAB_HARMONIC_HPP
#define FLOWLAB_HARMONIC_HPP

#include "flowlab/expr.hpp"

namespace flowlab {

/// Harmonic mapping K = F + conj(G) with F, G analytic in the label domain.
///
/// All z-derivatives used by the Jacobian / dilatation / (pre-)Schwarzian
/// formulas are exact symbolic derivatives of the expression kernel; finite
/// differences appear only in test oracles. Sense-preservation (|q| < 1) is
/// a pointwise property certified by sampling, never proved.
class HarmonicMap {
public:
    HarmonicMap(Expr F, Expr G);

    /// Build directly from the derivative pair (F', G'). Jacobian, dilatation
    /// and Schwarzian machinery only ever touch F', F'', F''', so a map whose
    /// antiderivative has no closed form is still fully usable here.
    static HarmonicMap from_derivatives(Expr Fp, Expr Gp);

    /// |F'(z)|^2 - |G'(z)|^2
    double jacobian(Complex z) const;

    /// q = G'/F'; throws ZeroDenominator when |F'(z)| < 1e-14.
    Complex dilatation(Complex z) const;

    /// P_H = F''/F' - q' conj(q) / (1 - |q|^2) = d/dz log J.
    /// Throws DegenerateDilatation when 1 - |q|^2 < 1e-12.
    Complex pre_schwarzian(Complex z) const;

    /// S_H = S(F) + (conj(q)/(1-|q|^2)) (F''/F' q' - q'') - 3/2 (q' conj(q)/(1-|q|^2))^2
    Complex schwarzian(Complex z) const;

    const Expr& fp() const { return fp_; }
    const Expr& gp() const { return gp_; }

private:
    HarmonicMap() = default;

    Expr fp_{Expr::constant({1.0, 0.0})}, fpp_{Expr::constant({})}, fppp_{Expr::constant({})};
    Expr gp_{Expr::constant({})}, gpp_{Expr::constant({})}, gppp_{Expr::constant({})};

    void build_chain();
    struct Frame;
    Frame frame_at(Complex z) const;
};

/// Classical Schwarzian S(F) = (F''/F')' - (F''/F')^2 / 2, exact derivatives.
Complex classical_schwarzian(const Expr& F, Complex z);

} // namespace flowlab

#endif
