#include <cmath>

#include "flowlab/families.hpp"

namespace flowlab {

namespace {

Expr exp_ikz(double amplitude, double k) {
    return Expr::exp_linear({amplitude, 0.0}, {0.0, k});
}

Preset make_kirchhoff(double A, double k, double lambda_mod, double c) {
    Expr f0 = exp_ikz(k * A, k);
    FamilySpec spec = FamilySpec::lin_dep_scaled({Complex{lambda_mod, 0.0},
                                                  ScalarPath::constant(lambda_mod),
                                                  ScalarPath::constant(0.0),
                                                  /*c=*/0.0, /*d=*/c});
    // half a spatial period in a keeps the patch labelling injective
    LabelGrid grid{-3.0, 3.0, -0.5, 0.5, 16, 16};
    grid.a_min = -2.8 / k;
    grid.a_max = 2.8 / k;
    return Preset{"kirchhoff", spec.family_label(), "kirchhoff-elliptical-vortex",
                  "rotating constant-modulus pair; circular particle orbits and uniform"
                  " patch vorticity",
                  spec, f0, Expr::scale({lambda_mod, 0.0}, f0), grid, 0.0, 3.0};
}

Preset make_gerstner(double k, double grav) {
    double sigma = std::sqrt(k * grav);
    FamilySpec spec = FamilySpec::general({ScalarPath::constant(sigma),
                                           ScalarPath::constant(sigma),
                                           ScalarPath::constant(0.0),
                                           ScalarPath::constant(0.0)});
    Expr f0 = Expr::constant({1.0, 0.0});
    Expr g0 = Expr::exp_linear({-1.0, 0.0}, {0.0, -k});
    LabelGrid grid{-3.0, 3.0, -2.0, -0.1, 16, 16};
    return Preset{"gerstner", spec.family_label(), "gerstner-gravity-wave",
                  "trochoidal gravity-wave flow on the lower half plane"
                  " (D1 = D2 = sqrt(k g), C4 = 0)",
                  spec, f0, g0, grid, 0.0, 1.0};
}

Preset make_example(const std::string& name) {
    if (name == "example-4-1") {
        // constant-radius scalar-multiple family with a steady rotation rate
        double A = 0.8, k = 2.0, lam = 0.4, c = 1.5;
        FamilySpec spec = FamilySpec::lin_dep_scaled({Complex{lam, 0.0},
                                                      ScalarPath::constant(lam),
                                                      ScalarPath::constant(0.0), 0.0, c});
        return Preset{name, spec.family_label(), "rotating-exponential-pair",
                      "constant-modulus scalar-multiple flow with uniform rotation",
                      spec, exp_ikz(k * A, k), Expr::scale({lam, 0.0}, exp_ikz(k * A, k)),
                      LabelGrid{-1.4, 1.4, -0.4, 0.4, 16, 16}, 0.0, 2.0};
    }
    if (name == "example-4-2") {
        // constant-radius linearly-independent pair, gamma = 0
        double r0 = 1.0;
        FamilySpec spec = FamilySpec::lin_indep_case1(
            {ScalarPath::constant(r0),
             ScalarPath::linear((1.0 + r0 * r0) / (r0 * r0), 0.0),
             /*h=*/1.0 + r0 * r0, /*d0=*/0.0});
        Expr f0 = exp_ikz(r0 * r0 / std::sqrt(1.0 + r0 * r0), 1.0);
        Expr g0 = exp_ikz(1.0 / r0, 2.0);
        return Preset{name, spec.family_label(), "two-mode-constant-radius",
                      "two-mode flow with constant coefficient moduli and zero gamma",
                      spec, f0, g0, LabelGrid{-2.0, 2.0, 0.45, 1.2, 16, 16}, 0.0, 2.0};
    }
    if (name == "example-4-3") {
        // gamma = c2 t branch; valid for (w t + p)/c2 > 1
        FamilySpec spec = FamilySpec::lin_indep_case2(
            {/*c2=*/1.0, /*w=*/1.0, /*p=*/0.0, ScalarPath::linear(1.0, 0.0),
             /*h=*/0.0, /*d0=*/0.0});
        return Preset{name, spec.family_label(), "linear-gamma-window",
                      "two-mode flow with gamma = c2 t, valid on t > 1",
                      spec, exp_ikz(1.0, 1.0), exp_ikz(0.5, 2.0),
                      LabelGrid{-2.0, 2.0, -0.5, 0.5, 16, 16}, 1.3, 3.0};
    }
    if (name == "example-4-4") {
        // gamma = c1 t^2 branch with constant moduli sqrt(3/2), sqrt(1/2)
        FamilySpec spec = FamilySpec::lin_indep_case3(
            {/*c1=*/1.0, /*w=*/2.0, ScalarPath::linear(1.0, 0.0), /*h=*/1.0, /*d0=*/0.0});
        return Preset{name, spec.family_label(), "quadratic-gamma-constant-moduli",
                      "two-mode flow with gamma = c1 t^2 and constant moduli",
                      spec, exp_ikz(1.0, 1.0), exp_ikz(0.5, 2.0),
                      LabelGrid{-2.0, 2.0, -0.5, 0.5, 16, 16}, 0.0, 2.0};
    }
    if (name == "example-4-5") {
        FamilySpec spec = FamilySpec::lin_indep_case4(
            {/*c1=*/1.0, /*c2=*/1.0, /*w=*/2.0, /*p=*/2.0, ScalarPath::linear(1.0, 0.0),
             /*h=*/1.0, /*d0=*/0.0});
        return Preset{name, spec.family_label(), "full-quadratic-gamma",
                      "two-mode flow with gamma = c1 t^2 + c2 t",
                      spec, exp_ikz(1.0, 1.0), exp_ikz(0.5, 2.0),
                      LabelGrid{-2.0, 2.0, -0.5, 0.5, 16, 16}, 0.0, 2.0};
    }
    if (name == "example-5-1") {
        // complex forcing Xi(t) = nu0 e^{i nu0 t}; the phase exponent is complex,
        // so the modulus constraint is reported rather than asserted
        double nu0 = 1.0, lam = 0.3;
        ComplexPath xi = ComplexPath::re_im(ScalarPath::sinusoid(nu0, nu0, M_PI / 2.0),
                                            ScalarPath::sinusoid(nu0, nu0, 0.0));
        FamilySpec spec = FamilySpec::lin_dep_general({Complex{lam, 0.0},
                                                       ScalarPath::constant(lam),
                                                       ScalarPath::linear(1.0, 0.0), xi});
        Expr f0 = exp_ikz(1.0, 1.0);
        return Preset{name, spec.family_label(), "oscillatory-forcing-scalar-multiple",
                      "scalar-multiple flow driven by a rotating complex forcing term",
                      spec, f0, Expr::scale({lam, 0.0}, f0),
                      LabelGrid{-2.0, 2.0, -0.5, 0.5, 16, 16}, 0.0, 2.0};
    }
    if (name == "example-5-2") {
        double r1 = 1.0;
        FamilySpec spec = FamilySpec::general_flat(
            {ScalarPath::constant(r1),
             ScalarPath::linear((1.0 + r1 * r1) / (r1 * r1), 0.0),
             ScalarPath::poly({0.0, 0.0, 3.0 * (1.0 + r1 * r1)})});
        return Preset{name, spec.family_label(), "flat-gamma-cubic-phase",
                      "two-mode flow with gamma = 0 and a cubic phase drift",
                      spec, exp_ikz(1.0, 1.0), exp_ikz(0.5, 2.0),
                      LabelGrid{-2.0, 2.0, -0.5, 0.5, 16, 16}, 0.0, 1.5};
    }
    if (name == "example-5-3") {
        // |C4| = |sin t|; the moduli are C^1 away from the zeros of sin
        FamilySpec spec = FamilySpec::general({ScalarPath::sqrt_quad(1.0, 0.0, 1.0),
                                               ScalarPath::sqrt_quad(1.0, 0.0, 1.0),
                                               ScalarPath::sinusoid(1.0, 1.0, 0.0),
                                               ScalarPath::constant(0.7)});
        return Preset{name, spec.family_label(), "oscillating-cross-coupling",
                      "general two-mode flow with oscillating cross coupling |C4| = |sin t|",
                      spec, exp_ikz(1.0, 1.0), exp_ikz(0.5, 2.0),
                      LabelGrid{-2.0, 2.0, -0.5, 0.5, 16, 16}, 0.2, 2.9};
    }
    raise(ErrorCode::UnknownPreset, "unknown preset: " + name);
}

} // namespace

Preset preset(const std::string& name) {
    if (name == "kirchhoff") return make_kirchhoff(1.0, 1.0, 0.5, 1.0);
    if (name == "gerstner") return make_gerstner(1.0, 9.81);
    return make_example(name);
}

std::vector<std::string> preset_names() {
    return {"kirchhoff",   "gerstner",    "example-4-1", "example-4-2", "example-4-3",
            "example-4-4", "example-4-5", "example-5-1", "example-5-2", "example-5-3"};
}

} // namespace flowlab
