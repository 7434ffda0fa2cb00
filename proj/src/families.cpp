#include "flowlab/families.hpp"

#include <cmath>
#include <limits>
#include <variant>

namespace flowlab {

namespace {

constexpr double kEdgeTol = 1e-12;     // strict-interior margin for validity predicates
constexpr double kZeroBranchTol = 1e-12;
constexpr double kInitTol = 1e-9;      // construction-time normalization checks
constexpr double kPairTol = 1e-10;     // g0 = lambda f0 sampling tolerance
constexpr int kPredicateSamples = 65;  // dense sampling of [0, t] for integrand safety

/// Closed-form polar data of one variant at a single time.
struct RawFrame {
    double R2 = 1.0, R2_t = 0.0;
    double rho = 0.0, rho_t = 0.0;
    double phi = 0.0, phi_t = 0.0;
    double gamma = 0.0, gamma_t = 0.0, gamma_tt = 0.0;
    Complex P{}, P_t{};
};

} // namespace

struct FamilySpec::Impl {
    FamilyKind kind;
    CombinationMode mode;
    double modulus_const = 1.0;
    Complex lambda{};
    double sigma = 1.0;  // sign of the r^2 phi' term in the phase integrand

    std::variant<LinDepCommutingParams, LinDepScaledParams, LinDepGeneralParams,
                 LinIndepCase1Params, LinIndepCase2Params, LinIndepCase3Params,
                 LinIndepCase4Params, GeneralFlatParams, GeneralParams>
        params;

    RawFrame raw_at(double t) const;
    double edge_margin(double t) const;  // > 0 inside the validity set
    bool needs_interval_scan() const;
};

namespace {

using Impl = FamilySpec::Impl;

std::shared_ptr<const Impl> make_impl(Impl impl) {
    return std::make_shared<const Impl>(std::move(impl));
}

double sq(double x) { return x * x; }

} // namespace

RawFrame Impl::raw_at(double t) const {
    RawFrame f;
    switch (kind) {
        case FamilyKind::LinDepCommuting: {
            const auto& p = std::get<LinDepCommutingParams>(params);
            double r = p.r.value(t), rt = p.r.derivative(t);
            double ch = std::cosh(r), sh = std::sinh(r);
            f.R2 = ch * ch;
            f.R2_t = 2.0 * ch * sh * rt;
            f.rho = sh * sh;
            f.rho_t = 2.0 * sh * ch * rt;
            f.phi = -p.k0;
            return f;
        }
        case FamilyKind::LinDepScaled: {
            const auto& p = std::get<LinDepScaledParams>(params);
            double r = p.r.value(t), rt = p.r.derivative(t);
            f.rho = r * r;
            f.rho_t = 2.0 * r * rt;
            f.R2 = 1.0 - abs2(lambda) + f.rho;
            f.R2_t = f.rho_t;
            f.phi = p.phi.value(t);
            f.phi_t = p.phi.derivative(t);
            f.P = Complex{p.c * t + p.d, 0.0};
            f.P_t = Complex{p.c, 0.0};
            return f;
        }
        case FamilyKind::LinDepGeneral: {
            const auto& p = std::get<LinDepGeneralParams>(params);
            double r = p.r.value(t), rt = p.r.derivative(t);
            f.rho = r * r;
            f.rho_t = 2.0 * r * rt;
            f.R2 = 1.0 - abs2(lambda) + f.rho;
            f.R2_t = f.rho_t;
            f.phi = p.phi.value(t);
            f.phi_t = p.phi.derivative(t);
            f.P = -kI * p.xi.value(t);
            f.P_t = -kI * p.xi.derivative(t);
            return f;
        }
        case FamilyKind::LinIndepCase1: {
            const auto& p = std::get<LinIndepCase1Params>(params);
            double r = p.r.value(t), rt = p.r.derivative(t);
            f.rho = r * r;
            f.rho_t = 2.0 * r * rt;
            f.R2 = 1.0 + f.rho;
            f.R2_t = f.rho_t;
            f.phi = p.psi.value(t);
            f.phi_t = p.psi.derivative(t);
            f.P = Complex{p.h * t + p.d0, 0.0};
            f.P_t = Complex{p.h, 0.0};
            return f;
        }
        case FamilyKind::LinIndepCase2: {
            const auto& p = std::get<LinIndepCase2Params>(params);
            f.R2 = (p.w * t + p.p + p.c2) / (2.0 * p.c2);
            f.R2_t = p.w / (2.0 * p.c2);
            f.rho = (p.w * t + p.p - p.c2) / (2.0 * p.c2);
            f.rho_t = f.R2_t;
            f.phi = p.psi.value(t);
            f.phi_t = p.psi.derivative(t);
            f.gamma = p.c2 * t;
            f.gamma_t = p.c2;
            f.P = Complex{p.h * t + p.d0, 0.0};
            f.P_t = Complex{p.h, 0.0};
            return f;
        }
        case FamilyKind::LinIndepCase3: {
            const auto& p = std::get<LinIndepCase3Params>(params);
            f.R2 = (p.w + p.c1) / (2.0 * p.c1);
            f.rho = (p.w - p.c1) / (2.0 * p.c1);
            f.phi = p.psi.value(t);
            f.phi_t = p.psi.derivative(t);
            f.gamma = p.c1 * t * t;
            f.gamma_t = 2.0 * p.c1 * t;
            f.gamma_tt = 2.0 * p.c1;
            f.P = Complex{p.h * t + p.d0, 0.0};
            f.P_t = Complex{p.h, 0.0};
            return f;
        }
        case FamilyKind::LinIndepCase4: {
            const auto& p = std::get<LinIndepCase4Params>(params);
            double den = 2.0 * (p.c1 * t + p.c2);
            double num_r = (p.w + p.c1) * t + p.p + p.c2;
            double num_s = (p.w - p.c1) * t + p.p - p.c2;
            f.R2 = num_r / den;
            f.R2_t = ((p.w + p.c1) * den - num_r * 2.0 * p.c1) / (den * den);
            f.rho = num_s / den;
            f.rho_t = ((p.w - p.c1) * den - num_s * 2.0 * p.c1) / (den * den);
            f.phi = p.psi.value(t);
            f.phi_t = p.psi.derivative(t);
            f.gamma = p.c1 * t * t + p.c2 * t;
            f.gamma_t = 2.0 * p.c1 * t + p.c2;
            f.gamma_tt = 2.0 * p.c1;
            f.P = Complex{p.h * t + p.d0, 0.0};
            f.P_t = Complex{p.h, 0.0};
            return f;
        }
        case FamilyKind::GeneralFlat: {
            const auto& p = std::get<GeneralFlatParams>(params);
            double r = p.r.value(t), rt = p.r.derivative(t);
            f.rho = r * r;
            f.rho_t = 2.0 * r * rt;
            f.R2 = 1.0 + f.rho;
            f.R2_t = f.rho_t;
            f.phi = p.phi.value(t);
            f.phi_t = p.phi.derivative(t);
            f.P = Complex{p.d1.value(t), 0.0};
            f.P_t = Complex{p.d1.derivative(t), 0.0};
            return f;
        }
        case FamilyKind::General: {
            const auto& p = std::get<GeneralParams>(params);
            double s = p.d1.value(t) + p.d2.value(t);
            double s_t = p.d1.derivative(t) + p.d2.derivative(t);
            double c = p.c4_mod.value(t);
            double c_t = p.c4_mod.derivative(t);
            double lam = std::sqrt(s * s - 4.0 * c * c);  // Lambda'
            double lam_t = (s * s_t - 4.0 * c * c_t) / lam;  // Lambda''
            f.R2 = (s + lam) / (2.0 * lam);
            f.rho = (s - lam) / (2.0 * lam);
            double common = (s_t * lam - s * lam_t) / (2.0 * lam * lam);
            f.R2_t = common;
            f.rho_t = common;
            f.phi = p.phi.value(t);
            f.phi_t = p.phi.derivative(t);
            f.gamma = std::numeric_limits<double>::quiet_NaN();  // filled by quadrature
            f.gamma_t = lam;
            f.gamma_tt = lam_t;
            f.P = Complex{p.d1.value(t), 0.0};
            f.P_t = Complex{p.d1.derivative(t), 0.0};
            return f;
        }
    }
    raise(ErrorCode::InvalidManifest, "FamilySpec: corrupt variant");
}

double Impl::edge_margin(double t) const {
    if (t < 0.0) return t;
    switch (kind) {
        case FamilyKind::LinIndepCase2: {
            const auto& p = std::get<LinIndepCase2Params>(params);
            double r2 = (p.w * t + p.p + p.c2) / (2.0 * p.c2);
            double rho = (p.w * t + p.p - p.c2) / (2.0 * p.c2);
            if (std::abs(rho) <= kZeroBranchTol && std::abs(p.w / (2.0 * p.c2)) <= kZeroBranchTol)
                return r2 - kEdgeTol;  // beta identically zero branch
            return std::min(r2, rho) - kEdgeTol;
        }
        case FamilyKind::LinIndepCase4: {
            const auto& p = std::get<LinIndepCase4Params>(params);
            double den = p.c1 * t + p.c2;
            if (std::abs(den) <= kEdgeTol) return -1.0;
            double r2 = ((p.w + p.c1) * t + p.p + p.c2) / (2.0 * den);
            double rho = ((p.w - p.c1) * t + p.p - p.c2) / (2.0 * den);
            return std::min(r2, rho) - kEdgeTol;
        }
        case FamilyKind::General: {
            const auto& p = std::get<GeneralParams>(params);
            double s = p.d1.value(t) + p.d2.value(t);
            double c = std::abs(p.c4_mod.value(t));
            return s - 2.0 * c - kEdgeTol;
        }
        default:
            return 1.0;  // remaining variants are valid on all of t >= 0
    }
}

bool Impl::needs_interval_scan() const {
    switch (kind) {
        case FamilyKind::LinIndepCase2:
        case FamilyKind::LinIndepCase4:
        case FamilyKind::General:
            return true;
        default:
            return false;
    }
}

FamilySpec FamilySpec::lin_dep_commuting(LinDepCommutingParams p) {
    if (std::abs(p.r.value(0.0)) > kInitTol)
        raise(ErrorCode::InvalidManifest, "lin_dep_commuting: r(0) must be 0 (X(0) = I)");
    Impl impl{FamilyKind::LinDepCommuting, CombinationMode::PairCombination, 1.0, {}, 1.0,
              std::move(p)};
    return FamilySpec(make_impl(std::move(impl)));
}

namespace {

void check_lin_dep_init(const Complex& lambda, const ScalarPath& r, const ScalarPath& phi,
                        const char* who) {
    double mod = std::abs(lambda);
    if (!(mod > 0.0 && mod < 1.0))
        raise(ErrorCode::InvalidManifest, std::string(who) + ": |lambda| must lie in (0,1)");
    Complex beta0 = std::polar(r.value(0.0), phi.value(0.0));
    if (std::abs(beta0 - lambda) > kInitTol)
        raise(ErrorCode::InvalidManifest,
              std::string(who) + ": r(0) e^{i phi(0)} must equal lambda");
}

} // namespace

FamilySpec FamilySpec::lin_dep_scaled(LinDepScaledParams p) {
    check_lin_dep_init(p.lambda, p.r, p.phi, "lin_dep_scaled");
    Impl impl{FamilyKind::LinDepScaled, CombinationMode::ScalarMultiple,
              1.0 - abs2(p.lambda), p.lambda, -1.0, std::move(p)};
    return FamilySpec(make_impl(std::move(impl)));
}

FamilySpec FamilySpec::lin_dep_general(LinDepGeneralParams p) {
    check_lin_dep_init(p.lambda, p.r, p.phi, "lin_dep_general");
    Impl impl{FamilyKind::LinDepGeneral, CombinationMode::ScalarMultiple,
              1.0 - abs2(p.lambda), p.lambda, -1.0, std::move(p)};
    return FamilySpec(make_impl(std::move(impl)));
}

FamilySpec FamilySpec::lin_indep_case1(LinIndepCase1Params p) {
    Impl impl{FamilyKind::LinIndepCase1, CombinationMode::PairCombination, 1.0, {}, 1.0,
              std::move(p)};
    return FamilySpec(make_impl(std::move(impl)));
}

FamilySpec FamilySpec::lin_indep_case2(LinIndepCase2Params p) {
    if (p.c2 == 0.0) raise(ErrorCode::InvalidManifest, "lin_indep_case2: c2 must be nonzero");
    Impl impl{FamilyKind::LinIndepCase2, CombinationMode::PairCombination, 1.0, {}, 1.0,
              std::move(p)};
    return FamilySpec(make_impl(std::move(impl)));
}

FamilySpec FamilySpec::lin_indep_case3(LinIndepCase3Params p) {
    if (p.c1 == 0.0) raise(ErrorCode::InvalidManifest, "lin_indep_case3: c1 must be nonzero");
    double r2 = (p.w + p.c1) / (2.0 * p.c1);
    double rho = (p.w - p.c1) / (2.0 * p.c1);
    if (!(r2 > 0.0) || rho < 0.0)
        raise(ErrorCode::InvalidManifest, "lin_indep_case3: requires w/c1 >= 1");
    Impl impl{FamilyKind::LinIndepCase3, CombinationMode::PairCombination, 1.0, {}, 1.0,
              std::move(p)};
    return FamilySpec(make_impl(std::move(impl)));
}

FamilySpec FamilySpec::lin_indep_case4(LinIndepCase4Params p) {
    if (p.c1 == 0.0 || p.c2 == 0.0)
        raise(ErrorCode::InvalidManifest, "lin_indep_case4: c1 and c2 must be nonzero");
    Impl impl{FamilyKind::LinIndepCase4, CombinationMode::PairCombination, 1.0, {}, 1.0,
              std::move(p)};
    return FamilySpec(make_impl(std::move(impl)));
}

FamilySpec FamilySpec::general_flat(GeneralFlatParams p) {
    Impl impl{FamilyKind::GeneralFlat, CombinationMode::PairCombination, 1.0, {}, 1.0,
              std::move(p)};
    return FamilySpec(make_impl(std::move(impl)));
}

FamilySpec FamilySpec::general(GeneralParams p) {
    Impl impl{FamilyKind::General, CombinationMode::PairCombination, 1.0, {}, 1.0,
              std::move(p)};
    return FamilySpec(make_impl(std::move(impl)));
}

FamilyKind FamilySpec::kind() const { return impl_->kind; }
CombinationMode FamilySpec::mode() const { return impl_->mode; }
double FamilySpec::modulus_constant() const { return impl_->modulus_const; }
Complex FamilySpec::lambda() const { return impl_->lambda; }

bool FamilySpec::conservative_on(double t_lo, double t_hi) const {
    if (impl_->kind != FamilyKind::LinDepGeneral) return true;
    const auto& p = std::get<LinDepGeneralParams>(impl_->params);
    for (int i = 0; i < kPredicateSamples; ++i) {
        double t = t_lo + (t_hi - t_lo) * double(i) / double(kPredicateSamples - 1);
        if (std::abs(p.xi.value(t).real()) > 1e-12) return false;
    }
    return true;
}

bool FamilySpec::time_valid(double t) const {
    if (!(t >= 0.0)) return false;
    if (impl_->edge_margin(t) <= 0.0) return false;
    if (impl_->needs_interval_scan()) {
        for (int i = 0; i < kPredicateSamples; ++i) {
            double s = t * double(i) / double(kPredicateSamples - 1);
            // the phase integrand must stay finite on all of [0, t]
            RawFrame rf;
            try {
                rf = impl_->raw_at(s);
            } catch (const FlowError&) {
                return false;
            }
            if (!(rf.R2 > kEdgeTol)) return false;
            if (!std::isfinite(rf.R2) || !std::isfinite(rf.rho)) return false;
            if (impl_->kind == FamilyKind::General && impl_->edge_margin(s) <= 0.0) return false;
        }
    }
    return true;
}

std::string FamilySpec::validity_description() const {
    switch (impl_->kind) {
        case FamilyKind::LinIndepCase2: {
            const auto& p = std::get<LinIndepCase2Params>(impl_->params);
            return "t >= 0 with (w t + p)/c2 > 1 (w=" + std::to_string(p.w) +
                   ", p=" + std::to_string(p.p) + ", c2=" + std::to_string(p.c2) + ")";
        }
        case FamilyKind::LinIndepCase4:
            return "t >= 0 with |(w t + p)/(c1 t + c2)| > 1 and c1 t + c2 != 0";
        case FamilyKind::General:
            return "t >= 0 with D1(s) + D2(s) > 2 |C4(s)| for all s in [0, t]";
        default:
            return "t >= 0";
    }
}

void FamilySpec::require_valid(double t) const {
    if (!time_valid(t))
        raise(ErrorCode::OutsideValidity,
              "time t=" + std::to_string(t) + " violates validity predicate: " +
                  validity_description());
}

CoefficientPath FamilySpec::coefficients_at(double t, const QuadratureConfig& cfg) const {
    return frame_at(t, cfg).path;
}

CoefficientFrame FamilySpec::frame_at(double t, const QuadratureConfig& cfg) const {
    require_valid(t);
    const Impl& im = *impl_;

    CoefficientFrame out;
    out.path.mode = im.mode;

    if (im.kind == FamilyKind::LinDepCommuting) {
        const auto& p = std::get<LinDepCommutingParams>(im.params);
        double r = p.r.value(t), rt = p.r.derivative(t);
        Complex eik = std::polar(1.0, -p.k0);
        double ch = std::cosh(r), sh = std::sinh(r);
        out.path.alpha = Complex{ch, 0.0};
        out.path.alpha_t = Complex{rt * sh, 0.0};
        out.path.beta = eik * sh;
        out.path.beta_t = eik * (rt * ch);
        out.R2 = ch * ch;
        out.R2_t = 2.0 * ch * sh * rt;
        out.rho = sh * sh;
        out.rho_t = 2.0 * sh * ch * rt;
        return out;
    }

    RawFrame rf = im.raw_at(t);

    Complex phase = integrate(
        [&im](double s) {
            RawFrame r = im.raw_at(s);
            return (r.P + im.sigma * r.rho * r.phi_t) / r.R2;
        },
        0.0, t, cfg);
    Complex phase_t = (rf.P + im.sigma * rf.rho * rf.phi_t) / rf.R2;

    double bigR = std::sqrt(rf.R2);
    double bigR_t = rf.R2_t / (2.0 * bigR);

    double r_mod, r_mod_t;
    if (rf.rho > kZeroBranchTol) {
        r_mod = std::sqrt(rf.rho);
        r_mod_t = rf.rho_t / (2.0 * r_mod);
    } else {
        // beta vanishes (identically-zero branch, or an isolated zero where
        // the modulus is not C^1; values are exact, the derivative is taken 0)
        r_mod = 0.0;
        r_mod_t = 0.0;
    }

    Complex ei_phase = std::exp(kI * phase);  // phase may be complex (LinDepGeneral)
    Complex ei_phi = std::polar(1.0, rf.phi);

    double gamma = rf.gamma;
    if (im.kind == FamilyKind::General) {
        const auto& p = std::get<GeneralParams>(im.params);
        gamma = integrate(
                    [&p](double s) {
                        double sum = p.d1.value(s) + p.d2.value(s);
                        double c = p.c4_mod.value(s);
                        return Complex{std::sqrt(sum * sum - 4.0 * c * c), 0.0};
                    },
                    0.0, t, cfg)
                    .real();
    }

    out.path.alpha = bigR * ei_phase;
    out.path.alpha_t = (Complex{bigR_t, 0.0} + kI * phase_t * bigR) * ei_phase;
    out.path.beta = r_mod * ei_phi;
    out.path.beta_t = (Complex{r_mod_t, 0.0} + kI * r_mod * rf.phi_t) * ei_phi;
    out.path.gamma = gamma;
    out.path.gamma_t = rf.gamma_t;

    out.prescribed = rf.P;
    out.prescribed_t = rf.P_t;
    out.R2 = rf.R2;
    out.R2_t = rf.R2_t;
    out.rho = rf.rho;
    out.rho_t = rf.rho_t;
    out.gamma_tt = rf.gamma_tt;

    if (im.mode == CombinationMode::PairCombination) {
        Complex eig = std::polar(1.0, gamma);
        Complex ab = out.path.beta * std::conj(out.path.alpha);
        out.w = rf.gamma_t * ab * eig;
        Complex ab_t = out.path.beta_t * std::conj(out.path.alpha) +
                       out.path.beta * std::conj(out.path.alpha_t);
        out.w_t = (rf.gamma_tt * ab + rf.gamma_t * ab_t +
                   kI * sq(rf.gamma_t) * ab) * eig;
    }
    return out;
}

std::optional<FamilySpec::CommutingData> FamilySpec::commuting_data() const {
    if (impl_->kind != FamilyKind::LinDepCommuting) return std::nullopt;
    const auto& p = std::get<LinDepCommutingParams>(impl_->params);
    return CommutingData{p.r, p.k0};
}

std::string FamilySpec::family_label() const {
    switch (impl_->kind) {
        case FamilyKind::LinDepCommuting: return "lin_dep_commuting";
        case FamilyKind::LinDepScaled:    return "lin_dep_scaled";
        case FamilyKind::LinDepGeneral:   return "lin_dep_general";
        case FamilyKind::LinIndepCase1:   return "lin_indep_case1";
        case FamilyKind::LinIndepCase2:   return "lin_indep_case2";
        case FamilyKind::LinIndepCase3:   return "lin_indep_case3";
        case FamilyKind::LinIndepCase4:   return "lin_indep_case4";
        case FamilyKind::GeneralFlat:     return "general_flat";
        case FamilyKind::General:         return "general";
    }
    return "unknown";
}

FgValues fg_from_coefficients(const CoefficientPath& c, Complex lambda, Complex f0v,
                              Complex g0v) {
    FgValues out;
    if (c.mode == CombinationMode::ScalarMultiple) {
        if (std::abs(f0v) < 1e-14)
            raise(ErrorCode::ZeroDenominator, "fg_at: f0 vanishes at the queried label");
        if (std::abs(g0v / f0v - lambda) > kPairTol)
            raise(ErrorCode::MismatchedInitialPair,
                  "fg_at: sampled g0/f0 deviates from lambda beyond 1e-10");
        out.f = c.alpha * f0v;
        out.g = c.beta * f0v;
        out.f_t = c.alpha_t * f0v;
        out.g_t = c.beta_t * f0v;
        return out;
    }
    Complex eig = std::polar(1.0, c.gamma);
    out.f = c.alpha * f0v + eig * c.beta * g0v;
    out.g = std::conj(c.beta) * f0v + eig * std::conj(c.alpha) * g0v;
    out.f_t = c.alpha_t * f0v + eig * (c.beta_t + kI * c.gamma_t * c.beta) * g0v;
    out.g_t = std::conj(c.beta_t) * f0v +
              eig * (std::conj(c.alpha_t) + kI * c.gamma_t * std::conj(c.alpha)) * g0v;
    return out;
}

FgValues fg_at(const FamilySpec& spec, const Expr& f0, const Expr& g0, double t, Complex z,
               const QuadratureConfig& cfg) {
    CoefficientPath c = spec.coefficients_at(t, cfg);
    return fg_from_coefficients(c, spec.lambda(), f0.eval(z), g0.eval(z));
}

} // namespace flowlab
