#include "flowlab/flow.hpp"

#include <cmath>

namespace flowlab {

namespace {

void apply_corruption(const Corruption& c, double t, CoefficientPath& path) {
    if (t <= 0.0) return;
    switch (c.kind) {
        case Corruption::Kind::BetaScale:
            path.beta *= c.amount;
            path.beta_t *= c.amount;
            break;
        case Corruption::Kind::GammaOffset:
            path.gamma += c.amount;
            break;
        case Corruption::Kind::PrescribedOffset: {
            Complex rot = std::polar(1.0, c.amount * t);
            path.alpha_t = (path.alpha_t + kI * c.amount * path.alpha) * rot;
            path.alpha *= rot;
            break;
        }
        case Corruption::Kind::AsymmetricBeta:
            break;  // applied at fg assembly
    }
}

} // namespace

LabeledFlow::LabeledFlow(FamilySpec spec, Expr f0, Expr g0, LabelGrid domain)
    : spec_(std::move(spec)), f0_(std::move(f0)), g0_(std::move(g0)), domain_(domain) {
    domain_.validate();
    auto F0 = f0_.antiderivative();
    auto G0 = g0_.antiderivative();
    if (F0 && G0) {
        F0_ = *F0;
        G0_ = *G0;
    }
}

LabeledFlow LabeledFlow::from_preset(const Preset& p) {
    return LabeledFlow(p.spec, p.f0, p.g0, p.domain_hint);
}

CoefficientPath LabeledFlow::coefficients(double t, const QuadratureConfig& cfg) const {
    CoefficientPath path = spec_.coefficients_at(t, cfg);
    if (corruption_) apply_corruption(*corruption_, t, path);
    return path;
}

CoefficientFrame LabeledFlow::frame(double t, const QuadratureConfig& cfg) const {
    CoefficientFrame fr = spec_.frame_at(t, cfg);
    if (corruption_) apply_corruption(*corruption_, t, fr.path);
    return fr;
}

FgValues LabeledFlow::fg_with(const CoefficientPath& c, double t, Complex z) const {
    Complex f0v = f0_.eval(z), g0v = g0_.eval(z);
    if (corruption_ && corruption_->kind == Corruption::Kind::AsymmetricBeta && t > 0.0) {
        CoefficientPath skew = c;
        skew.beta *= 1.0 + corruption_->amount;
        skew.beta_t *= 1.0 + corruption_->amount;
        FgValues fpart = fg_from_coefficients(skew, spec_.lambda(), f0v, g0v);
        FgValues gpart = fg_from_coefficients(c, spec_.lambda(), f0v, g0v);
        return {fpart.f, gpart.g, fpart.f_t, gpart.g_t};
    }
    return fg_from_coefficients(c, spec_.lambda(), f0v, g0v);
}

FgValues LabeledFlow::fg(double t, Complex z, const QuadratureConfig& cfg) const {
    return fg_with(coefficients(t, cfg), t, z);
}

Complex LabeledFlow::antiderivative_value(const Expr& fn, const std::optional<Expr>& closed,
                                          double, Complex z, const QuadratureConfig& cfg) const {
    if (closed) return closed->eval(z);
    // straight segment from 0 to z; the integrand is analytic on the simply
    // connected label domain so the path does not matter
    return integrate([&fn, z](double s) { return fn.eval(s * z) * z; }, 0.0, 1.0, cfg);
}

Complex LabeledFlow::position_with(const CoefficientPath& c, Complex z,
                                   const QuadratureConfig& cfg) const {
    Complex F0v = antiderivative_value(f0_, F0_, 0.0, z, cfg);
    if (c.mode == CombinationMode::ScalarMultiple) {
        // F = alpha F0, G = beta F0
        return c.alpha * F0v + std::conj(c.beta * F0v);
    }
    Complex G0v = antiderivative_value(g0_, G0_, 0.0, z, cfg);
    Complex eig = std::polar(1.0, c.gamma);
    Complex F = c.alpha * F0v + eig * c.beta * G0v;
    Complex G = std::conj(c.beta) * F0v + eig * std::conj(c.alpha) * G0v;
    return F + std::conj(G);
}

Complex LabeledFlow::velocity_with(const CoefficientPath& c, Complex z,
                                   const QuadratureConfig& cfg) const {
    Complex F0v = antiderivative_value(f0_, F0_, 0.0, z, cfg);
    if (c.mode == CombinationMode::ScalarMultiple) {
        return c.alpha_t * F0v + std::conj(c.beta_t * F0v);
    }
    Complex G0v = antiderivative_value(g0_, G0_, 0.0, z, cfg);
    Complex eig = std::polar(1.0, c.gamma);
    Complex zeta_t = eig * (c.beta_t + kI * c.gamma_t * c.beta);
    Complex eta_t = eig * (std::conj(c.alpha_t) + kI * c.gamma_t * std::conj(c.alpha));
    Complex Ft = c.alpha_t * F0v + zeta_t * G0v;
    Complex Gt = std::conj(c.beta_t) * F0v + eta_t * G0v;
    return Ft + std::conj(Gt);
}

Complex LabeledFlow::position(double t, Complex z, const QuadratureConfig& cfg) const {
    return position_with(coefficients(t, cfg), z, cfg);
}

Complex LabeledFlow::velocity(double t, Complex z, const QuadratureConfig& cfg) const {
    return velocity_with(coefficients(t, cfg), z, cfg);
}

FlowSample LabeledFlow::kinematics_with(const CoefficientPath& c, double t, Complex z,
                                        const QuadratureConfig& cfg) const {
    FgValues v = fg_with(c, t, z);
    FlowSample s;
    s.t = t;
    s.a = z.real();
    s.b = z.imag();

    Complex pos = position_with(c, z, cfg);
    Complex vel = velocity_with(c, z, cfg);
    s.x = pos.real();
    s.y = pos.imag();
    s.u = vel.real();
    s.v = vel.imag();

    s.J = abs2(v.f) - abs2(v.g);

    // label-gradient frame: x_a + i y_a = f + conj g, x_b + i y_b = i(f - conj g)
    Complex pa = v.f + std::conj(v.g);
    Complex pb = kI * (v.f - std::conj(v.g));
    Complex pat = v.f_t + std::conj(v.g_t);
    Complex pbt = kI * (v.f_t - std::conj(v.g_t));
    double xa = pa.real(), ya = pa.imag();
    double xb = pb.real(), yb = pb.imag();
    double xat = pat.real(), yat = pat.imag();
    double xbt = pbt.real(), ybt = pbt.imag();
    s.omega = (yat * yb - ybt * ya + xat * xb - xbt * xa) / s.J;

    Complex key = -kI * (v.f_t * std::conj(v.f) - std::conj(v.g_t) * v.g);
    s.K = key.real();
    s.K_resid = key.imag();
    return s;
}

FlowSample LabeledFlow::kinematics(double t, Complex z, const QuadratureConfig& cfg) const {
    return kinematics_with(coefficients(t, cfg), t, z, cfg);
}

double LabeledFlow::theta_x(double t, Complex z, double dt, const QuadratureConfig& cfg) const {
    if (!(dt >= 1e-6 && dt <= 1e-3))
        raise(ErrorCode::InvalidManifest, "theta_x: dt outside [1e-6, 1e-3]");
    spec_.require_valid(t - dt);
    spec_.require_valid(t + dt);
    FlowSample hi = kinematics(t + dt, z, cfg);
    FlowSample lo = kinematics(t - dt, z, cfg);
    double k_dot = (hi.K - lo.K) / (2.0 * dt);
    FlowSample here = kinematics(t, z, cfg);
    return 2.0 * k_dot / here.J;
}

Trajectory LabeledFlow::trajectory(Complex z0, const std::vector<double>& times,
                                   const QuadratureConfig& cfg) const {
    Trajectory out;
    out.points.reserve(times.size());
    for (double t : times) {
        CoefficientPath c = coefficients(t, cfg);
        Complex pos = position_with(c, z0, cfg);
        Complex vel = velocity_with(c, z0, cfg);
        out.points.push_back({t, pos.real(), pos.imag(), vel.real(), vel.imag()});
    }
    if (times.size() >= 2) {
        // RK4 replay of x' = u(t), y' = v(t) along this particle; the right
        // side is state-independent so the inner stages collapse pairwise
        auto vel_at = [this, z0, &cfg](double t) { return velocity(t, z0, cfg); };
        Complex x{out.points.front().x, out.points.front().y};
        double worst = 0.0;
        for (size_t i = 0; i + 1 < times.size(); ++i) {
            double t0 = times[i], t1 = times[i + 1];
            const int steps = 16;
            double h = (t1 - t0) / double(steps);
            for (int s = 0; s < steps; ++s) {
                double ts = t0 + h * double(s);
                Complex k1 = vel_at(ts);
                Complex k2 = vel_at(ts + 0.5 * h);
                Complex k4 = vel_at(ts + h);
                x += h / 6.0 * (k1 + 4.0 * k2 + k4);
            }
            Complex ref{out.points[i + 1].x, out.points[i + 1].y};
            worst = std::max(worst, std::abs(x - ref));
        }
        out.replay_residual = worst;
    }
    return out;
}

std::vector<FlowSample> LabeledFlow::grid_sample(const LabelGrid& grid, double t,
                                                 const QuadratureConfig& cfg) const {
    grid.validate();
    CoefficientPath c = coefficients(t, cfg);
    std::vector<FlowSample> out;
    out.reserve(size_t(grid.size()));
    for (int j = 0; j < grid.nb; ++j) {
        for (int i = 0; i < grid.na; ++i) {
            Complex z{grid.a_at(i), grid.b_at(j)};
            FlowSample s = kinematics_with(c, t, z, cfg);
            if (!(s.J > 0.0))
                raise(ErrorCode::SensePreservationViolated,
                      "grid_sample: J <= 0 at label (" + std::to_string(z.real()) + ", " +
                          std::to_string(z.imag()) + ")");
            out.push_back(s);
        }
    }
    return out;
}

HarmonicMap LabeledFlow::map_with(const CoefficientPath& c, double t) const {
    if (c.mode == CombinationMode::ScalarMultiple) {
        Expr fp = Expr::scale(c.alpha, f0_);
        Expr gp = Expr::scale(c.beta, f0_);
        return HarmonicMap::from_derivatives(fp, gp);
    }
    Complex beta_f = c.beta;
    if (corruption_ && corruption_->kind == Corruption::Kind::AsymmetricBeta && t > 0.0)
        beta_f *= 1.0 + corruption_->amount;
    Complex eig = std::polar(1.0, c.gamma);
    Expr fp = Expr::sum(Expr::scale(c.alpha, f0_), Expr::scale(eig * beta_f, g0_));
    Expr gp = Expr::sum(Expr::scale(std::conj(c.beta), f0_),
                        Expr::scale(eig * std::conj(c.alpha), g0_));
    return HarmonicMap::from_derivatives(fp, gp);
}

HarmonicMap LabeledFlow::map_at(double t, const QuadratureConfig& cfg) const {
    return map_with(coefficients(t, cfg), t);
}

double LabeledFlow::k_expected(double t, Complex z, const QuadratureConfig& cfg) const {
    CoefficientFrame fr = spec_.frame_at(t, cfg);  // uncorrupted by design
    double f2 = abs2(f0_.eval(z));
    if (spec_.mode() == CombinationMode::ScalarMultiple)
        return fr.prescribed.real() * f2;
    double g2 = abs2(g0_.eval(z));
    Complex cross = std::conj(f0_.eval(z)) * g0_.eval(z);
    return fr.prescribed.real() * (f2 - g2) +
           fr.path.gamma_t * (fr.R2 + fr.rho) * g2 + 2.0 * (fr.w * cross).real();
}

double LabeledFlow::k_t_expected(double t, Complex z, const QuadratureConfig& cfg) const {
    CoefficientFrame fr = spec_.frame_at(t, cfg);
    double f2 = abs2(f0_.eval(z));
    if (spec_.mode() == CombinationMode::ScalarMultiple)
        return fr.prescribed_t.real() * f2;
    double g2 = abs2(g0_.eval(z));
    Complex cross = std::conj(f0_.eval(z)) * g0_.eval(z);
    // d/dt [gamma' (R^2 + rho)] = gamma'' (R^2 + rho) + gamma' (R2_t + rho_t)
    return fr.prescribed_t.real() * (f2 - g2) +
           (fr.gamma_tt * (fr.R2 + fr.rho) + fr.path.gamma_t * (fr.R2_t + fr.rho_t)) * g2 +
           2.0 * (fr.w_t * cross).real();
}

LabeledFlow::IkCoefficients LabeledFlow::ik_expected(double t, const QuadratureConfig& cfg) const {
    CoefficientFrame fr = spec_.frame_at(t, cfg);
    IkCoefficients out;
    if (spec_.mode() == CombinationMode::ScalarMultiple) {
        out.one_term = true;
        out.c1 = kI * fr.prescribed;
        return out;
    }
    out.c1 = kI * fr.prescribed;
    out.c2 = kI * (fr.path.gamma_t * (fr.R2 + fr.rho) - fr.prescribed);
    out.c4 = kI * fr.w;
    return out;
}

} // namespace flowlab
