#ifndef FLOWLAB_FLOW_HPP
#define FLOWLAB_FLOW_HPP

#include <optional>
#include <vector>

#include "flowlab/families.hpp"
#include "flowlab/grid.hpp"
#include "flowlab/harmonic.hpp"

namespace flowlab {

/// Deliberate coefficient corruptions for negative-control fixtures.
/// Applied only at t > 0 so the t = 0 baseline stays intact.
struct Corruption {
    enum class Kind {
        BetaScale,        // beta, beta_t *= amount      (breaks Jacobian invariance)
        GammaOffset,      // gamma += amount             (breaks the key equation)
        PrescribedOffset, // alpha *= e^{i amount t}     (wrong master relation)
        AsymmetricBeta,   // f's beta *= 1 + amount only (breaks the pair structure)
    };
    Kind kind = Kind::BetaScale;
    double amount = 0.0;
};

struct FlowSample {
    double t = 0.0, a = 0.0, b = 0.0;
    double x = 0.0, y = 0.0, u = 0.0, v = 0.0;
    double J = 0.0, omega = 0.0, K = 0.0;
    double K_resid = 0.0;  // imaginary defect of -i(f_t conj f - conj(g_t) g); ~0
};

struct TrajectoryPoint {
    double t, x, y, u, v;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    /// Max distance between the closed-form positions and an RK4 replay of
    /// x' = u(t), y' = v(t) started from points.front().
    double replay_residual = 0.0;
};

/// A complete flow: family + initial pair + antiderivatives + label domain.
class LabeledFlow {
public:
    /// Antiderivatives F0, G0 are derived from (f0, g0) when closed forms
    /// exist; otherwise position() falls back to straight-segment quadrature
    /// from 0 to z (valid: the label domain is simply connected).
    LabeledFlow(FamilySpec spec, Expr f0, Expr g0, LabelGrid domain);

    static LabeledFlow from_preset(const Preset& p);

    const FamilySpec& spec() const { return spec_; }
    const Expr& f0() const { return f0_; }
    const Expr& g0() const { return g0_; }
    const LabelGrid& domain() const { return domain_; }
    bool has_closed_antiderivatives() const { return F0_.has_value(); }

    void set_corruption(std::optional<Corruption> c) { corruption_ = c; }
    const std::optional<Corruption>& corruption() const { return corruption_; }

    CoefficientPath coefficients(double t, const QuadratureConfig& cfg = {}) const;
    CoefficientFrame frame(double t, const QuadratureConfig& cfg = {}) const;
    FgValues fg(double t, Complex z, const QuadratureConfig& cfg = {}) const;

    /// Coefficient-cached forms: the time coefficients are label-independent,
    /// so sweeps over z reuse one CoefficientPath (one phase quadrature per
    /// time sample instead of one per grid point).
    FgValues fg_with(const CoefficientPath& c, double t, Complex z) const;
    Complex position_with(const CoefficientPath& c, Complex z,
                          const QuadratureConfig& cfg = {}) const;
    Complex velocity_with(const CoefficientPath& c, Complex z,
                          const QuadratureConfig& cfg = {}) const;
    FlowSample kinematics_with(const CoefficientPath& c, double t, Complex z,
                               const QuadratureConfig& cfg = {}) const;
    HarmonicMap map_with(const CoefficientPath& c, double t) const;

    /// x + i y = F(t,z) + conj(G(t,z)), integration constant zero at z = 0.
    Complex position(double t, Complex z, const QuadratureConfig& cfg = {}) const;
    /// u + i v from exact coefficient time derivatives.
    Complex velocity(double t, Complex z, const QuadratureConfig& cfg = {}) const;

    FlowSample kinematics(double t, Complex z, const QuadratureConfig& cfg = {}) const;

    /// Inviscid temperature-gradient slice theta_x = 2 dK/dt / J with a
    /// central time difference of step dt in [1e-6, 1e-3].
    double theta_x(double t, Complex z, double dt, const QuadratureConfig& cfg = {}) const;

    Trajectory trajectory(Complex z0, const std::vector<double>& times,
                          const QuadratureConfig& cfg = {}) const;

    /// Row-major samples over the grid. Throws SensePreservationViolated
    /// naming the offending label if any J <= 0.
    std::vector<FlowSample> grid_sample(const LabelGrid& grid, double t,
                                        const QuadratureConfig& cfg = {}) const;

    /// The time-t harmonic map as exact expressions (built at derivative
    /// level, so Schwarzian machinery never needs antiderivatives).
    HarmonicMap map_at(double t, const QuadratureConfig& cfg = {}) const;

    /// K and dK/dt predicted by the family's master relation (uncorrupted).
    double k_expected(double t, Complex z, const QuadratureConfig& cfg = {}) const;
    double k_t_expected(double t, Complex z, const QuadratureConfig& cfg = {}) const;

    /// Coefficients of iK in the span basis {|f0|^2, |g0|^2, f0 conj(g0),
    /// conj(f0) g0}; c3 = -conj(c4). ScalarMultiple families use the 1-term
    /// basis {|f0|^2} with coefficient c1.
    struct IkCoefficients {
        Complex c1, c2, c4;
        bool one_term = false;
    };
    IkCoefficients ik_expected(double t, const QuadratureConfig& cfg = {}) const;

private:
    FamilySpec spec_;
    Expr f0_, g0_;
    std::optional<Expr> F0_, G0_;
    LabelGrid domain_;
    std::optional<Corruption> corruption_;

    Complex antiderivative_value(const Expr& fn, const std::optional<Expr>& closed, double,
                                 Complex z, const QuadratureConfig& cfg) const;
};

} // namespace flowlab

#endif
