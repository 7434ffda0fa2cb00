#ifndef FLOWLAB_FAMILIES_HPP
#define FLOWLAB_FAMILIES_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flowlab/expr.hpp"
#include "flowlab/grid.hpp"
#include "flowlab/quadrature.hpp"
#include "flowlab/scalar_path.hpp"

namespace flowlab {

enum class FamilyKind {
    LinDepCommuting,  // alpha = cosh r, beta = e^{-i k0} sinh r, gamma = 0
    LinDepScaled,     // f = alpha f0, g = beta f0; prescribed c t + d
    LinDepGeneral,    // as above with complex prescribed -i Xi(t)
    LinIndepCase1,    // gamma = 0
    LinIndepCase2,    // gamma = c2 t
    LinIndepCase3,    // gamma = c1 t^2
    LinIndepCase4,    // gamma = c1 t^2 + c2 t
    GeneralFlat,      // gamma = 0, prescribed D1(t)
    General,          // gamma = Lambda(t), moduli from D1, D2, |C4|
};

/// How (f, g) are assembled from the initial pair.
/// ScalarMultiple: f = alpha f0, g = beta f0 (requires g0 = lambda f0).
/// PairCombination: f = alpha f0 + e^{i gamma} beta g0,
///                  g = conj(beta) f0 + e^{i gamma} conj(alpha) g0.
enum class CombinationMode { ScalarMultiple, PairCombination };

struct CoefficientPath {
    CombinationMode mode = CombinationMode::PairCombination;
    Complex alpha{1.0, 0.0};
    Complex beta{};
    double gamma = 0.0;
    Complex alpha_t{};
    Complex beta_t{};
    double gamma_t = 0.0;
};

/// CoefficientPath plus the closed-form data the verification layer needs:
/// the prescribed master function, squared moduli and the cross-term weight
/// w = gamma' beta conj(alpha) e^{i gamma} with its time derivative.
struct CoefficientFrame {
    CoefficientPath path;
    Complex prescribed{};     // P(t); real except for LinDepGeneral
    Complex prescribed_t{};
    double R2 = 1.0, R2_t = 0.0;   // |alpha|^2 along the conservative branch
    double rho = 0.0, rho_t = 0.0; // |beta|^2
    double gamma_tt = 0.0;
    Complex w{}, w_t{};
};

struct LinDepCommutingParams { ScalarPath r; double k0 = 0.0; };
struct LinDepScaledParams { Complex lambda; ScalarPath r, phi; double c = 0.0, d = 0.0; };
struct LinDepGeneralParams { Complex lambda; ScalarPath r, phi; ComplexPath xi; };
struct LinIndepCase1Params { ScalarPath r, psi; double h = 0.0, d0 = 0.0; };
struct LinIndepCase2Params { double c2 = 0.0, w = 0.0, p = 0.0; ScalarPath psi; double h = 0.0, d0 = 0.0; };
struct LinIndepCase3Params { double c1 = 0.0, w = 0.0; ScalarPath psi; double h = 0.0, d0 = 0.0; };
struct LinIndepCase4Params { double c1 = 0.0, c2 = 0.0, w = 0.0, p = 0.0; ScalarPath psi; double h = 0.0, d0 = 0.0; };
struct GeneralFlatParams { ScalarPath r, phi, d1; };
struct GeneralParams { ScalarPath d1, d2, c4_mod, phi; };

/// One explicit solution family: the time coefficients (alpha, beta, gamma)
/// with derivatives, the validity predicate and the master-relation data.
///
/// Phase integrals are evaluated by adaptive quadrature of the closed-form
/// integrand derived from the master relation (the proof-level relation, not
/// the printed per-case integrals): for the pair-combination families
/// Im(alpha' conj(alpha) - beta' conj(beta)) = P(t) so
/// Phi' = (P + r^2 phi')/R^2, while for the scalar-multiple families the
/// governing equation carries conj(beta') beta and the sign flips:
/// Phi' = (P - r^2 phi')/R^2.
class FamilySpec {
public:
    static FamilySpec lin_dep_commuting(LinDepCommutingParams p);
    static FamilySpec lin_dep_scaled(LinDepScaledParams p);
    static FamilySpec lin_dep_general(LinDepGeneralParams p);
    static FamilySpec lin_indep_case1(LinIndepCase1Params p);
    static FamilySpec lin_indep_case2(LinIndepCase2Params p);
    static FamilySpec lin_indep_case3(LinIndepCase3Params p);
    static FamilySpec lin_indep_case4(LinIndepCase4Params p);
    static FamilySpec general_flat(GeneralFlatParams p);
    static FamilySpec general(GeneralParams p);

    FamilyKind kind() const;
    CombinationMode mode() const;
    /// |alpha|^2 - |beta|^2 along conservative flows: 1 or 1 - |lambda|^2.
    double modulus_constant() const;
    Complex lambda() const;  // ScalarMultiple modes only

    /// True when the prescribed master function is real on [t_lo, t_hi]
    /// (sampled); complex Xi makes the phase exponent complex and the
    /// modulus constraint is then reported rather than asserted.
    bool conservative_on(double t_lo, double t_hi) const;

    bool time_valid(double t) const;
    /// Human-readable predicate, for OutsideValidity diagnostics.
    std::string validity_description() const;
    /// Throws OutsideValidity naming the predicate when t is not valid.
    void require_valid(double t) const;

    CoefficientPath coefficients_at(double t, const QuadratureConfig& cfg = {}) const;
    CoefficientFrame frame_at(double t, const QuadratureConfig& cfg = {}) const;

    std::string family_label() const;  // manifest identifier, e.g. "lin_indep_case3"

    /// LinDepCommuting only: the (r, k0) pair behind the coefficient matrix,
    /// for cross-checks against the fundamental-solution machinery.
    struct CommutingData { ScalarPath r; double k0; };
    std::optional<CommutingData> commuting_data() const;

    struct Impl;

private:
    explicit FamilySpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

struct FgValues {
    Complex f, g, f_t, g_t;
};

/// Assemble (f, g, f_t, g_t) at (t, z) from a family and the initial pair.
/// ScalarMultiple modes require g0 = lambda f0; the sampled ratio at z is
/// checked against lambda to 1e-10 (MismatchedInitialPair otherwise).
FgValues fg_at(const FamilySpec& spec, const Expr& f0, const Expr& g0, double t, Complex z,
               const QuadratureConfig& cfg = {});

FgValues fg_from_coefficients(const CoefficientPath& coeff, Complex lambda,
                              Complex f0v, Complex g0v);

/// A named, fully-populated flow from the catalog of worked examples.
struct Preset {
    std::string name;
    std::string family_label;
    std::string example_slug;   // machine identifier of the source example
    std::string description;
    FamilySpec spec;
    Expr f0, g0;
    LabelGrid domain_hint;
    double t_lo_hint = 0.0, t_hi_hint = 1.0;
};

/// Throws UnknownPreset for names outside the catalog.
Preset preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace flowlab

#endif
