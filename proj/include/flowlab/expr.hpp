#ifndef FLOWLAB_EXPR_HPP
#define FLOWLAB_EXPR_HPP

#include <memory>
#include <optional>
#include <vector>

#include "flowlab/complex_util.hpp"

namespace flowlab {

/// Closed-form analytic function of one complex variable.
///
/// The node catalog is the minimal closure over the initial data the solution
/// families need: constants, z, sums, products, scalings, A*e^{k z}, integer
/// powers and Moebius transforms of a subexpression. Expressions are immutable
/// after construction and cheap to copy (shared nodes); differentiation stays
/// inside the catalog, antidifferentiation is closed-form where possible and
/// reports "no closed form" otherwise.
class Expr {
public:
    enum class Kind { Constant, Identity, Sum, Product, Scale, ExpLinear, Power, Mobius };

    static Expr constant(Complex c);
    static Expr identity();
    static Expr sum(Expr lhs, Expr rhs);
    static Expr product(Expr lhs, Expr rhs);
    static Expr scale(Complex c, Expr inner);
    /// A * e^{k z}
    static Expr exp_linear(Complex a, Complex k);
    /// inner^n, n >= 0
    static Expr power(Expr inner, int n);
    /// (m w + n) / (s w + d) applied to inner; requires m d - n s != 0.
    static Expr mobius(Complex m, Complex n, Complex s, Complex d, Expr inner);

    Kind kind() const;

    /// Value at z. Throws PoleHit when a Moebius denominator modulus
    /// falls below 1e-14.
    Complex eval(Complex z) const;

    /// Exact symbolic derivative; always representable in the catalog.
    Expr derivative() const;

    /// Antiderivative normalized to vanish at z = 0, or nullopt when no
    /// closed form exists (Moebius and non-polynomial products).
    std::optional<Expr> antiderivative() const;

    /// Magnitude of the discrete Cauchy-Riemann defect at z with central
    /// differences of step h. Near zero for any well-formed expression.
    double cauchy_riemann_residual(Complex z, double h) const;

    /// Coefficient list (ascending degree) when the expression is a
    /// polynomial in z, nullopt otherwise.
    std::optional<std::vector<Complex>> as_polynomial() const;

    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    const Node& node() const { return *node_; }

private:
    std::shared_ptr<const Node> node_;
};

} // namespace flowlab

#endif
