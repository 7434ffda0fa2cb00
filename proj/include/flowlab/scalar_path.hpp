#ifndef FLOWLAB_SCALAR_PATH_HPP
#define FLOWLAB_SCALAR_PATH_HPP

#include <memory>
#include <vector>

#include "flowlab/complex_util.hpp"

namespace flowlab {

/// Real-valued C^1 time coefficient with an analytic derivative.
/// Houses the r(t), phi(t), psi(t), D1(t), D2(t), |C4|(t) data the solution
/// families are built from; no numerical differentiation in the main path.
class ScalarPath {
public:
    static ScalarPath constant(double v);
    static ScalarPath linear(double a, double b);                   // a t + b
    static ScalarPath poly(std::vector<double> coeffs);             // ascending degree
    static ScalarPath sinusoid(double amp, double freq, double phase); // amp sin(freq t + phase)
    static ScalarPath sqrt_quad(double a, double b, double c);      // sqrt(a t^2 + b t + c)
    static ScalarPath quotient(ScalarPath num, ScalarPath den);

    double value(double t) const;       // throws NonFinite on invalid evaluation
    double derivative(double t) const;

    /// Dense-sample check that value and derivative stay finite (and quotient
    /// denominators nonvanishing) on [t0, t1].
    void validate_on(double t0, double t1, int samples = 257) const;

    struct Node;
    const Node& node() const { return *node_; }

private:
    explicit ScalarPath(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Complex-valued path as a pair of real paths, either re/im or modulus/phase.
struct ComplexPath {
    enum class Form { ReIm, ModPhase };

    ScalarPath first;   // re  | modulus
    ScalarPath second;  // im  | phase
    Form form = Form::ReIm;

    static ComplexPath re_im(ScalarPath re, ScalarPath im) {
        return {std::move(re), std::move(im), Form::ReIm};
    }
    static ComplexPath mod_phase(ScalarPath mod, ScalarPath phase) {
        return {std::move(mod), std::move(phase), Form::ModPhase};
    }

    Complex value(double t) const {
        if (form == Form::ReIm) return {first.value(t), second.value(t)};
        return std::polar(first.value(t), second.value(t));
    }
    Complex derivative(double t) const {
        if (form == Form::ReIm) return {first.derivative(t), second.derivative(t)};
        double r = first.value(t), th = second.value(t);
        return (Complex{first.derivative(t), 0.0} + kI * r * second.derivative(t))
               * std::polar(1.0, th);
    }
};

} // namespace flowlab

#endif
