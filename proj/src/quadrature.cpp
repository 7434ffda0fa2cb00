#include "flowlab/quadrature.hpp"

#include <cmath>

namespace flowlab {

namespace {

struct Sample {
    double t;
    Complex v;
};

Complex sample(const std::function<Complex(double)>& f, double t) {
    Complex v = f(t);
    if (!is_finite(v))
        raise(ErrorCode::NonFinite, "integrate: non-finite integrand sample");
    return v;
}

Complex simpson(Sample a, Sample m, Sample b) {
    return (b.t - a.t) / 6.0 * (a.v + 4.0 * m.v + b.v);
}

Complex adapt(const std::function<Complex(double)>& f, Sample a, Sample m, Sample b,
              Complex whole, double tol, int depth, int max_depth) {
    Sample lm{0.5 * (a.t + m.t), sample(f, 0.5 * (a.t + m.t))};
    Sample rm{0.5 * (m.t + b.t), sample(f, 0.5 * (m.t + b.t))};
    Complex left = simpson(a, lm, m);
    Complex right = simpson(m, rm, b);
    Complex delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth >= max_depth)
        raise(ErrorCode::DepthExceeded, "integrate: adaptive refinement hit max depth");
    return adapt(f, a, lm, m, left, 0.5 * tol, depth + 1, max_depth)
         + adapt(f, m, rm, b, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

Complex integrate(const std::function<Complex(double)>& f, double t0, double t1,
                  const QuadratureConfig& cfg) {
    if (cfg.abs_tol <= 0.0)
        raise(ErrorCode::InvalidManifest, "integrate: abs_tol must be positive");
    if (t0 == t1) return {};
    Sample a{t0, sample(f, t0)};
    Sample b{t1, sample(f, t1)};
    Sample m{0.5 * (t0 + t1), sample(f, 0.5 * (t0 + t1))};
    return adapt(f, a, m, b, simpson(a, m, b), cfg.abs_tol, 0, cfg.max_depth);
}

double integrate_real(const std::function<double(double)>& f, double t0, double t1,
                      const QuadratureConfig& cfg) {
    return integrate([&f](double t) { return Complex{f(t), 0.0}; }, t0, t1, cfg).real();
}

Complex integrate(const ScalarPath& path, double t0, double t1, const QuadratureConfig& cfg) {
    return integrate([&path](double t) { return Complex{path.value(t), 0.0}; }, t0, t1, cfg);
}

} // namespace flowlab
