#ifndef FLOWLAB_QUADRATURE_HPP
#define FLOWLAB_QUADRATURE_HPP

#include <functional>

#include "flowlab/complex_util.hpp"
#include "flowlab/scalar_path.hpp"

namespace flowlab {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    int max_depth = 40;
};

/// Adaptive Simpson on [t0, t1]. Smooth integrands only; the phase integrals
/// this serves are C^1 on their validity intervals by construction.
/// Throws DepthExceeded when refinement hits max_depth and NonFinite when an
/// integrand sample is NaN/Inf.
Complex integrate(const std::function<Complex(double)>& f, double t0, double t1,
                  const QuadratureConfig& cfg = {});

double integrate_real(const std::function<double(double)>& f, double t0, double t1,
                      const QuadratureConfig& cfg = {});

Complex integrate(const ScalarPath& path, double t0, double t1,
                  const QuadratureConfig& cfg = {});

} // namespace flowlab

#endif
