#ifndef FLOWLAB_COMPLEX_UTIL_HPP
#define FLOWLAB_COMPLEX_UTIL_HPP

#include <cmath>
#include <complex>

#include "flowlab/errors.hpp"

namespace flowlab {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(double x) { return std::isfinite(x); }

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* where) {
    if (!is_finite(z))
        raise(ErrorCode::NonFinite, std::string(where) + ": non-finite value");
}

inline void require_finite(double x, const char* where) {
    if (!std::isfinite(x))
        raise(ErrorCode::NonFinite, std::string(where) + ": non-finite value");
}

inline double abs2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

} // namespace flowlab

#endif
