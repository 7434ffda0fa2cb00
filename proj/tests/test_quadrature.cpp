#include <doctest.h>

#include <cmath>

#include "flowlab/quadrature.hpp"

using namespace flowlab;

namespace {

// 64-node Gauss-Legendre oracle on [a, b] (nodes/weights computed on the fly
// by Newton iteration on the Legendre polynomial; test-only machinery).
double gauss_legendre_64(const std::function<double(double)>& f, double a, double b) {
    constexpr int n = 64;
    static double nodes[n], weights[n];
    static bool ready = false;
    if (!ready) {
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        ready = true;
    }
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += weights[i] * f(mid + half * nodes[i]);
    return acc * half;
}

} // namespace

TEST_CASE("integrate: trivial integrands") {
    QuadratureConfig cfg;
    CHECK(std::abs(integrate([](double) { return Complex{}; }, 0.0, 1.0, cfg)) == 0.0);
    // int_0^1 2s ds = 1, exact for Simpson
    CHECK(integrate_real([](double s) { return 2.0 * s; }, 0.0, 1.0, cfg) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(integrate([](double s) { return Complex{s, 0.0}; }, 2.0, 2.0, cfg)) == 0.0);
}

TEST_CASE("integrate: arc-length integrand against the Gauss-Legendre oracle") {
    // Lambda(1) = int_0^1 sqrt(s^2 + cos^2 s) ds
    auto f = [](double s) { return std::sqrt(s * s + std::cos(s) * std::cos(s)); };
    double oracle = gauss_legendre_64(f, 0.0, 1.0);
    QuadratureConfig cfg;
    CHECK(std::abs(integrate_real(f, 0.0, 1.0, cfg) - oracle) < 1e-10);
}

TEST_CASE("property: polynomials of degree <= 3 are exact") {
    QuadratureConfig cfg;
    for (double c3 : {0.0, 1.0, -2.5}) {
        for (double c2 : {0.0, 3.0}) {
            auto f = [&](double s) { return ((c3 * s + c2) * s + 1.5) * s - 0.25; };
            double exact = c3 / 4.0 * 16.0 + c2 / 3.0 * 8.0 + 1.5 / 2.0 * 4.0 - 0.25 * 2.0;
            CHECK(std::abs(integrate_real(f, 0.0, 2.0, cfg) - exact) < 1e-13);
        }
    }
}

TEST_CASE("integrate: error paths") {
    QuadratureConfig cfg;
    CHECK_THROWS_AS(integrate([](double s) { return Complex{s > 0.5 ? std::nan("") : 0.0, 0.0}; },
                              0.0, 1.0, cfg),
                    FlowError);
    QuadratureConfig shallow;
    shallow.max_depth = 2;
    shallow.abs_tol = 1e-15;
    CHECK_THROWS_AS(
        integrate([](double s) { return Complex{std::sqrt(std::abs(s)), 0.0}; }, -1.0, 1.0,
                  shallow),
        FlowError);
}

TEST_CASE("scalar path: values and analytic derivatives") {
    auto check_pair = [](const ScalarPath& p, double t, double v, double dv) {
        CHECK(p.value(t) == doctest::Approx(v).epsilon(1e-14));
        CHECK(p.derivative(t) == doctest::Approx(dv).epsilon(1e-12));
    };
    check_pair(ScalarPath::constant(2.5), 7.0, 2.5, 0.0);
    check_pair(ScalarPath::linear(2.0, -1.0), 3.0, 5.0, 2.0);
    check_pair(ScalarPath::poly({1.0, 0.0, 3.0}), 2.0, 13.0, 12.0);
    check_pair(ScalarPath::sinusoid(2.0, 3.0, 0.5), 0.4, 2.0 * std::sin(1.7),
               6.0 * std::cos(1.7));
    check_pair(ScalarPath::sqrt_quad(1.0, 0.0, 1.0), 2.0, std::sqrt(5.0), 2.0 / std::sqrt(5.0));
    ScalarPath q = ScalarPath::quotient(ScalarPath::linear(1.0, 0.0), ScalarPath::linear(0.0, 2.0));
    check_pair(q, 3.0, 1.5, 0.5);

    // derivative of each kind against central differences
    for (const ScalarPath& p :
         {ScalarPath::poly({0.5, -1.0, 0.25, 2.0}), ScalarPath::sinusoid(1.5, 2.0, 1.0),
          ScalarPath::sqrt_quad(2.0, 1.0, 3.0),
          ScalarPath::quotient(ScalarPath::sinusoid(1.0, 1.0, 0.0), ScalarPath::linear(0.5, 2.0))}) {
        for (double t : {0.1, 0.9, 2.3}) {
            double fd = (p.value(t + 1e-6) - p.value(t - 1e-6)) / 2e-6;
            CHECK(p.derivative(t) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("scalar path: invalid evaluations raise NonFinite") {
    ScalarPath bad = ScalarPath::sqrt_quad(-1.0, 0.0, 0.5);  // negative for |t| > ~0.7
    CHECK_THROWS_AS(bad.value(2.0), FlowError);
    ScalarPath div = ScalarPath::quotient(ScalarPath::constant(1.0), ScalarPath::linear(1.0, -1.0));
    CHECK_THROWS_AS(div.value(1.0), FlowError);
    CHECK_THROWS_AS(div.validate_on(0.0, 2.0), FlowError);
    ScalarPath ok = ScalarPath::quotient(ScalarPath::constant(1.0), ScalarPath::linear(1.0, 1.0));
    ok.validate_on(0.0, 2.0);  // no throw
}

TEST_CASE("complex path: re/im and mod/phase forms agree") {
    ComplexPath a = ComplexPath::re_im(ScalarPath::sinusoid(1.0, 1.0, M_PI / 2.0),
                                       ScalarPath::sinusoid(1.0, 1.0, 0.0));  // e^{it}
    ComplexPath b = ComplexPath::mod_phase(ScalarPath::constant(1.0), ScalarPath::linear(1.0, 0.0));
    for (double t : {0.0, 0.7, 2.1}) {
        CHECK(std::abs(a.value(t) - b.value(t)) < 1e-14);
        CHECK(std::abs(a.derivative(t) - b.derivative(t)) < 1e-14);
    }
}
