#include <doctest.h>

#include <cmath>
#include <random>

#include "flowlab/expr.hpp"
#include "flowlab/quadrature.hpp"

using namespace flowlab;

namespace {

// Brute-force Taylor summation of e^w, the independent oracle for ExpLinear.
Complex taylor_exp(Complex w) {
    Complex acc{1.0, 0.0};
    Complex term{1.0, 0.0};
    for (int k = 1; k <= 60; ++k) {
        term *= w / double(k);
        acc += term;
    }
    return acc;
}

// Central complex finite difference d/dz along the real axis.
Complex fd_derivative(const Expr& e, Complex z, double h) {
    return (e.eval(z + Complex{h, 0.0}) - e.eval(z - Complex{h, 0.0})) / (2.0 * h);
}

Complex rand_z(std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    return {d(rng), d(rng)};
}

} // namespace

TEST_CASE("eval: catalog basics") {
    Complex kA{0.8, 0.3};
    Complex ik{0.0, 1.2};
    // e^0 = 1
    CHECK(std::abs(Expr::exp_linear(kA, ik).eval({0.0, 0.0}) - kA) == 0.0);
    // constants are constant
    Expr c = Expr::constant({3.0, 4.0});
    CHECK(c.eval({17.0, -2.0}) == Complex{3.0, 4.0});
    // e^{i pi} = -1, frozen from the Taylor oracle
    Complex oracle = taylor_exp(Complex{0.0, M_PI});
    CHECK(std::abs(oracle - Complex{-1.0, 0.0}) < 1e-14);
    Complex got = Expr::exp_linear({1.0, 0.0}, {0.0, 1.0}).eval({M_PI, 0.0});
    CHECK(std::abs(got - Complex{-1.0, 0.0}) < 1e-14);
}

TEST_CASE("eval: pole detection in Mobius nodes") {
    // (z + 1) / (z - 2) has a pole at z = 2
    Expr t = Expr::mobius({1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {-2.0, 0.0}, Expr::identity());
    CHECK(std::abs(t.eval({0.0, 0.0}) - Complex{-0.5, 0.0}) < 1e-15);
    CHECK_THROWS_AS(t.eval({2.0, 0.0}), FlowError);
    try {
        t.eval({2.0, 0.0});
        CHECK(false);
    } catch (const FlowError& e) {
        CHECK(e.code() == ErrorCode::PoleHit);
    }
    CHECK_THROWS_AS(
        Expr::mobius({1.0, 0.0}, {2.0, 0.0}, {2.0, 0.0}, {4.0, 0.0}, Expr::identity()),
        FlowError);  // m d - n s = 0
}

TEST_CASE("derivative: exponential and identity rules") {
    Complex A{0.5, -0.2}, k{1.0, 0.7};
    Expr d = Expr::exp_linear(A, k).derivative();
    Complex z{0.3, 0.4};
    CHECK(std::abs(d.eval(z) - A * k * std::exp(k * z)) < 1e-15);
    CHECK(Expr::identity().derivative().eval({5.0, 1.0}) == Complex{1.0, 0.0});
}

TEST_CASE("derivative: product rule against finite differences") {
    // e = z * e^{i z}
    Expr e = Expr::product(Expr::identity(), Expr::exp_linear({1.0, 0.0}, {0.0, 1.0}));
    Complex z{0.3, 0.1};
    Complex fd = fd_derivative(e, z, 1e-5);
    CHECK(std::abs(e.derivative().eval(z) - fd) < 1e-8);
}

TEST_CASE("derivative: closure over the full catalog") {
    std::mt19937 rng(7);
    Expr mob = Expr::mobius({1.0, 0.2}, {0.5, 0.0}, {0.3, 0.0}, {2.0, 0.0}, Expr::identity());
    std::vector<Expr> catalog = {
        Expr::constant({1.0, 2.0}),
        Expr::identity(),
        Expr::sum(Expr::identity(), Expr::exp_linear({1.0, 0.0}, {0.0, 2.0})),
        Expr::product(Expr::power(Expr::identity(), 3), Expr::exp_linear({2.0, 0.0}, {0.5, 0.5})),
        Expr::scale({0.0, 1.0}, Expr::power(Expr::identity(), 4)),
        mob,
        Expr::power(Expr::sum(Expr::identity(), Expr::constant({1.0, 0.0})), 5),
    };
    for (const Expr& e : catalog) {
        Expr d1 = e.derivative();
        Expr d2 = d1.derivative();  // still constructible
        Expr d3 = d2.derivative();
        for (int i = 0; i < 5; ++i) {
            Complex z = rand_z(rng, 0.8);
            Complex fd = fd_derivative(e, z, 1e-5);
            CHECK(std::abs(d1.eval(z) - fd) < 2e-7);
            (void)d3.eval(z);
        }
    }
}

TEST_CASE("antiderivative: exponential closed form") {
    // int kA e^{i k z} dz = -i A (e^{i k z} - 1); differentiating back must
    // reproduce the input at random z and the value must vanish at 0
    Complex kA{2.0, 0.0}, ik{0.0, 2.0};
    Expr e = Expr::exp_linear(kA, ik);
    auto anti = e.antiderivative();
    REQUIRE(anti.has_value());
    CHECK(std::abs(anti->eval({0.0, 0.0})) == 0.0);
    Expr back = anti->derivative();
    std::mt19937 rng(11);
    for (int i = 0; i < 10; ++i) {
        Complex z = rand_z(rng);
        CHECK(std::abs(back.eval(z) - e.eval(z)) < 1e-13);
    }
}

TEST_CASE("antiderivative: polynomial rules") {
    // int c = c z
    Complex c{1.0, -3.0};
    auto anti = Expr::constant(c).antiderivative();
    REQUIRE(anti.has_value());
    CHECK(std::abs(anti->eval({2.0, 0.0}) - c * 2.0) < 1e-15);
    // int z^2 = z^3/3
    auto cube = Expr::power(Expr::identity(), 2).antiderivative();
    REQUIRE(cube.has_value());
    CHECK(std::abs(cube->eval({2.0, 0.0}) - Complex{8.0 / 3.0, 0.0}) < 1e-15);
    // polynomial product z (z + 1) integrates too
    auto prod = Expr::product(Expr::identity(),
                              Expr::sum(Expr::identity(), Expr::constant({1.0, 0.0})))
                    .antiderivative();
    REQUIRE(prod.has_value());
    CHECK(std::abs(prod->eval({1.0, 0.0}) - Complex{1.0 / 3.0 + 0.5, 0.0}) < 1e-15);
}

TEST_CASE("antiderivative: no closed form for Mobius and transcendental products") {
    Expr mob = Expr::mobius({1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}, {2.0, 0.0}, Expr::identity());
    CHECK_FALSE(mob.antiderivative().has_value());
    Expr hard = Expr::product(Expr::identity(), Expr::exp_linear({1.0, 0.0}, {0.0, 1.0}));
    CHECK_FALSE(hard.antiderivative().has_value());
    // sums propagate the failure
    CHECK_FALSE(Expr::sum(Expr::identity(), mob).antiderivative().has_value());
}

TEST_CASE("cauchy-riemann residual") {
    CHECK(Expr::exp_linear({1.0, 0.0}, {0.0, 1.0}).cauchy_riemann_residual({1.0, 1.0}, 1e-5) <
          1e-8);
    CHECK(Expr::constant({2.0, -1.0}).cauchy_riemann_residual({0.3, 0.9}, 1e-4) == 0.0);
    CHECK(Expr::power(Expr::identity(), 3).cauchy_riemann_residual({2.0, 0.0}, 1e-5) < 1e-7);
    CHECK_THROWS_AS(Expr::identity().cauchy_riemann_residual({0, 0}, 1e-2), FlowError);
}

TEST_CASE("property: cauchy-riemann residual < 10 h^2 across the catalog") {
    std::vector<Expr> catalog = {
        Expr::exp_linear({1.0, 0.5}, {0.3, 1.0}),
        Expr::sum(Expr::power(Expr::identity(), 2), Expr::exp_linear({1.0, 0.0}, {0.0, 1.0})),
        Expr::product(Expr::identity(), Expr::identity()),
        Expr::mobius({1.0, 0.0}, {0.1, 0.0}, {0.2, 0.0}, {3.0, 0.0}, Expr::identity()),
    };
    std::mt19937 rng(23);
    for (const Expr& e : catalog) {
        for (double h : {1e-3, 1e-4}) {
            for (int i = 0; i < 5; ++i) {
                Complex z = rand_z(rng, 0.7);
                CHECK(e.cauchy_riemann_residual(z, h) < 10.0 * h * h);
            }
        }
    }
}

TEST_CASE("property: fundamental theorem against path quadrature") {
    // For every catalog expr with a closed antiderivative R,
    // R(z2) - R(z1) equals quadrature of e along [z1, z2].
    std::vector<Expr> catalog = {
        Expr::exp_linear({1.0, 0.0}, {0.0, 1.0}),
        Expr::sum(Expr::scale({0.5, 0.5}, Expr::power(Expr::identity(), 3)),
                  Expr::exp_linear({0.0, 2.0}, {-0.4, 0.8})),
        Expr::constant({1.0, 1.0}),
        Expr::product(Expr::identity(), Expr::sum(Expr::identity(), Expr::constant({2.0, 0.0}))),
    };
    std::mt19937 rng(5);
    QuadratureConfig quad;
    for (const Expr& e : catalog) {
        auto anti = e.antiderivative();
        REQUIRE(anti.has_value());
        for (int i = 0; i < 20; ++i) {
            Complex z1 = rand_z(rng), z2 = rand_z(rng);
            Complex lhs = anti->eval(z2) - anti->eval(z1);
            Complex rhs = integrate(
                [&](double s) { return e.eval(z1 + s * (z2 - z1)) * (z2 - z1); }, 0.0, 1.0,
                quad);
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    }
}

TEST_CASE("non-finite inputs are rejected") {
    CHECK_THROWS_AS(Expr::constant({std::nan(""), 0.0}), FlowError);
    Expr e = Expr::exp_linear({1.0, 0.0}, {1.0, 0.0});
    CHECK_THROWS_AS(e.eval({std::numeric_limits<double>::infinity(), 0.0}), FlowError);
    // overflow inside evaluation surfaces as NonFinite, never as a silent inf
    CHECK_THROWS_AS(e.eval({1e6, 0.0}), FlowError);
}
