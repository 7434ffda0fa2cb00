#include <doctest.h>

#include <cmath>
#include <random>

#include "flowlab/mat2.hpp"

using namespace flowlab;

namespace {

// Truncated 30-term Taylor series, the independent exponential oracle.
Mat2C taylor_exp(const Mat2C& m) {
    Mat2C acc = Mat2C::identity();
    Mat2C term = Mat2C::identity();
    for (int k = 1; k <= 30; ++k) {
        term = term * m;
        term = term.scaled(Complex{1.0 / double(k), 0.0});
        acc = acc + term;
    }
    return acc;
}

Mat2C random_mat(std::mt19937& rng, double scale) {
    std::uniform_real_distribution<double> d(-scale, scale);
    return {{d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)}};
}

} // namespace

TEST_CASE("mat2_exp: hyperbolic closed form on antidiagonal matrices") {
    // exp([[0, r], [r, 0]]) = [[cosh r, sinh r], [sinh r, cosh r]]
    double r = 0.7;
    Mat2C e = mat2_exp(Mat2C::antidiagonal({r, 0.0}));
    CHECK(std::abs(e.m11 - Complex{std::cosh(r), 0.0}) < 1e-15);
    CHECK(std::abs(e.m12 - Complex{std::sinh(r), 0.0}) < 1e-15);
    CHECK(std::abs(e.m21 - Complex{std::sinh(r), 0.0}) < 1e-15);
    CHECK(std::abs(e.m22 - Complex{std::cosh(r), 0.0}) < 1e-15);

    Mat2C id = mat2_exp(Mat2C{});
    CHECK((id - Mat2C::identity()).max_abs() == 0.0);
}

TEST_CASE("mat2_exp: phased antidiagonal against the Taylor oracle") {
    double r = 1.2, theta = 0.4;
    Mat2C m = Mat2C::antidiagonal(std::polar(r, theta));
    CHECK((mat2_exp(m) - taylor_exp(m)).max_abs() < 1e-12);
}

TEST_CASE("commute residual") {
    std::mt19937 rng(3);
    Mat2C a = random_mat(rng, 1.0);
    CHECK(commute_residual(a, a) == 0.0);
    Mat2C d1{{1.0, 0.0}, {}, {}, {2.0, 0.0}};
    Mat2C d2{{-0.5, 0.3}, {}, {}, {4.0, 1.0}};
    CHECK(commute_residual(d1, d2) == 0.0);
    // antidiagonals with different phases do not commute
    Mat2C p1 = Mat2C::antidiagonal(std::polar(1.0, 0.2));
    Mat2C p2 = Mat2C::antidiagonal(std::polar(1.0, 1.1));
    CHECK(commute_residual(p1, p2) > 1e-2);
}

TEST_CASE("property: exp(M) exp(-M) = I for ||M|| <= 3") {
    std::mt19937 rng(17);
    for (int i = 0; i < 30; ++i) {
        Mat2C m = random_mat(rng, 1.5);
        Mat2C prod = mat2_exp(m) * mat2_exp(m.scaled({-1.0, 0.0}));
        CHECK((prod - Mat2C::identity()).max_abs() < 1e-11);
    }
}

TEST_CASE("property: commuting iff exponential product identity") {
    std::mt19937 rng(29);
    // commuting pair: polynomials in one matrix
    Mat2C a = random_mat(rng, 0.8);
    Mat2C c = a * a + a.scaled({0.3, 0.0});
    CHECK(commute_residual(a, c) < 1e-12);
    CHECK((mat2_exp(a) * mat2_exp(c) - mat2_exp(a + c)).max_abs() < 1e-10);

    // witness with a visible commutator must break the identity
    for (int i = 0; i < 20; ++i) {
        Mat2C x = random_mat(rng, 1.0);
        Mat2C y = random_mat(rng, 1.0);
        if (commute_residual(x, y) < 0.1) continue;
        CHECK((mat2_exp(x) * mat2_exp(y) - mat2_exp(x + y)).max_abs() > 1e-6);
    }
}

TEST_CASE("fundamental solution: commuting family closed form") {
    // int B = t e^{i k0}: X(t) = [[cosh t, e^{-i k0} sinh t], [e^{i k0} sinh t, cosh t]]
    double k0 = 0.3;
    BFunc B = b_path_from_integral(ScalarPath::linear(1.0, 0.0), ScalarPath::constant(k0));
    for (double t : {0.5, 1.0, 2.0}) {
        FundamentalSolution fs = fundamental_solution(B, t);
        CHECK(fs.commuting);
        CHECK(std::abs(fs.value.m11 - Complex{std::cosh(t), 0.0}) < 1e-12);
        CHECK(std::abs(fs.value.m12 - std::polar(std::sinh(t), -k0)) < 1e-12);
        CHECK(std::abs(fs.value.m21 - std::polar(std::sinh(t), k0)) < 1e-12);
    }
    // X(0) = I
    FundamentalSolution at0 = fundamental_solution(B, 0.0);
    CHECK(at0.commuting);
    CHECK((at0.value - Mat2C::identity()).max_abs() == 0.0);
}

TEST_CASE("fundamental solution: nonconstant phase breaks the commuting hypothesis") {
    // Theta(t) = t: closed form and true solution must visibly part ways
    BFunc B = b_path_from_integral(ScalarPath::linear(1.0, 0.0), ScalarPath::linear(1.0, 0.0));
    FundamentalSolution fs = fundamental_solution(B, 2.0);
    CHECK_FALSE(fs.commuting);
    CHECK(fs.commute_residual > 1e-3);
    Mat2C oracle = ode_oracle(B, 2.0, 10000);
    CHECK((fs.value - oracle).max_abs() > 1e-4);
}

TEST_CASE("ode oracle") {
    BFunc zero = [](double) { return Complex{}; };
    CHECK((ode_oracle(zero, 3.0, 200) - Mat2C::identity()).max_abs() < 1e-14);

    // constant B = 1 at t = 1 matches the hyperbolic closed form
    BFunc one = [](double) { return Complex{1.0, 0.0}; };
    Mat2C want = mat2_exp(Mat2C::antidiagonal({1.0, 0.0}));
    CHECK((ode_oracle(one, 1.0, 10000) - want).max_abs() < 1e-10);

    // cross-oracle agreement for a commuting family with varying r
    BFunc B = b_path_from_integral(ScalarPath::poly({0.0, 0.5, 0.25}), ScalarPath::constant(0.9));
    FundamentalSolution fs = fundamental_solution(B, 1.5);
    CHECK(fs.commuting);
    CHECK((fs.value - ode_oracle(B, 1.5, 10000)).max_abs() < 1e-8);

    CHECK_THROWS_AS(ode_oracle(one, 1.0, 10), FlowError);
}

TEST_CASE("property: trace-free generators give det X = 1") {
    for (double t : {0.5, 1.3, 2.4}) {
        BFunc B = b_path_from_integral(ScalarPath::linear(0.7, 0.0), ScalarPath::constant(0.2));
        FundamentalSolution fs = fundamental_solution(B, t);
        CHECK(std::abs(fs.value.det() - Complex{1.0, 0.0}) < 1e-10);
    }
}
