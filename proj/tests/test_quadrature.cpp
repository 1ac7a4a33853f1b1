#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zdpp/quadrature.hpp"

using namespace zdpp;

namespace {
double rel(Complex a, Complex b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}
}  // namespace

TEST_CASE("gauss_legendre integrates polynomials exactly") {
    const QuadRule& r = gauss_legendre(6);
    double s = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i)
        s += r.weights[i] * std::pow(r.nodes[i], 10);
    CHECK(std::abs(s - 2.0 / 11.0) < 1e-14);
}

TEST_CASE("gauss_jacobi reproduces beta moments") {
    // int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1,b+1)
    for (auto [a, b] : {std::pair{-0.5, 0.3}, std::pair{0.0, 0.0}, std::pair{1.7, -0.8}}) {
        QuadRule r = gauss_jacobi(12, a, b);
        double w = 0.0, m1 = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            w += r.weights[i];
            m1 += r.weights[i] * r.nodes[i];
        }
        double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
        CHECK(std::abs(w - mu0) < 1e-12 * mu0);
        // first moment of the Jacobi weight: mu0 * (b-a)/(a+b+2)
        CHECK(std::abs(m1 - mu0 * (b - a) / (a + b + 2.0)) < 1e-12 * mu0);
    }
}

TEST_CASE("tanh_sinh on smooth and singular integrands") {
    QuadratureSpec q;
    q.rel_tol = 1e-12;
    CHECK(rel(tanh_sinh([](double x) { return Complex(std::exp(x)); }, 0.0, 1.0, q),
              std::exp(1.0) - 1.0) < 1e-12);
    // x^{-1/2} at the left end
    q.exponent_left = -0.5;
    CHECK(rel(tanh_sinh([](double, double dl, double) { return Complex(1.0 / std::sqrt(dl)); },
                        0.0, 1.0, q),
              2.0) < 1e-12);
    // (1-x)^{-0.84} at the right end (strongly singular)
    q.exponent_left = 0.0;
    q.exponent_right = -0.84;
    CHECK(rel(tanh_sinh([](double, double, double dr) { return Complex(std::pow(dr, -0.84)); },
                        0.0, 1.0, q),
              1.0 / 0.16) < 1e-10);
    // complex exponent: int_0^1 x^{-0.3+0.4i} dx = 1/(0.7+0.4i)
    q.exponent_left = -0.3;
    q.exponent_right = 0.0;
    Complex e(-0.3, 0.4);
    CHECK(rel(tanh_sinh([&](double, double dl, double) { return std::pow(Complex(dl), e); },
                        0.0, 1.0, q),
              1.0 / (e + 1.0)) < 1e-11);
}

TEST_CASE("gauss_jacobi_integrate with endpoint factors") {
    QuadratureSpec q;
    q.rel_tol = 1e-12;
    // int_0^1 x^{-0.5}(1-x)^{-0.25} cos(x) dx via GJ against tanh-sinh
    Complex gj = gauss_jacobi_integrate([](double x) { return Complex(std::cos(x)); },
                                        0.0, 1.0, -0.5, -0.25, q);
    QuadratureSpec qt;
    qt.rel_tol = 1e-12;
    qt.exponent_left = -0.5;
    qt.exponent_right = -0.25;
    Complex ts = tanh_sinh(
        [](double x, double dl, double dr) {
            return Complex(std::pow(dl, -0.5) * std::pow(dr, -0.25) * std::cos(x));
        },
        0.0, 1.0, qt);
    CHECK(rel(gj, ts) < 1e-10);
}

TEST_CASE("panels_integrate") {
    QuadratureSpec q;
    q.rel_tol = 1e-12;
    Complex v = panels_integrate([](double x) { return Complex(std::exp(-x)); },
                                 {0.0, 2.0, 8.0, 30.0}, q);
    CHECK(rel(v, 1.0 - std::exp(-30.0)) < 1e-12);
}

TEST_CASE("quadrature spec validation") {
    QuadratureSpec q;
    q.rel_tol = 1e-16;
    CHECK_THROWS_AS(q.validate(), DomainError);
    QuadratureSpec q2;
    q2.exponent_left = -1.5;
    CHECK_THROWS_AS(
        tanh_sinh([](double) { return Complex(0.0); }, 0.0, 1.0, q2), DomainError);
}
