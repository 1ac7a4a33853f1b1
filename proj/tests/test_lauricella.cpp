#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "zdpp/lauricella.hpp"
#include "zdpp/special.hpp"

using namespace zdpp;

namespace {
double rel(Complex a, Complex b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// brute-force double sum oracle, k_i <= 200, terms built by ratio updates
Complex brute_fb2(const FBParams& p, Complex y1, Complex y2) {
    Complex total = 0.0;
    Complex row = 1.0;  // term at (k1, 0)
    for (int k1 = 0; k1 <= 200; ++k1) {
        Complex t = row;
        for (int k2 = 0; k2 <= 200; ++k2) {
            total += t;
            t *= (p.a[1] + static_cast<double>(k2)) * (p.b[1] + static_cast<double>(k2)) /
                 ((p.c + static_cast<double>(k1 + k2)) * (k2 + 1.0)) * y2;
        }
        row *= (p.a[0] + static_cast<double>(k1)) * (p.b[0] + static_cast<double>(k1)) /
               ((p.c + static_cast<double>(k1)) * (k1 + 1.0)) * y1;
    }
    return total;
}
}  // namespace

TEST_CASE("fb_series basics") {
    FBParams p{{0.3, 0.4}, {0.5, 0.6}, 1.7};
    std::vector<Complex> zero{0.0, 0.0};
    CHECK(fb_series(p, zero).value == Complex(1.0));
    // m=1 Gauss reduction: F_B(a;b;b|y) = (1-y)^{-a}
    FBParams g{{0.7}, {1.3}, 1.3};
    CHECK(rel(fb_series(g, {Complex(0.3)}).value, std::pow(0.7, -0.7)) < 1e-12);
    // brute-force double-sum oracle
    FBParams p2{{0.3, 0.4}, {0.5, 0.6}, 1.7};
    Complex y1(0.2), y2(-0.1);
    CHECK(rel(fb_series(p2, {y1, y2}).value, brute_fb2(p2, y1, y2)) < 1e-10);
    CHECK_THROWS_AS(fb_series(p2, {Complex(0.97), Complex(0.0)}), OutsidePolydisc);
}

TEST_CASE("fb_series triple-permutation and a<->b invariance") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-0.8, 0.9);
    for (int trial = 0; trial < 4; ++trial) {
        FBParams p;
        std::vector<Complex> y;
        for (int i = 0; i < 3; ++i) {
            p.a.push_back(Complex(U(rng), 0.3 * U(rng)));
            p.b.push_back(Complex(U(rng), -0.2 * U(rng)));
            y.push_back(Complex(0.7 * U(rng), 0.2 * U(rng)));
        }
        p.c = Complex(1.9, 0.1);
        Complex base = fb_series(p, y).value;
        FBParams q{{p.a[2], p.a[0], p.a[1]}, {p.b[2], p.b[0], p.b[1]}, p.c};
        std::vector<Complex> yq{y[2], y[0], y[1]};
        CHECK(rel(base, fb_series(q, yq).value) < 1e-12);
        FBParams s = p;
        std::swap(s.a[1], s.b[1]);
        CHECK(rel(base, fb_series(s, y).value) < 1e-12);
    }
}

TEST_CASE("fb_series derivative contiguity (m=2)") {
    FBParams p{{0.3, 0.45}, {0.52, 0.61}, 1.7};
    std::vector<Complex> y{Complex(0.31), Complex(-0.22)};
    for (int k = 0; k < 2; ++k) {
        double h = 1e-5;
        auto yp = y, ym = y;
        yp[k] += h;
        ym[k] -= h;
        Complex fd = (fb_series(p, yp).value - fb_series(p, ym).value) / (2.0 * h);
        FBParams ph = p;
        ph.a[k] += 1.0;
        ph.b[k] += 1.0;
        ph.c += 1.0;
        Complex rhs = p.a[k] * p.b[k] / p.c * fb_series(ph, y).value;
        CHECK(rel(fd, rhs) < 1e-6);
    }
}

TEST_CASE("fb_euler_integral") {
    FBParams p{{0.7}, {0.5}, 1.3};
    double y = -0.5;
    Complex se = gauss_2f1(Complex(0.7), Complex(0.5), Complex(1.3), Complex(y)).value;
    CHECK(rel(fb_euler_integral(p, {y}).value, se) < 1e-8);
    // y -> 0^- limit: Gamma(c) * Dirichlet value = 1
    CHECK(rel(fb_euler_integral(p, {-1e-12}).value, 1.0) < 1e-8);
    FBParams p2{{0.3, 0.4}, {0.5, 0.6}, 2.3};
    Complex e2 = fb_euler_integral(p2, {-3.0, -7.0}).value;
    Complex c2 = fb_continuation(p2, {-3.0, -7.0}).value;
    CHECK(rel(e2, c2) < 1e-6);
    CHECK_THROWS_AS(fb_euler_integral(FBParams{{0.7}, {-0.5}, 1.3}, {-1.0}),
                    PreconditionViolated);
    CHECK_THROWS_AS(fb_euler_integral(FBParams{{0.7}, {0.5}, 0.4}, {-1.0}),
                    PreconditionViolated);
    CHECK_THROWS_AS(fb_euler_integral(p, {0.5}), PreconditionViolated);
}

TEST_CASE("fb_mellin_barnes m=1") {
    FBParams p{{0.7}, {0.5}, 1.3};
    CHECK(rel(fb_mellin_barnes(p, {-0.5}).value,
              fb_euler_integral(p, {-0.5}).value) < 1e-6);
    CHECK(rel(fb_mellin_barnes(p, {-10.0}).value,
              fb_continuation(p, {-10.0}).value) < 1e-6);
    // crossed-pole parameters (negative Re a, b)
    FBParams q{{-0.8}, {-0.2}, 1.3};
    Complex g = gauss_2f1(Complex(-0.8), Complex(-0.2), Complex(1.3), Complex(-0.6)).value;
    CHECK(rel(fb_mellin_barnes(q, {-0.6}).value, g) < 1e-9);
    // contour forced onto a pole of Gamma(a+s): a = 0.2 has pole at s = -0.2
    ContourSpec bad;
    bad.choose_auto = false;
    bad.abscissa = -0.2;
    FBParams r{{0.2}, {0.8}, 1.16};
    CHECK_THROWS_AS(fb_mellin_barnes(r, {-0.6}, bad), PoleOnContour);
}

TEST_CASE("fb_mellin_barnes m=2 cross-checks") {
    FBParams p{{0.3, 0.4}, {0.5, 0.6}, 2.3};
    CHECK(rel(fb_mellin_barnes(p, {-0.5, -0.7}).value,
              fb_euler_integral(p, {-0.5, -0.7}).value) < 1e-6);
    CHECK(rel(fb_mellin_barnes(p, {-3.0, -7.0}).value,
              fb_continuation(p, {-3.0, -7.0}).value) < 1e-6);
    // z-measure-shaped parameters: series region and expansion region
    double z = 1.2, zp = 1.8;
    FBParams pa{{1.0 - zp, -z}, {1.0 - z, -zp}, (1.0 - z) * (1.0 - zp)};
    std::vector<Complex> ys{Complex(-0.9), Complex(-0.9)};
    Complex s = fb_series(pa, ys).value;
    CHECK(rel(fb_mellin_barnes(pa, {-0.9, -0.9}).value, s) < 1e-8);
    Complex c = fb_continuation(pa, {-3.0, -3.0}).value;
    CHECK(rel(fb_mellin_barnes(pa, {-3.0, -3.0}).value, c) < 1e-8);
    CHECK_THROWS_AS(fb_mellin_barnes(FBParams{{0.1, 0.1, 0.1}, {0.2, 0.2, 0.2}, 1.0},
                                     {-1.0, -1.0, -1.0}),
                    SizeGuard);
}

TEST_CASE("fb_continuation reduces to the Gauss inversion at m=1") {
    FBParams p{{0.7}, {0.5}, 1.3};
    double y = -10.0;
    Complex want = gauss_2f1_continued(Complex(0.7), Complex(0.5), Complex(1.3), y).value;
    CHECK(rel(fb_continuation(p, {y}).value, want) < 1e-10);
    CHECK_THROWS_AS(fb_continuation(p, {-1.0}), PreconditionViolated);
    CHECK_THROWS_AS(fb_continuation(FBParams{{0.7}, {1.7}, 1.3}, {-5.0}),
                    DegenerateDifference);
}

TEST_CASE("fb_continuation m=2 equals Euler and has 2^m branches") {
    FBParams p{{0.3, 0.4}, {0.5, 0.6}, 2.3};
    std::vector<double> y{-5.0, -9.0};
    CHECK(rel(fb_continuation(p, y).value, fb_euler_integral(p, y).value) < 1e-6);
    Complex sum = 0.0;
    for (unsigned mask = 0; mask < 4; ++mask)
        sum += fb_continuation_branch(p, y, mask);
    sum *= gamma(p.c);
    CHECK(rel(sum, fb_continuation(p, y).value) < 1e-12);
    // each branch scales like (-y_1)^{-e}, e = a_1 or b_1: log-log slope
    for (unsigned mask : {1u, 0u}) {
        double e_expect = (mask & 1u) ? p.a[0].real() : p.b[0].real();
        double y1a = -40.0, y1b = -80.0;
        Complex br_a = fb_continuation_branch(p, {y1a, -9.0}, mask);
        Complex br_b = fb_continuation_branch(p, {y1b, -9.0}, mask);
        double slope = std::log(std::abs(br_a / br_b)) / std::log(y1b / y1a);
        CHECK(std::abs(slope - e_expect) < 0.02);
    }
}

TEST_CASE("leading behavior as y_1 -> -inf") {
    FBParams p{{0.3, 0.4}, {0.5, 0.6}, 2.3};
    double emin = std::min(p.a[0].real(), p.b[0].real());
    double prev = 0.0;
    for (double y1 : {-50.0, -200.0, -800.0}) {
        double v = std::abs(fb_continuation(p, {y1, -7.0}).value) * std::pow(-y1, emin);
        if (prev != 0.0) CHECK(v < prev * 1.5);
        prev = v;
    }
}

TEST_CASE("fb_continuation_log matches Euler (m=1 and m=2)") {
    std::vector<Complex> a1{0.6};
    CHECK(rel(fb_continuation_log(a1, Complex(1.4), {-8.0}).value,
              fb_euler_integral(FBParams{{0.6}, {0.6}, 1.4}, {-8.0}).value) < 1e-6);
    std::vector<Complex> a2{0.6, 0.3};
    CHECK(rel(fb_continuation_log(a2, Complex(2.1), {-8.0, -5.0}).value,
              fb_euler_integral(FBParams{{0.6, 0.3}, {0.6, 0.3}, 2.1}, {-8.0, -5.0})
                  .value) < 1e-6);
}

TEST_CASE("fb_continuation brackets the log case as a-b -> 0") {
    std::vector<Complex> a{0.6};
    Complex c(1.4);
    double y = -8.0;
    Complex logval = fb_continuation_log(a, c, {y}).value;
    double prev_err = 1e300;
    for (double eps : {1e-3, 1e-4}) {
        FBParams p{{0.6 + eps}, {0.6 - eps}, c};
        double err = std::abs(fb_continuation(p, {y}).value - logval);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-3 * std::abs(logval));
}

TEST_CASE("fb_continuation_log ln(-y) coefficient at k=0, m=1") {
    // term-by-term extraction: at k=0 the prefactor Gamma(c)/Gamma^2(a)
    // meets Gamma(a+0), so the ln(-y) slope is Gamma(c)/(Gamma(a)Gamma(c-a))
    std::vector<Complex> a{0.6};
    Complex c(1.4);
    auto at = [&](double y) { return fb_continuation_log(a, c, {y}).value; };
    double y1 = -3e3, y2 = -9e3;
    Complex lead1 = std::pow(-y1, 0.6) * at(y1);
    Complex lead2 = std::pow(-y2, 0.6) * at(y2);
    Complex got = (lead2 - lead1) / std::log(y2 / y1);
    Complex want = gamma(c) * rgamma(Complex(0.6)) * rgamma(c - 0.6);
    CHECK(rel(got, want) < 1e-3);
}

TEST_CASE("fb_eval dispatcher picks working routes") {
    double z = 1.2, zp = 1.8;
    FBParams pa{{1.0 - zp, -z}, {1.0 - z, -zp}, (1.0 - z) * (1.0 - zp)};
    for (double y : {-0.5, -1.5, -3.5}) {
        Complex direct = fb_mellin_barnes(pa, {y, y}).value;
        Complex via = fb_eval(pa, {y, y}).value;
        CHECK(rel(direct, via) < 1e-8);
    }
}

TEST_CASE("f_n n=1: coincident derivative vs explicit three-term form") {
    auto zp = ZParams::complementary(1.2, 1.8);
    const Complex z = zp.z, zpr = zp.zprime;
    const Complex c = (1.0 - z) * (1.0 - zpr);
    double yv = -5.0;
    FNArgs args{zp, 1, {yv}, {yv}};
    Complex got = f_n(args);
    FBParams A{{1.0 - zpr, -z}, {1.0 - z, -zpr}, c};
    FBParams Ap{{2.0 - zpr, -z}, {2.0 - z, -zpr}, c + 1.0};
    FBParams App{{1.0 - zpr, 1.0 - z}, {1.0 - z, 1.0 - zpr}, c + 1.0};
    std::vector<double> y2{yv, yv};
    Complex want = fb_eval(A, y2).value +
                   yv * (fb_eval(Ap, y2).value - (zp.t / c) * fb_eval(App, y2).value);
    CHECK(rel(got, want) < 1e-10);
}

TEST_CASE("f_n finiteness at coincidence and separated-point wiring") {
    auto zp = ZParams::complementary(1.2, 1.8);
    double y = -6.0;
    Complex at_coin = f_n(FNArgs{zp, 1, {y}, {y}});
    for (double h : {1e-2, 1e-3}) {
        Complex off = f_n(FNArgs{zp, 1, {y}, {y * (1.0 + h)}});
        CHECK(rel(off, at_coin) < 10.0 * h);
    }
    Complex a = f_n(FNArgs{zp, 1, {-4.0}, {-6.0}});
    FBParams p0{{1.0 - zp.zprime, -zp.z}, {1.0 - zp.z, -zp.zprime},
                zp.t - (zp.z + zp.zprime - 1.0)};
    FBParams p1{{-zp.zprime, 1.0 - zp.z}, {-zp.z, 1.0 - zp.zprime}, p0.c};
    std::vector<double> yy{-4.0, -6.0};
    Complex manual = (-4.0 * fb_eval(p0, yy).value - -6.0 * fb_eval(p1, yy).value) /
                     (-4.0 - -6.0);
    CHECK(rel(a, manual) < 1e-10);
}

TEST_CASE("f_n principal series and n=2") {
    auto zp = ZParams::principal(Complex(0.3, 0.4));
    Complex v = f_n(FNArgs{zp, 1, {-5.0}, {-5.0}});
    CHECK(std::isfinite(v.real()));
    CHECK(std::isfinite(v.imag()));
    Complex v2 = f_n(FNArgs{zp, 2, {-5.0, -8.0}, {-8.0, -5.0}});
    CHECK(std::isfinite(v2.real()));
    Complex v2c = f_n(FNArgs{zp, 2, {-5.0, -8.0}, {-5.0, -8.0}});
    CHECK(std::isfinite(v2c.real()));
}

TEST_CASE("f_n guards") {
    auto zp = ZParams::complementary(1.2, 1.8);
    CHECK_THROWS_AS(f_n(FNArgs{zp, 4, {-1, -1, -1, -1}, {-1, -1, -1, -1}}), SizeGuard);
    CHECK_THROWS_AS(f_n(FNArgs{zp, 1, {2.0}, {-1.0}}), DomainError);
}
