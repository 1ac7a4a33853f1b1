#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zdpp/verify.hpp"

using namespace zdpp;

TEST_CASE("finite_n_table basics") {
    auto p = ZParams::complementary(1.2, 1.8);
    auto r1 = finite_n_table(p, 1);
    CHECK(r1.probabilities.size() == 1);
    CHECK(r1.probabilities[0].second == doctest::Approx(1.0));
    // single box: atoms at +1/2 and -1/2, each carrying mass 1
    CHECK(r1.atoms.size() == 2);
    CHECK(r1.atoms[0].first == doctest::Approx(-0.5));
    CHECK(r1.atoms[1].first == doctest::Approx(0.5));
    CHECK(r1.atoms[0].second == doctest::Approx(1.0));

    auto r2 = finite_n_table(p, 2);
    double t = p.t;
    for (auto& [lam, pr] : r2.probabilities) {
        if (lam.parts == std::vector<int>{2})
            CHECK(pr == doctest::Approx((2.2 * 2.8) / (2 * (t + 1))));
        else
            CHECK(pr == doctest::Approx((-0.2) * (-0.8) / (2 * (t + 1))));
    }
    CHECK(finite_n_table(p, 12).total_mass_error < 1e-10);
    CHECK_THROWS_AS(finite_n_table(p, 31), SizeGuard);
}

TEST_CASE("finite_n atoms reproduce the exact zeroth controlling moment") {
    auto p = ZParams::principal(Complex(0.3, 0.4));
    for (int n : {5, 12}) {
        auto rep = finite_n_table(p, n);
        double m0 = 0.0;
        for (auto& [pos, mass] : rep.atoms) m0 += std::abs(pos) * mass;
        CHECK(m0 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("convergence_check trend on the positive axis") {
    auto p = ZParams::principal(Complex(0.3, 0.4));
    auto reports = convergence_check(p, {10, 20, 30}, {{0.2, 0.4}});
    REQUIRE(reports.size() == 3);
    double prev = 1e300;
    for (auto& r : reports) {
        CHECK(r.pass);
        CHECK(r.deviation <= prev * 1.25);
        prev = r.deviation;
    }
    CHECK(reports.back().deviation < 0.10);
}

TEST_CASE("negative-axis bin mirrors the reflected positive bin") {
    auto p = ZParams::principal(Complex(0.3, 0.4));
    auto neg = convergence_check(p, {12}, {{-0.4, -0.2}});
    auto mirrored = convergence_check(p.reflected(), {12}, {{0.2, 0.4}});
    REQUIRE(neg.size() == 1);
    REQUIRE(mirrored.size() == 1);
    // same limit integral by Eq-2.0-style reflection
    CHECK(neg[0].route_b == doctest::Approx(mirrored[0].route_b).epsilon(1e-8));
}

TEST_CASE("bin near the support edge carries little mass") {
    auto p = ZParams::principal(Complex(0.3, 0.4));
    auto reports = convergence_check(p, {12}, {{0.9, 1.0}});
    CHECK(reports[0].route_a < 0.2);
    CHECK(reports[0].route_b < 0.2);
}

TEST_CASE("report serialization") {
    std::vector<CheckReport> reports{{"suite", "name-a", 1.0, 1.0 + 1e-9, 1e-9, 1e-6, true},
                                     {"suite", "name-b", 2.0, 3.0, 0.5, 1e-6, false}};
    std::string csv = reports_to_csv(reports);
    CHECK(csv.find("check,name,route_a,route_b,deviation,tolerance,pass") == 0);
    CHECK(csv.find("name-a") != std::string::npos);
    CHECK(csv.find("false") != std::string::npos);
    // 17-digit round-trip
    CHECK(csv.find("0.5") != std::string::npos);
    std::string js = reports_to_json(reports);
    CHECK(js.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("broken tolerance produces failing reports") {
    auto p = ZParams::complementary(1.2, 1.8);
    ToleranceOverrides tiny{1e-22};  // scales 1e-10 down to an unmeetable 1e-32
    auto reports = suite_normalization(p, 6, tiny);
    bool any_fail = false;
    for (auto& r : reports) any_fail |= !r.pass;
    CHECK(any_fail);
}

TEST_CASE("character suite at small n") {
    auto reports = suite_characters(5);
    for (auto& r : reports) CHECK(r.pass);
}

TEST_CASE("normalization suite") {
    auto p = ZParams::principal(Complex(0.3, 0.4));
    for (auto& r : suite_normalization(p, 8)) CHECK(r.pass);
}
