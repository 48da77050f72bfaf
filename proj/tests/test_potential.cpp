#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kinlab/potential.hpp"

using kinlab::DoubleWellPotential;

TEST_SUITE("potential") {

TEST_CASE("quartic well: hand values") {
    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    CHECK(std::abs(psi.eval(0.0, 0)) < 1e-15);
    CHECK(std::abs(psi.eval(1.0, 0)) < 1e-15);
    CHECK(psi.eval(0.5, 0) == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    CHECK(psi.eval(0.0, 1) == 0.0);
    CHECK(psi.eval(1.0, 1) == 0.0);
    CHECK(psi.eval(0.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(psi.eval(1.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
    // third and fourth derivatives of s^2(1-s)^2 = s^2 - 2s^3 + s^4
    CHECK(psi.eval(0.0, 3) == doctest::Approx(-12.0).epsilon(1e-14));
    CHECK(psi.eval(0.5, 4) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(psi.symmetric());
}

TEST_CASE("analytic derivatives match finite differences") {
    const DoubleWellPotential psi = kinlab::make_bump_asymmetric(1.0, 0.1);
    const double h = 3e-6;
    const double samples[] = {0.1, 0.25, 0.4, 0.5, 0.63, 0.8, 0.95};
    for (int k = 0; k < 4; ++k) {
        // the sharp bump makes successive derivatives grow ~20x, so compare
        // against the absolute scale of the order under test
        double scale = 1.0;
        for (double s : samples) scale = std::max(scale, std::abs(psi.eval(s, k + 1)));
        for (double s : samples) {
            const double fd =
                (psi.eval(s + h, k) - psi.eval(s - h, k)) / (2.0 * h);
            CHECK(std::abs(psi.eval(s, k + 1) - fd) < 1e-6 * scale);
        }
    }
}

TEST_CASE("tail decay rate is the softer well curvature") {
    CHECK(kinlab::decay_rate(kinlab::make_quartic(1.0)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    // tilted well: curvature 2 at s=0 and 3 at s=1, the min wins
    const DoubleWellPotential tilted = kinlab::make_tilted(1.0, 0.5);
    CHECK(tilted.eval(0.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(tilted.eval(1.0, 2) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(kinlab::decay_rate(tilted) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK_FALSE(tilted.symmetric());
}

TEST_CASE("interface-energy constant of the quartic well") {
    // integral over (0,1) of sqrt(2) s (1-s) = sqrt(2)/6
    CHECK(kinlab::c1_constant(kinlab::make_quartic(1.0)) ==
          doctest::Approx(std::sqrt(2.0) / 6.0).epsilon(1e-9));
    // amplitude scales the constant by its square root
    CHECK(kinlab::c1_constant(kinlab::make_quartic(4.0)) ==
          doctest::Approx(2.0 * std::sqrt(2.0) / 6.0).epsilon(1e-9));
}

TEST_CASE("localized bump keeps the wells and breaks the symmetry") {
    const DoubleWellPotential psi = kinlab::make_bump_asymmetric(1.0, 0.1);
    const DoubleWellPotential quartic = kinlab::make_quartic(1.0);
    CHECK(psi.eval(0.0, 0) == 0.0);
    CHECK(psi.eval(1.0, 0) == 0.0);
    CHECK(psi.eval(0.0, 1) == 0.0);
    CHECK(psi.eval(1.0, 1) == 0.0);
    CHECK(psi.eval(0.0, 2) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(psi.eval(1.0, 2) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_FALSE(psi.symmetric());
    // genuinely asymmetric about 1/2
    CHECK(std::abs(psi.eval(0.35, 0) - psi.eval(0.65, 0)) > 1e-4);
    // support of the extra piece is (0.2, 0.8): outside it the potential is
    // the plain quartic, and all derivatives join continuously at the ends
    for (double s : {0.05, 0.15, 0.2, 0.8, 0.9}) {
        for (int k = 0; k <= 5; ++k) {
            CHECK(std::abs(psi.eval(s, k) - quartic.eval(s, k)) < 1e-12);
        }
    }
    // C^5 join: derivative jump across the support edge vanishes. The probe
    // offset must be tiny because the first surviving one-sided derivative
    // (order 6 at the left edge) has scale ~2e7, leaving ~2e-7 at 1e-14.
    for (int k = 0; k <= 5; ++k) {
        CHECK(std::abs(psi.eval(0.2 + 1e-14, k) - psi.eval(0.2 - 1e-14, k)) < 1e-6);
        CHECK(std::abs(psi.eval(0.8 + 1e-14, k) - psi.eval(0.8 - 1e-14, k)) < 1e-6);
    }
    // interior positivity survives the bump
    for (int i = 1; i < 100; ++i) CHECK(psi.eval(i / 100.0, 0) > 0.0);
}

TEST_CASE("ill-posed wells are rejected") {
    CHECK_THROWS_AS(kinlab::make_quartic(0.0), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::make_quartic(-1.0), std::invalid_argument);
    // skew <= -amplitude kills the curvature of the s=1 well
    CHECK_THROWS_AS(kinlab::make_tilted(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::make_tilted(1.0, -1.5), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::make_bump_asymmetric(1.0, -5.0), std::invalid_argument);
    // a well polynomial dipping below zero between the wells is rejected
    const kinlab::Poly wells({0.0, 0.0, 1.0, -2.0, 1.0});
    const kinlab::Poly dip({1.0, -4.5, 4.5});  // negative near s = 1/2
    CHECK_THROWS_AS(DoubleWellPotential(wells * dip, "dipped", false),
                    std::invalid_argument);
    // symmetry flag contradicting the values is rejected
    const kinlab::Poly tilted({0.0, 0.0, 1.0, -1.5, 0.0, 0.5});
    CHECK_THROWS_AS(DoubleWellPotential(tilted, "fake-symmetric", true),
                    std::invalid_argument);
}

TEST_CASE("derivative order is range-checked") {
    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    CHECK_THROWS_AS(psi.eval(0.5, -1), std::invalid_argument);
    CHECK_THROWS_AS(psi.eval(0.5, 6), std::invalid_argument);
}

}  // TEST_SUITE
