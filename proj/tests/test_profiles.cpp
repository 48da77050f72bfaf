#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kinlab/numerics.hpp"
#include "kinlab/potential.hpp"
#include "kinlab/profiles.hpp"
#include "kinlab/transmission.hpp"

using kinlab::DoubleWellPotential;
using kinlab::InterfaceData;
using kinlab::Profile;

namespace {

std::vector<double> slope_samples(const DoubleWellPotential& psi, const Profile& S0) {
    std::vector<double> sp(S0.values.size());
    for (std::size_t i = 0; i < sp.size(); ++i)
        sp[i] = std::sqrt(std::max(2.0 * psi.eval(S0.values[i], 0), 0.0));
    return sp;
}

}  // namespace

TEST_SUITE("profiles") {

TEST_CASE("leading profile of the quartic well is the logistic curve") {
    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    const Profile S0 = kinlab::solve_S0(psi, 30.0, 2001);
    const double r2 = std::sqrt(2.0);

    double worst = 0.0;
    for (std::size_t i = 0; i < S0.grid.size(); ++i)
        worst = std::max(worst,
                         std::abs(S0.values[i] - 1.0 / (1.0 + std::exp(-r2 * S0.grid[i]))));
    CHECK(worst < 1e-8);

    // mirror symmetry about the midpoint
    const std::size_t n = S0.grid.size();
    double worst_sym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst_sym = std::max(worst_sym,
                             std::abs(S0.values[i] + S0.values[n - 1 - i] - 1.0));
    CHECK(worst_sym < 1e-10);

    CHECK(S0.values[S0.center_index()] == 0.5);
    CHECK(S0.decay_rate == doctest::Approx(r2).epsilon(1e-13));
}

TEST_CASE("profile quadratures: mass, energy, mirror overlap") {
    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    const Profile S0 = kinlab::solve_S0(psi, 30.0, 2001);
    const std::vector<double> sp = slope_samples(psi, S0);

    // total variation of the connection is one
    CHECK(kinlab::trapezoid(S0.grid, sp) == doctest::Approx(1.0).epsilon(1e-10));

    // squared slope integrates to the interface-energy constant
    std::vector<double> sp2(sp.size());
    for (std::size_t i = 0; i < sp.size(); ++i) sp2[i] = sp[i] * sp[i];
    CHECK(kinlab::trapezoid(S0.grid, sp2) ==
          doctest::Approx(kinlab::c1_constant(psi)).epsilon(1e-8));

    // mirror overlap of the logistic connection
    std::vector<double> mirror(sp.size());
    const std::size_t n = S0.grid.size();
    for (std::size_t i = 0; i < n; ++i)
        mirror[i] = S0.values[i] * S0.values[n - 1 - i];
    CHECK(kinlab::trapezoid(S0.grid, mirror) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));

    // odd moment of the squared slope vanishes on the symmetric grid
    std::vector<double> odd(sp.size());
    for (std::size_t i = 0; i < n; ++i) odd[i] = S0.grid[i] * sp2[i];
    CHECK(std::abs(kinlab::trapezoid(S0.grid, odd)) < 1e-9);
}

TEST_CASE("tail decay is exponential at the softer-well rate") {
    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    const Profile S0 = kinlab::solve_S0(psi, 30.0, 2001);
    const double a = S0.decay_rate;

    // bounded multiple of e^{-a zeta} on the right tail
    double worst_K = 0.0;
    std::vector<double> zs, logs;
    for (std::size_t i = 0; i < S0.grid.size(); ++i) {
        const double z = S0.grid[i];
        if (z < 4.0 || z > 10.0) continue;
        const double gap = 1.0 - S0.values[i];
        worst_K = std::max(worst_K, gap * std::exp(a * z));
        zs.push_back(z);
        logs.push_back(std::log(gap));
    }
    CHECK(worst_K <= 2.0);
    const kinlab::LineFit fit = kinlab::fit_line(zs, logs);
    CHECK(fit.slope == doctest::Approx(-a).epsilon(0.1));
}

TEST_CASE("discrete kernel identity converges at second order") {
    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    auto kernel_residual = [&psi](int n) {
        const Profile S0 = kinlab::solve_S0(psi, 30.0, n);
        const std::vector<double> sp = slope_samples(psi, S0);
        const double h = S0.spacing();
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < sp.size(); ++i) {
            const double lap = (sp[i - 1] - 2.0 * sp[i] + sp[i + 1]) / (h * h);
            worst = std::max(worst,
                             std::abs(psi.eval(S0.values[i], 2) * sp[i] - lap));
        }
        return worst;
    };
    const double coarse = kernel_residual(751);
    const double fine = kernel_residual(1501);
    CHECK(coarse / fine > 3.2);  // second-order truncation
    CHECK(fine < 1e-3);
}

TEST_CASE("leading speed coefficients: frozen hand values") {
    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    double s00 = 0.0, s01 = 0.0;

    InterfaceData d = kinlab::make_synthetic_interface_data(
        psi, 0.03, 0.03, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0);
    kinlab::s0_closed_form(d, psi, 0.01, 1.0, s00, s01);
    CHECK(s00 == doctest::Approx(-0.12727922061357856).epsilon(1e-9));
    CHECK(s01 == 0.0);

    InterfaceData d2 = kinlab::make_synthetic_interface_data(
        psi, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 2.0, 0.0);
    kinlab::s0_closed_form(d2, psi, 0.01, 1.0, s00, s01);
    kinlab::KineticCoefficients k;
    k.s00 = s00;
    k.s01 = s01;
    CHECK(k.s0(0.01) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(kinlab::kinetic_relation(k, 0.01, 0.01) ==
          doctest::Approx(0.2 + 0.1 * k.s1(0.01)).epsilon(1e-12));
}

TEST_CASE("first-order problem: solvability defect and boundary limits") {
    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    const Profile S0 = kinlab::solve_S0(psi, 30.0, 2001);
    const InterfaceData d = kinlab::make_synthetic_interface_data(
        psi, 0.05, 0.02, 0.01, 0.04, 1.0, 0.0, 0.15, 1.2, -1.44);
    const double lambda = 0.04, c = 1.0;
    double s00 = 0.0, s01 = 0.0;
    kinlab::s0_closed_form(d, psi, lambda, c, s00, s01);
    const double s0 = s00 + std::sqrt(lambda) * s01;

    const kinlab::FirstOrderRhs r = kinlab::assemble_first_order(psi, S0, d, s0, lambda, c);
    CHECK(std::abs(r.defect) < 1e-8);

    const Profile S1 = kinlab::solve_S1(psi, S0, d, s0, lambda, c);
    CHECK(std::abs(S1.values[S1.center_index()]) < 1e-12);
    CHECK(S1.left_limit == doctest::Approx(0.02 / 2.0).epsilon(1e-13));
    CHECK(S1.right_limit == doctest::Approx(0.05 / 2.0).epsilon(1e-13));
    CHECK(std::abs(S1.values.front() - S1.left_limit) < 1e-6);
    CHECK(std::abs(S1.values.back() - S1.right_limit) < 1e-6);

    // the deviation from the carrier decays like (1+z) e^{-a z}: the drive
    // rides on the profile slope, which decays at exactly the linearized well
    // rate, so the particular solution picks up one power of z (resonance)
    double worst_C = 0.0;
    std::vector<double> zs, logs;
    for (std::size_t i = 0; i < S1.grid.size(); ++i) {
        const double z = S1.grid[i];
        if (z < 4.0 || z > 14.5) continue;
        const double gap = std::abs(S1.values[i] - r.rho1[i]);
        worst_C = std::max(worst_C, gap * std::exp(S0.decay_rate * z) / (1.0 + z));
        if (z < 10.5 || gap < 1e-14) continue;
        zs.push_back(z);
        logs.push_back(std::log(gap));
    }
    CHECK(worst_C < 0.05);
    REQUIRE(zs.size() > 20);
    // far-window log slope: -a plus the logarithmic derivative of the linear
    // factor, about +0.13 over this window
    const kinlab::LineFit fit = kinlab::fit_line(zs, logs);
    CHECK(fit.slope > -S0.decay_rate - 0.05);
    CHECK(fit.slope < -S0.decay_rate + 0.20);

    // an inconsistent speed breaks solvability loudly
    CHECK_THROWS_AS(kinlab::solve_S1(psi, S0, d, s0 + 0.1, lambda, c),
                    std::runtime_error);
}

TEST_CASE("full pipeline on a symmetric well accepts rich data") {
    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    // jump content, remainder stress, gradient term, curvature all nonzero
    const InterfaceData d = kinlab::make_synthetic_interface_data(
        psi, 0.05, 0.02, 0.01, 0.04, 1.0, 0.3, 0.15, 1.2, -1.44);
    const kinlab::ProfileSet set = kinlab::solve_profiles(psi, d, 0.04, 1.0, 2001);
    CHECK(std::abs(set.defect_F1) < 1e-8);
    CHECK(std::abs(set.defect_F2F3) < 1e-6);
    CHECK(set.c1 == doctest::Approx(std::sqrt(2.0) / 6.0).epsilon(1e-9));
    CHECK(set.a == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::isfinite(set.coeffs.s10));
    CHECK(std::isfinite(set.coeffs.s11));
    // second-order corrector stays bounded after removing the linear carrier
    double worst = 0.0;
    for (std::size_t i = 0; i < set.S2.grid.size(); ++i)
        worst = std::max(worst, std::abs(set.S2.values[i] - set.rho2[i]));
    CHECK(worst < 10.0);
}

TEST_CASE("closed form and bordered multipliers agree") {
    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    const InterfaceData d = kinlab::make_synthetic_interface_data(
        psi, 0.05, 0.02, 0.01, 0.04, 1.0, 0.3, 0.15, 1.2, -1.44);
    const double lambda = 0.04, c = 1.3;
    const kinlab::KineticCoefficients k =
        kinlab::compute_kinetic_coefficients(psi, d, lambda, c, 2001);
    const kinlab::SolvabilitySpeeds sp =
        kinlab::solvability_speeds(psi, d, lambda, c, 2001);
    CHECK(sp.s0 == doctest::Approx(k.s0(lambda)).epsilon(1e-6));
    CHECK(sp.s1 == doctest::Approx(k.s1(lambda)).epsilon(1e-6));
}

TEST_CASE("uneven wells reject data the closed form cannot solve") {
    const DoubleWellPotential tilted = kinlab::make_tilted(1.0, 0.5);
    // remainder-stress slope on an uneven well: no symmetric cancellation
    const InterfaceData bad = kinlab::make_synthetic_interface_data(
        tilted, 0.03, 0.03, 0.0, 0.3, 1.0, 0.0, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(kinlab::solve_profiles(tilted, bad, 0.04, 1.0, 1501),
                    std::runtime_error);

    // the same well with plain jump data is solvable
    const InterfaceData good = kinlab::make_synthetic_interface_data(
        tilted, 0.03, 0.01, 0.005, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0);
    const kinlab::ProfileSet set = kinlab::solve_profiles(tilted, good, 0.04, 1.0, 1501);
    CHECK(std::abs(set.defect_F2F3) < 1e-6);
}

TEST_CASE("parameter domains are enforced") {
    kinlab::KineticCoefficients k;
    k.s00 = 1.0;
    CHECK_THROWS_AS(kinlab::kinetic_relation(k, 0.2, 0.04), std::domain_error);
    CHECK_THROWS_AS(kinlab::kinetic_relation(k, 0.0, 0.04), std::domain_error);
    CHECK_THROWS_AS(kinlab::kinetic_relation(k, 0.01, 1.5), std::domain_error);
    CHECK(kinlab::kinetic_relation(k, kinlab::mu_max(), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const DoubleWellPotential psi = kinlab::make_quartic(1.0);
    CHECK_THROWS_AS(kinlab::solve_S0(psi, 5.0, 2001), std::invalid_argument);
    CHECK_THROWS_AS(kinlab::solve_S0(psi, 30.0, 2000), std::invalid_argument);

    // profile shape validation
    Profile p;
    p.grid = {-1.0, 0.0, 1.0};
    p.values = {0.0, 0.5, 1.0};
    CHECK_THROWS_AS(p.validate_shape(), std::invalid_argument);
}

TEST_CASE("spherical curvature gradient helper") {
    CHECK(kinlab::kappa_prime_sphere(2.0, 3) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(kinlab::kappa_prime_sphere(4.0, 2) == doctest::Approx(-16.0).epsilon(1e-14));
    CHECK_THROWS_AS(kinlab::kappa_prime_sphere(1.0, 1), std::invalid_argument);
}

}  // TEST_SUITE
