#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kinlab/transmission.hpp"

using kinlab::Bar1D;
using kinlab::BarSolution;
using kinlab::Poly;

TEST_SUITE("transmission") {

TEST_CASE("force-free bar carries constant stress") {
    Bar1D bar;
    bar.length = 1.0;
    bar.interface = 0.5;
    bar.modulus = 1.0;
    bar.eps_bar = 0.2;
    bar.uL = 0.2;
    const BarSolution hat = kinlab::solve_hat(bar);

    // T = (D [u] - D eps_bar (L - gamma)) / L = 0.1 everywhere
    for (double x : {0.0, 0.3, 0.5, 0.7, 1.0})
        CHECK(hat.T.eval(x) == doctest::Approx(0.1).epsilon(1e-13));
    // displacement: slope 0.1 left of the interface, 0.3 right of it
    CHECK(hat.u.eval(0.25) == doctest::Approx(0.025).epsilon(1e-13));
    CHECK(hat.u.eval(0.75) == doctest::Approx(0.125).epsilon(1e-13));
    CHECK(hat.u.eval(1.0) == doctest::Approx(0.2).epsilon(1e-13));
    // continuity at the interface
    CHECK(hat.u.eval_left(0.5) == doctest::Approx(hat.u.eval_right(0.5)).epsilon(1e-14));
    CHECK(hat.T.eval_left(0.5) == doctest::Approx(hat.T.eval_right(0.5)).epsilon(1e-14));
}

TEST_CASE("uniform body force bends the stress linearly") {
    Bar1D bar;
    bar.body_force_left = Poly::constant(1.0);
    bar.body_force_right = Poly::constant(1.0);
    const BarSolution hat = kinlab::solve_hat(bar);
    // -T' = b with symmetric data: T(x) = 1/2 - x
    for (double x : {0.0, 0.25, 0.5, 0.9})
        CHECK(hat.T.eval(x) == doctest::Approx(0.5 - x).epsilon(1e-13));
    for (const Poly& piece : hat.T.pieces())
        CHECK(piece.derivative().eval(0.3) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(std::abs(hat.u.eval(1.0)) < 1e-13);
}

TEST_CASE("general data satisfy the equilibrium equations on a fine grid") {
    Bar1D bar;
    bar.length = 1.0;
    bar.interface = 0.45;
    bar.modulus = 2.0;
    bar.eps_bar = 0.3;
    bar.body_force_left = Poly({1.0, 2.0});
    bar.body_force_right = Poly::constant(-0.5);
    bar.u0 = 0.1;
    bar.uL = -0.2;
    const BarSolution hat = kinlab::solve_hat(bar);

    CHECK(hat.u.eval(0.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(hat.u.eval(1.0) == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(std::abs(hat.u.eval_left(0.45) - hat.u.eval_right(0.45)) < 1e-12);
    CHECK(std::abs(hat.T.eval_left(0.45) - hat.T.eval_right(0.45)) < 1e-12);

    const kinlab::PiecewisePoly du = hat.u.derivative();
    const kinlab::PiecewisePoly dT = hat.T.derivative();
    const int n = 10000;
    double worst_T = 0.0, worst_b = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = i / static_cast<double>(n);
        // breakpoint evaluation uses the right piece, so >= matches it
        const double phase = x >= 0.45 ? 1.0 : 0.0;
        const double b = x < 0.45 ? bar.body_force_left.eval(x)
                                  : bar.body_force_right.eval(x);
        worst_T = std::max(worst_T,
                           std::abs(hat.T.eval(x) -
                                    bar.modulus * (du.eval(x) - bar.eps_bar * phase)));
        worst_b = std::max(worst_b, std::abs(dT.eval(x) + b));
    }
    CHECK(worst_T < 1e-10);
    CHECK(worst_b < 1e-10);
}

TEST_CASE("secondary solve: constant stress, zero end displacements") {
    Bar1D bar;
    bar.eps_bar = 0.2;
    bar.uL = 0.2;
    const auto psi = kinlab::make_quartic(1.0);
    const BarSolution hat = kinlab::solve_hat(bar);
    const BarSolution check = kinlab::solve_check(bar, hat, psi);

    // with constant primary stress Tg = 0.1 and both curvatures 2:
    // Tc = -D eps^2 Tg / 2 = -0.002
    for (double x : {0.0, 0.4, 0.8})
        CHECK(check.T.eval(x) == doctest::Approx(-0.002).epsilon(1e-12));
    CHECK(std::abs(check.u.eval(0.0)) < 1e-14);
    CHECK(std::abs(check.u.eval(1.0)) < 1e-12);
    CHECK(std::abs(check.u.eval_left(0.5) - check.u.eval_right(0.5)) < 1e-13);
}

TEST_CASE("interface extraction: hand values and trace identity") {
    Bar1D bar;
    bar.length = 1.0;
    bar.interface = 0.5;
    bar.modulus = 2.0;
    bar.eps_bar = 0.25;
    bar.body_force_left = Poly::constant(1.0);
    bar.body_force_right = Poly::constant(3.0);
    bar.uL = 0.3;
    const auto psi = kinlab::make_quartic(1.0);
    const BarSolution hat = kinlab::solve_hat(bar);
    const BarSolution check = kinlab::solve_check(bar, hat, psi);
    const kinlab::InterfaceData d = kinlab::interface_data(bar, hat, check, psi, 1.5, -2.25);

    // 1D: continuous stress, so the one-sided contractions coincide
    CHECK(std::abs(d.eps_T_jump) < 1e-10);
    CHECK(d.eps_T_plus == doctest::Approx(d.eps_T_minus).epsilon(1e-12));
    CHECK(d.eps_T_mean == doctest::Approx(bar.eps_bar * hat.T.eval(0.5)).epsilon(1e-12));
    // displacement-gradient jump equals the transformation strain
    CHECK(d.u_star == doctest::Approx(0.25).epsilon(1e-14));
    // curvature of the displacement jumps by -[b]/D
    CHECK(d.a_star == doctest::Approx(-(3.0 - 1.0) / 2.0).epsilon(1e-14));
    CHECK(d.grad_term == doctest::Approx(bar.eps_bar * 2.0 * d.a_star).epsilon(1e-14));
    CHECK(d.sigma_hat_prime0 == doctest::Approx(-0.25 * 1.0).epsilon(1e-14));
    CHECK(d.kappa == 1.5);
    CHECK(d.kappa_prime == -2.25);
    CHECK(d.psi_pp_0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(d.psi_pp_1 == doctest::Approx(2.0).epsilon(1e-14));

    // check-stress trace identity (degenerate to sigma_check = mean in 1D)
    CHECK(d.sigma_check0 ==
          doctest::Approx(d.eps_check_T_mean - d.eps_T_jump * d.mean_stress_ratio())
              .epsilon(1e-10));
}

TEST_CASE("synthetic interface data honors the trace identities") {
    const auto psi = kinlab::make_tilted(1.0, 0.5);
    const kinlab::InterfaceData d = kinlab::make_synthetic_interface_data(
        psi, 0.04, 0.02, 0.01, 0.05, 1.0, 0.0, 0.2, 1.5, -2.25);
    CHECK(d.eps_T_mean == doctest::Approx(0.03).epsilon(1e-14));
    CHECK(d.eps_T_jump == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(0.5 * (d.eps_check_T_plus() + d.eps_check_T_minus()) ==
          doctest::Approx(d.eps_check_T_mean).epsilon(1e-13));
    CHECK(d.sigma_check0 ==
          doctest::Approx(d.eps_check_T_mean - d.eps_T_jump * d.mean_stress_ratio())
              .epsilon(1e-13));
    CHECK(d.psi_pp_1 == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("invalid bars are rejected") {
    Bar1D bar;
    bar.interface = 0.0;
    CHECK_THROWS_AS(kinlab::solve_hat(bar), std::invalid_argument);
    bar.interface = 1.5;
    CHECK_THROWS_AS(kinlab::solve_hat(bar), std::invalid_argument);
    bar.interface = 0.5;
    bar.modulus = 0.0;
    CHECK_THROWS_AS(kinlab::solve_hat(bar), std::invalid_argument);
    bar.modulus = 1.0;
    bar.length = -1.0;
    CHECK_THROWS_AS(bar.validate(), std::invalid_argument);
}

}  // TEST_SUITE
