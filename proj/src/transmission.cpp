#include "kinlab/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace kinlab {

void Bar1D::validate() const {
    if (!(length > 0.0)) throw std::invalid_argument("Bar1D: length must be positive");
    if (!(interface > 0.0 && interface < length))
        throw std::invalid_argument("Bar1D: interface must lie strictly inside the bar");
    if (!(modulus > 0.0)) throw std::invalid_argument("Bar1D: modulus must be positive");
}

namespace {

// Displacement with u' = slope on each side, u(0) = u0, continuous at gamma.
PiecewisePoly integrate_slope(const Poly& slope_left, const Poly& slope_right,
                              double gamma, double length, double u0) {
    Poly ul = slope_left.antiderivative() + Poly::constant(u0);
    Poly ur = slope_right.antiderivative();
    ur = ur + Poly::constant(ul.eval(gamma) - ur.eval(gamma));
    return PiecewisePoly({0.0, gamma, length}, {ul, ur});
}

}  // namespace

BarSolution solve_hat(const Bar1D& bar) {
    bar.validate();
    const double L = bar.length, g = bar.interface, D = bar.modulus;

    // T(x) = Tg - int_g^x b, with Tg fixed by the end displacements.
    Poly Bl = bar.body_force_left.antiderivative();
    Poly Br = bar.body_force_right.antiderivative();
    Poly inner_left = Bl - Poly::constant(Bl.eval(g));    // int_g^x b for x < g
    Poly inner_right = Br - Poly::constant(Br.eval(g));   // int_g^x b for x > g
    const double I_bb = inner_left.integrate(0.0, g) + inner_right.integrate(g, L);

    const double Tg = (D * (bar.uL - bar.u0) - D * bar.eps_bar * (L - g) + I_bb) / L;

    Poly Tl = inner_left * -1.0 + Poly::constant(Tg);
    Poly Tr = inner_right * -1.0 + Poly::constant(Tg);

    // u' = T/D on the left, T/D + eps_bar on the right (transformed phase).
    Poly sl = Tl * (1.0 / D);
    Poly sr = Tr * (1.0 / D) + Poly::constant(bar.eps_bar);

    BarSolution sol;
    sol.T = PiecewisePoly({0.0, g, L}, {Tl, Tr});
    sol.u = integrate_slope(sl, sr, g, L, bar.u0);

    const double scale = std::max({1.0, std::abs(bar.u0), std::abs(bar.uL)});
    if (std::abs(sol.u.eval(L) - bar.uL) > 1e-10 * scale)
        throw std::runtime_error("solve_hat: end displacement not met (internal error)");
    return sol;
}

BarSolution solve_check(const Bar1D& bar, const BarSolution& hat,
                        const DoubleWellPotential& psi) {
    bar.validate();
    const double L = bar.length, g = bar.interface, D = bar.modulus;
    const double pp0 = psi.eval(0.0, 2), pp1 = psi.eval(1.0, 2);

    // The secondary problem has no body force, so its stress is constant;
    // the value follows from the zero end displacements.
    const Poly& Tl = hat.T.pieces()[0];
    const Poly& Tr = hat.T.pieces()[1];
    const double e2 = bar.eps_bar * bar.eps_bar;
    const double phase_integral = Tl.integrate(0.0, g) / pp0 + Tr.integrate(g, L) / pp1;
    const double Tc = -(D * e2 / L) * phase_integral;

    Poly cl = Tl * (e2 / pp0) + Poly::constant(Tc / D);
    Poly cr = Tr * (e2 / pp1) + Poly::constant(Tc / D);

    BarSolution sol;
    sol.T = PiecewisePoly({0.0, g, L}, {Poly::constant(Tc), Poly::constant(Tc)});
    sol.u = integrate_slope(cl, cr, g, L, 0.0);

    if (std::abs(sol.u.eval(L)) > 1e-10 * std::max(1.0, std::abs(Tc)))
        throw std::runtime_error("solve_check: end displacement not met (internal error)");
    return sol;
}

InterfaceData interface_data(const Bar1D& bar, const BarSolution& hat,
                             const BarSolution& check, const DoubleWellPotential& psi,
                             double kappa, double kappa_prime) {
    const double g = bar.interface;
    const double eb = bar.eps_bar;

    InterfaceData d;
    d.psi_pp_0 = psi.eval(0.0, 2);
    d.psi_pp_1 = psi.eval(1.0, 2);

    const double T_minus = hat.T.eval_left(g);
    const double T_plus = hat.T.eval_right(g);
    if (std::abs(T_plus - T_minus) > 1e-10 * std::max(1.0, std::abs(T_plus)))
        throw std::runtime_error("interface_data: primary stress jumps at the interface");

    d.eps_T_plus = eb * T_plus;
    d.eps_T_minus = eb * T_minus;
    d.eps_T_mean = 0.5 * (d.eps_T_plus + d.eps_T_minus);
    d.eps_T_jump = d.eps_T_plus - d.eps_T_minus;

    d.sigma_hat0 = eb * T_minus;
    d.sigma_hat_prime0 = -eb * bar.body_force_left.eval(g);

    const double Tc_minus = check.T.eval_left(g);
    const double Tc_plus = check.T.eval_right(g);
    d.sigma_check0 = eb * Tc_minus;
    d.eps_check_T_mean = eb * 0.5 * (Tc_plus + Tc_minus);

    d.u_star = eb;
    d.a_star = -(bar.body_force_right.eval(g) - bar.body_force_left.eval(g)) / bar.modulus;
    d.grad_term = eb * bar.modulus * d.a_star;

    d.kappa = kappa;
    d.kappa_prime = kappa_prime;

    const double lhs = d.sigma_check0;
    const double rhs = d.eps_check_T_mean - d.eps_T_jump * d.mean_stress_ratio();
    if (std::abs(lhs - rhs) > 1e-8 * std::max(1.0, std::abs(lhs)))
        throw std::runtime_error("interface_data: check-stress trace identity violated");
    return d;
}

InterfaceData make_synthetic_interface_data(const DoubleWellPotential& psi,
                                            double eps_T_plus, double eps_T_minus,
                                            double sigma_check0, double sigma_hat_prime0,
                                            double u_star, double a_star, double grad_term,
                                            double kappa, double kappa_prime) {
    InterfaceData d;
    d.psi_pp_0 = psi.eval(0.0, 2);
    d.psi_pp_1 = psi.eval(1.0, 2);
    d.eps_T_plus = eps_T_plus;
    d.eps_T_minus = eps_T_minus;
    d.eps_T_mean = 0.5 * (eps_T_plus + eps_T_minus);
    d.eps_T_jump = eps_T_plus - eps_T_minus;
    d.sigma_hat0 = d.eps_T_mean;  // not consumed by the profile problems
    d.sigma_hat_prime0 = sigma_hat_prime0;
    d.sigma_check0 = sigma_check0;
    // Mean of the one-sided check traces, consistent with the trace identity.
    d.eps_check_T_mean = sigma_check0 + d.eps_T_jump * d.mean_stress_ratio();
    d.u_star = u_star;
    d.a_star = a_star;
    d.grad_term = grad_term;
    d.kappa = kappa;
    d.kappa_prime = kappa_prime;
    return d;
}

}  // namespace kinlab
