#ifndef KINLAB_TRANSMISSION_HPP
#define KINLAB_TRANSMISSION_HPP

#include "kinlab/numerics.hpp"
#include "kinlab/potential.hpp"

namespace kinlab {

// Two-phase elastic bar on [0, length] with the phase boundary at
// `interface`; the S=1 phase occupies x > interface (the interface normal
// points toward increasing x). The body force may jump at the interface.
struct Bar1D {
    double length = 1.0;
    double interface = 0.5;
    double modulus = 1.0;        // scalar elastic modulus
    double eps_bar = 0.0;        // transformation strain
    Poly body_force_left;        // body force for x < interface
    Poly body_force_right;       // body force for x > interface
    double u0 = 0.0;             // prescribed displacement at x = 0
    double uL = 0.0;             // prescribed displacement at x = length

    void validate() const;
};

// Piecewise-polynomial displacement/stress pair on {[0,interface],[interface,L]}.
struct BarSolution {
    PiecewisePoly u;
    PiecewisePoly T;
};

// Scalar interface quantities consumed by the profile boundary-value
// problems. In 1D the stress is continuous across the interface, so the
// plus/minus stress contractions coincide and the stress jump vanishes;
// the struct still carries all fields so synthetic data with genuinely
// three-dimensional jump content can drive the same solvers.
struct InterfaceData {
    double eps_T_plus = 0.0;        // eps_bar : T-hat from the S=1 side
    double eps_T_minus = 0.0;       // eps_bar : T-hat from the S=0 side
    double eps_T_mean = 0.0;        // eps_bar : <T-hat>
    double eps_T_jump = 0.0;        // eps_bar : [T-hat]
    double sigma_hat0 = 0.0;        // interface trace of the hat remainder stress
    double sigma_hat_prime0 = 0.0;  // its normal derivative at the interface
    double sigma_check0 = 0.0;      // interface trace of the check remainder stress
    double eps_check_T_mean = 0.0;  // eps_bar : <T-check>
    double u_star = 0.0;            // jump of the normal displacement derivative
    double a_star = 0.0;            // jump of the second normal derivative
    double grad_term = 0.0;         // eps_bar : D eps(a* (x) n + surface gradient of u*)
    double kappa = 0.0;             // interface curvature (sum of principal curvatures)
    double kappa_prime = 0.0;       // normal derivative of the curvature field
    double psi_pp_0 = 0.0;          // well curvature at s = 0
    double psi_pp_1 = 0.0;          // well curvature at s = 1

    // One-sided contractions of the check stress, from the trace identities.
    double eps_check_T_plus() const { return sigma_check0 + eps_T_jump * eps_T_plus / psi_pp_1; }
    double eps_check_T_minus() const { return sigma_check0 + eps_T_jump * eps_T_minus / psi_pp_0; }
    // Mean of the one-sided stress-to-curvature ratios.
    double mean_stress_ratio() const {
        return 0.5 * (eps_T_plus / psi_pp_1 + eps_T_minus / psi_pp_0);
    }
};

// Primary elastic solve: -T' = b, T = D(u' - eps_bar * phase), u given at
// both ends, displacement and traction continuous at the interface.
BarSolution solve_hat(const Bar1D& bar);

// Secondary elastic solve sourced by the primary stress: the phase field is
// replaced by (eps_bar T-hat)/psi''(phase value) and the end data vanish.
BarSolution solve_check(const Bar1D& bar, const BarSolution& hat,
                        const DoubleWellPotential& psi);

// Extracts every scalar the profile problems need from the two elastic
// solutions; curvature inputs are caller-supplied (zero for a straight bar).
// Verifies the internal consistency identity between the check-stress trace
// and the one-sided stress ratios to 1e-8 and throws on violation.
InterfaceData interface_data(const Bar1D& bar, const BarSolution& hat,
                             const BarSolution& check, const DoubleWellPotential& psi,
                             double kappa, double kappa_prime);

// Assembles a self-consistent InterfaceData from free parameters (used by
// tests and the kinetics command to exercise jump content a 1D bar cannot
// produce). Derived fields are filled via the same trace identities the
// 1D extraction satisfies.
InterfaceData make_synthetic_interface_data(const DoubleWellPotential& psi,
                                            double eps_T_plus, double eps_T_minus,
                                            double sigma_check0, double sigma_hat_prime0,
                                            double u_star, double a_star, double grad_term,
                                            double kappa, double kappa_prime);

}  // namespace kinlab

#endif  // KINLAB_TRANSMISSION_HPP
