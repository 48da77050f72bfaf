#ifndef KINLAB_PROFILES_HPP
#define KINLAB_PROFILES_HPP

#include <cstddef>
#include <vector>

#include "kinlab/potential.hpp"
#include "kinlab/transmission.hpp"

namespace kinlab {

// Admissible parameter ranges for the two small parameters.
inline constexpr double kLambdaMax = 1.0;
double mu_max();  // exp(-2)

// Sampled function of the stretched interface coordinate on [-Z, Z].
// For profiles whose tails grow linearly, left_limit/right_limit store the
// constant offset of the linear asymptote instead of a plain limit.
struct Profile {
    std::vector<double> grid;
    std::vector<double> values;
    double left_limit = 0.0;
    double right_limit = 0.0;
    double decay_rate = 0.0;

    double spacing() const;
    std::size_t center_index() const;  // index of zeta = 0
    void validate_shape() const;       // uniform, symmetric, odd length
};

// Coefficients of the interface-speed expansion
//   s = s0 + mu^{1/2} s1,  s0 = s00 + lambda^{1/2} s01,  s1 = s10 + lambda^{1/2} s11.
struct KineticCoefficients {
    double s00 = 0.0;
    double s01 = 0.0;
    double s10 = 0.0;
    double s11 = 0.0;

    double s0(double lambda) const;
    double s1(double lambda) const;
};

// Truncation half-width: max(12/a, 30) for decay rate a.
double default_half_width(const DoubleWellPotential& psi);

// Default solver knobs.
inline constexpr int kDefaultGridPoints = 4001;
inline constexpr double kTailTol = 1e-6;
inline constexpr double kDefectTol = 1e-6;

// Leading-order profile: S0' = sqrt(2 psi(S0)), S0(0) = 1/2, increasing from
// 0 to 1. Explicit fourth-order integration outward from the midpoint with
// substeps; throws if the tails have not settled within kTailTol at +-Z.
Profile solve_S0(const DoubleWellPotential& psi, double half_width, int n_points);

// Leading-order speed coefficients: s00 = -(c/c1) eps:<T>, s01 = c kappa.
void s0_closed_form(const InterfaceData& data, const DoubleWellPotential& psi,
                    double lambda, double c, double& s00, double& s01);

// First-order profile: (psi''(S0) - d^2/dzeta^2) S1 = F1 with S1(0) = 0 and
// constant asymptotes. Near-singular system solved by null-space deflation
// plus a kernel shift enforcing the midpoint normalization. Throws if the
// orthogonality defect of F1 exceeds kDefectTol (inconsistent s0/data).
Profile solve_S1(const DoubleWellPotential& psi, const Profile& S0,
                 const InterfaceData& data, double s0, double lambda, double c);

// First-order speed coefficients assembled from quadratures of S0 and S1.
void s1_closed_form(const DoubleWellPotential& psi, const Profile& S0, const Profile& S1,
                    const InterfaceData& data, double c, double& s10, double& s11);

// Second-order profile with the linearly growing corrector rho2 split off;
// same deflated solve. Throws if the orthogonality defect of F2+F3 exceeds
// kDefectTol (the closed-form s1 does not solve this configuration).
Profile solve_S2(const DoubleWellPotential& psi, const Profile& S0, const Profile& S1,
                 const InterfaceData& data, double s10, double s11, double lambda, double c);

// Speed from assembled coefficients; enforces 0 < mu <= mu_max(),
// 0 < lambda <= kLambdaMax.
double kinetic_relation(const KineticCoefficients& coeffs, double mu, double lambda);

// Assembled right-hand sides, exposed for diagnostics and tests.
struct FirstOrderRhs {
    std::vector<double> F1;
    std::vector<double> rho1;
    double defect = 0.0;  // trapezoid <F1, S0'>
};
FirstOrderRhs assemble_first_order(const DoubleWellPotential& psi, const Profile& S0,
                                   const InterfaceData& data, double s0, double lambda,
                                   double c);

struct SecondOrderRhs {
    std::vector<double> F2;
    std::vector<double> F3;
    std::vector<double> rho2;
    double defect = 0.0;  // trapezoid <F2 + F3, S0'>
};
SecondOrderRhs assemble_second_order(const DoubleWellPotential& psi, const Profile& S0,
                                     const Profile& S1, const InterfaceData& data,
                                     double s1, double lambda, double c);

// Full pipeline: S0, S1, S2, correctors, closed-form coefficients, and the
// two orthogonality defects, all on one grid.
struct ProfileSet {
    Profile S0, S1, S2;
    std::vector<double> rho1, rho2;
    KineticCoefficients coeffs;
    double c1 = 0.0;
    double a = 0.0;
    double defect_F1 = 0.0;
    double defect_F2F3 = 0.0;
};
ProfileSet solve_profiles(const DoubleWellPotential& psi, const InterfaceData& data,
                          double lambda, double c, int n_points = kDefaultGridPoints,
                          double half_width_override = 0.0);

// Closed-form coefficients only (no S2 solve).
KineticCoefficients compute_kinetic_coefficients(const DoubleWellPotential& psi,
                                                 const InterfaceData& data, double lambda,
                                                 double c,
                                                 int n_points = kDefaultGridPoints);

// Cross-validation oracle: recovers s0 and s1 as the extra unknowns of
// augmented (bordered) linear solves in which the speed coefficient
// multiplies S0'/c and the midpoint value is pinned to zero, run at two
// resolutions and Richardson-extrapolated.
struct SolvabilitySpeeds {
    double s0 = 0.0;
    double s1 = 0.0;
};
SolvabilitySpeeds solvability_speeds(const DoubleWellPotential& psi,
                                     const InterfaceData& data, double lambda, double c,
                                     int n_points = kDefaultGridPoints);

// Normal derivative of the mean curvature for a d-dimensional sphere,
// kappa' = -kappa^2/(d-1); provided as a helper, never assumed.
double kappa_prime_sphere(double kappa, int dim);

}  // namespace kinlab

#endif  // KINLAB_PROFILES_HPP
