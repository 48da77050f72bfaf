#ifndef KINLAB_ASYMPTOTIC_HPP
#define KINLAB_ASYMPTOTIC_HPP

#include <vector>

#include "kinlab/numerics.hpp"
#include "kinlab/potential.hpp"
#include "kinlab/profiles.hpp"
#include "kinlab/transmission.hpp"

namespace kinlab {

// Outer (slow-scale) expansion on the bar: order-parameter corrections
// S_tilde1..3 and the third-order displacement/stress pair, all piecewise
// polynomial in x with a break at the interface.
struct OuterExpansion {
    Bar1D bar;
    BarSolution hat;
    BarSolution check;
    PiecewisePoly S_tilde1, S_tilde2, S_tilde3;
    PiecewisePoly u_tilde, T_tilde;
    double lambda = 0.0;
    double c = 1.0;
    double speed_hint = 0.0;

    // Assembled outer fields at given mu (phase indicator included in S).
    double S_outer(double x, double mu) const;
    double u_outer(double x, double mu) const;
    double du_outer(double x, double mu) const;
    double T_outer(double x, double mu) const;
};

// Builds the outer expansion; the time derivative feeding the third-order
// correction is evaluated in a traveling frame moving at speed_hint.
OuterExpansion build_outer(const Bar1D& bar, const BarSolution& hat,
                           const BarSolution& check, const DoubleWellPotential& psi,
                           const InterfaceData& data, const ProfileSet& profiles,
                           double lambda, double c, double speed_hint);

// Cubic-spline sample of a profile with prescribed polynomial tails
// (value/slope/curvature of the asymptote beyond the sampled range).
struct TailedSpline {
    CubicSpline spline;
    double z_min = 0.0, z_max = 0.0;
    double left_val = 0.0, left_slope = 0.0, left_curv = 0.0;
    double right_val = 0.0, right_slope = 0.0, right_curv = 0.0;

    double eval(double z) const;
    double deriv(double z) const;
};

// Uniform approximate solution: inner expansion in the stretched coordinate
// blended with the outer expansion by a C-infinity cutoff supported on the
// matching annulus. Evaluates (u, S, T) at arbitrary x; derivatives of the
// blended displacement are assembled analytically (chain rule through the
// cutoff), never by differencing across the blend.
class CompositeField {
public:
    CompositeField(OuterExpansion outer, const DoubleWellPotential& psi,
                   const InterfaceData& data, const ProfileSet& profiles, double mu,
                   double lambda);

    double S(double x) const;
    double u(double x) const;
    double du(double x) const;  // exact x-derivative of the blended displacement
    double T(double x) const;

    double phi(double x) const;   // blending weight in [0,1]
    int region(double x) const;   // 0 = inner, 1 = match, 2 = outer

    double inner_radius() const { return r_inner_; }
    double match_radius() const { return r_match_; }
    double width() const { return width_; }
    double mu() const { return mu_; }
    double lambda() const { return lambda_; }
    double speed() const { return outer_.speed_hint; }
    const OuterExpansion& outer() const { return outer_; }
    const std::vector<double>& zeta_grid() const { return zeta_; }

    double S_inner_at(double zeta) const;  // inner expansion alone
    double S_outer_at(double x) const;     // outer expansion alone
    // Sup of |inner - outer| order parameter over the matching annulus.
    double matching_gap() const;

private:
    double zeta_of(double x) const { return (x - gamma_) / width_; }

    OuterExpansion outer_;
    DoubleWellPotential psi_;
    InterfaceData data_;
    double mu_ = 0.0, lambda_ = 0.0;
    double width_ = 0.0;   // (mu lambda)^{1/2}
    double gamma_ = 0.0;   // interface position
    double r_inner_ = 0.0, r_match_ = 0.0;
    double cutoff_scale_ = 0.0;  // d(arg)/dx of the blending cutoff

    std::vector<double> zeta_;
    TailedSpline S0_, S1_, S2_, IS0_, IS1_, IIS0_;
    PiecewisePoly v_hat_, v_hat_p_;    // hat remainder and its derivative
    PiecewisePoly v_check_, v_check_p_;
    PiecewisePoly hat_up_, check_up_, tilde_up_;  // displacement derivatives

    double u_inner(double x) const;
    double du_inner(double x) const;
};

CompositeField build_composite(const OuterExpansion& outer, const ProfileSet& profiles,
                               const InterfaceData& data, const DoubleWellPotential& psi,
                               double mu, double lambda);

// Region-wise residual norms of the composite field as an approximate
// solution: f1 = force balance, f2 = phase-field equation, f3 = boundary
// normal derivative of S. Sup-norms over inner-plus-match and outer regions
// separately, plus L1 norms over the whole bar. Throws if two evaluation
// resolutions disagree by more than 20% on any reported norm.
struct ResidualNorms {
    double f1_inner = 0.0;
    double f1_outer = 0.0;
    double f2_inner = 0.0;
    double f2_outer = 0.0;
    double f3 = 0.0;
    double f1_l1 = 0.0;
    double f2_l1 = 0.0;
};
ResidualNorms residuals(const CompositeField& field, const Bar1D& bar,
                        const DoubleWellPotential& psi, double mu, double lambda,
                        double c);

// Profile-table resolution needed before residuals() can certify its layer
// norms at regularization mu. The layer residual is measured by centered
// differences on the stretched node grid; their truncation scales like
// hz^2 / mu against a true residual that shrinks like sqrt(mu), so hz must
// shrink like mu^{3/4} (with a safety factor ~2.5). Returns an odd point
// count, at least 4001.
int residual_profile_points(const DoubleWellPotential& psi, double mu);

}  // namespace kinlab

#endif  // KINLAB_ASYMPTOTIC_HPP
