#ifndef KINLAB_POTENTIAL_HPP
#define KINLAB_POTENTIAL_HPP

#include <string>

#include "kinlab/numerics.hpp"

namespace kinlab {

// Double-well potential on the order parameter, wells pinned at 0 and 1 with
// well values and well slopes equal to zero. Derivatives up to order 5 are
// analytic (precomputed polynomial tables), never finite differences.
//
// The global part is stored twice, expanded about each well, and evaluated
// from the nearer one: the double roots at s = 0 and s = 1 are then computed
// without the catastrophic cancellation a single monomial expansion suffers
// on the far side (which would put an absolute noise floor ~1e-16 under the
// tails and ~1e-8 under sqrt(psi)).
class DoubleWellPotential {
public:
    DoubleWellPotential(Poly base, std::string name, bool symmetric);
    // Adds scale * (s - bump_lo)^p * (bump_hi - s)^q on (bump_lo, bump_hi),
    // identically zero outside (used for asymmetric test potentials; joins
    // with C^{p-1} / C^{q-1} continuity at the edges). Kept in factored form
    // so evaluation near the edges is exact to rounding.
    DoubleWellPotential(Poly base, double bump_scale, int bump_p, int bump_q,
                        double bump_lo, double bump_hi, std::string name,
                        bool symmetric);

    // Value (order 0) or order-th derivative, order in 0..5.
    double eval(double s, int order) const;
    bool symmetric() const { return symmetric_; }
    const std::string& name() const { return name_; }

    // Checks the well conditions (zero value/slope, positive curvature at
    // both wells, positive interior); throws std::invalid_argument otherwise.
    void validate() const;

private:
    double bump_eval(double s, int order) const;

    std::array<Poly, 6> lo_;   // derivative table of the global part in s
    std::array<Poly, 6> hi_;   // same, expanded in u = 1 - s
    double bump_scale_ = 0.0;  // zero means "no localized part"
    int bump_p_ = 0, bump_q_ = 0;
    double bump_lo_ = 0.0, bump_hi_ = 0.0;
    std::string name_;
    bool symmetric_ = false;
};

// Canonical symmetric well: amplitude * s^2 (1-s)^2.
DoubleWellPotential make_quartic(double amplitude);

// Quartic plus a localized C^5 bump supported in (0.2, 0.8): breaks the
// mirror symmetry about s = 1/2 while leaving both well curvatures equal.
DoubleWellPotential make_bump_asymmetric(double amplitude, double height);

// Tilted well s^2 (1-s)^2 (amplitude + skew * s): curvature 2*amplitude at
// s=0 and 2*(amplitude+skew) at s=1. Requires skew > -amplitude.
DoubleWellPotential make_tilted(double amplitude, double skew);

// Exponential decay rate of the interface profile tails:
// min of the square roots of the two well curvatures.
double decay_rate(const DoubleWellPotential& psi);

// Interface-energy constant: integral over (0,1) of sqrt(2 psi), adaptive
// quadrature with absolute tolerance 1e-10.
double c1_constant(const DoubleWellPotential& psi);

}  // namespace kinlab

#endif  // KINLAB_POTENTIAL_HPP
