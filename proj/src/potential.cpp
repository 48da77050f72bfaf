#include "kinlab/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace kinlab {

namespace {
std::array<Poly, 6> derivative_table(Poly p) {
    std::array<Poly, 6> t;
    t[0] = std::move(p);
    for (int k = 1; k < 6; ++k) t[k] = t[k - 1].derivative();
    return t;
}

// Coefficients of p(1 - u): Horner accumulation in the linear factor keeps the
// well at s = 1 an exact double root of the reflected expansion.
Poly reflect(const Poly& p) {
    const std::vector<double>& a = p.coeffs();
    const Poly lin({1.0, -1.0});
    Poly r = Poly::constant(0.0);
    for (std::size_t j = a.size(); j-- > 0;) r = r * lin + Poly::constant(a[j]);
    return r;
}

double falling(int n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= static_cast<double>(n - i);
    return v;
}

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= static_cast<double>(n - k + i) / i;
    return v;
}
}  // namespace

DoubleWellPotential::DoubleWellPotential(Poly base, std::string name, bool symmetric)
    : lo_(derivative_table(base)), hi_(derivative_table(reflect(base))),
      name_(std::move(name)), symmetric_(symmetric) {
    validate();
}

DoubleWellPotential::DoubleWellPotential(Poly base, double bump_scale, int bump_p,
                                         int bump_q, double bump_lo, double bump_hi,
                                         std::string name, bool symmetric)
    : lo_(derivative_table(base)), hi_(derivative_table(reflect(base))),
      bump_scale_(bump_scale), bump_p_(bump_p), bump_q_(bump_q), bump_lo_(bump_lo),
      bump_hi_(bump_hi), name_(std::move(name)), symmetric_(symmetric) {
    if (!(0.0 < bump_lo_ && bump_lo_ < bump_hi_ && bump_hi_ < 1.0))
        throw std::invalid_argument("potential: bump support must lie inside (0,1)");
    if (bump_p_ < 1 || bump_q_ < 1 || bump_p_ > 12 || bump_q_ > 12)
        throw std::invalid_argument("potential: bump exponents must be in 1..12");
    validate();
}

double DoubleWellPotential::eval(double s, int order) const {
    if (order < 0 || order > 5)
        throw std::invalid_argument("potential: derivative order must be in 0..5");
    double v = s <= 0.5 ? lo_[order].eval(s)
                        : (order % 2 ? -1.0 : 1.0) * hi_[order].eval(1.0 - s);
    if (bump_scale_ != 0.0 && s > bump_lo_ && s < bump_hi_) v += bump_eval(s, order);
    return v;
}

double DoubleWellPotential::bump_eval(double s, int order) const {
    // Leibniz expansion of the order-th derivative of (s-lo)^p (hi-s)^q; the
    // factored form has no cancellation between large expanded coefficients.
    const double u = s - bump_lo_;
    const double w = bump_hi_ - s;
    double acc = 0.0;
    for (int j = 0; j <= order; ++j) {
        const int m = order - j;
        if (j > bump_p_ || m > bump_q_) continue;
        const double term = binom(order, j) * falling(bump_p_, j) * falling(bump_q_, m) *
                            std::pow(u, bump_p_ - j) * std::pow(w, bump_q_ - m);
        acc += (m % 2 != 0) ? -term : term;
    }
    return bump_scale_ * acc;
}

void DoubleWellPotential::validate() const {
    const double tol = 1e-12;
    if (std::abs(eval(0.0, 0)) > tol || std::abs(eval(1.0, 0)) > tol)
        throw std::invalid_argument("potential: wells must sit at value zero");
    if (std::abs(eval(0.0, 1)) > tol || std::abs(eval(1.0, 1)) > tol)
        throw std::invalid_argument("potential: wells must be critical points");
    if (eval(0.0, 2) <= 0.0 || eval(1.0, 2) <= 0.0)
        throw std::invalid_argument("potential: well curvatures must be positive");
    for (int i = 1; i < 64; ++i) {
        double s = i / 64.0;
        if (eval(s, 0) <= 0.0)
            throw std::invalid_argument("potential: must be positive between the wells");
    }
    if (symmetric_) {
        for (int i = 0; i <= 32; ++i) {
            double z = i / 64.0;
            if (std::abs(eval(0.5 - z, 0) - eval(0.5 + z, 0)) > tol)
                throw std::invalid_argument("potential: symmetry flag set but values differ");
        }
    }
}

DoubleWellPotential make_quartic(double amplitude) {
    if (amplitude <= 0.0) throw std::invalid_argument("make_quartic: amplitude must be > 0");
    // A s^2 (1-s)^2 = A (s^2 - 2 s^3 + s^4)
    Poly p({0.0, 0.0, amplitude, -2.0 * amplitude, amplitude});
    return DoubleWellPotential(std::move(p), "quartic", true);
}

DoubleWellPotential make_bump_asymmetric(double amplitude, double height) {
    if (amplitude <= 0.0)
        throw std::invalid_argument("make_bump_asymmetric: amplitude must be > 0");
    if (height <= 0.0)
        throw std::invalid_argument("make_bump_asymmetric: height must be > 0");
    Poly quartic({0.0, 0.0, amplitude, -2.0 * amplitude, amplitude});
    // (s - 0.2)^6 (0.8 - s)^8, normalized to unit peak, scaled by height.
    // Peak of x^6 (w-x)^8 on (0, w) sits at x = 3w/7, w = 0.6.
    const double xpk = 3.0 * 0.6 / 7.0;
    const double peak = std::pow(xpk, 6) * std::pow(0.6 - xpk, 8);
    return DoubleWellPotential(std::move(quartic), height / peak, 6, 8, 0.2, 0.8,
                               "bump_asymmetric", false);
}

DoubleWellPotential make_tilted(double amplitude, double skew) {
    if (amplitude <= 0.0) throw std::invalid_argument("make_tilted: amplitude must be > 0");
    if (skew <= -amplitude)
        throw std::invalid_argument("make_tilted: skew must exceed -amplitude");
    if (skew == 0.0) return make_quartic(amplitude);
    // s^2 (1-s)^2 (A + beta s)
    double A = amplitude, beta = skew;
    Poly p({0.0, 0.0, A, beta - 2.0 * A, A - 2.0 * beta, beta});
    return DoubleWellPotential(std::move(p), "tilted", false);
}

double decay_rate(const DoubleWellPotential& psi) {
    double c0 = psi.eval(0.0, 2), c1 = psi.eval(1.0, 2);
    if (c0 <= 0.0 || c1 <= 0.0)
        throw std::invalid_argument("decay_rate: ill-posed potential (non-positive curvature)");
    return std::sqrt(std::min(c0, c1));
}

double c1_constant(const DoubleWellPotential& psi) {
    double v = adaptive_simpson(
        [&psi](double s) { return std::sqrt(std::max(2.0 * psi.eval(s, 0), 0.0)); }, 0.0,
        1.0, 1e-10);
    if (v <= 0.0) throw std::runtime_error("c1_constant: non-positive integral");
    return v;
}

}  // namespace kinlab
