#include "kinlab/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kinlab {

double OuterExpansion::S_outer(double x, double mu) const {
    const double ind = x >= bar.interface ? 1.0 : 0.0;
    const double rmu = std::sqrt(mu);
    return ind + rmu * S_tilde1.eval(x) + mu * S_tilde2.eval(x) +
           mu * rmu * S_tilde3.eval(x);
}

double OuterExpansion::u_outer(double x, double mu) const {
    return hat.u.eval(x) + std::sqrt(mu) * check.u.eval(x) + mu * u_tilde.eval(x);
}

double OuterExpansion::du_outer(double x, double mu) const {
    return hat.u.derivative().eval(x) + std::sqrt(mu) * check.u.derivative().eval(x) +
           mu * u_tilde.derivative().eval(x);
}

double OuterExpansion::T_outer(double x, double mu) const {
    return bar.modulus * (du_outer(x, mu) - bar.eps_bar * S_outer(x, mu));
}

namespace {

Poly linear_in_shifted(double coeff, double x0) {
    // coeff * (x - x0) as a polynomial in x
    return Poly({-coeff * x0, coeff});
}

}  // namespace

OuterExpansion build_outer(const Bar1D& bar, const BarSolution& hat,
                           const BarSolution& check, const DoubleWellPotential& psi,
                           const InterfaceData& data, const ProfileSet& profiles,
                           double lambda, double c, double speed_hint) {
    bar.validate();
    if (!(lambda > 0.0 && lambda <= kLambdaMax))
        throw std::domain_error("build_outer: lambda outside (0, 1]");
    if (!(c > 0.0)) throw std::invalid_argument("build_outer: mobility must be positive");

    const double g = bar.interface, L = bar.length, D = bar.modulus, eb = bar.eps_bar;
    const double pp0 = data.psi_pp_0, pp1 = data.psi_pp_1;
    const double ppp0 = psi.eval(0.0, 3), ppp1 = psi.eval(1.0, 3);
    const double pppp0 = psi.eval(0.0, 4), pppp1 = psi.eval(1.0, 4);
    const double sqrt_l = std::sqrt(lambda);

    OuterExpansion out;
    out.bar = bar;
    out.hat = hat;
    out.check = check;
    out.lambda = lambda;
    out.c = c;
    out.speed_hint = speed_hint;

    // First-order correction eps T-hat / psi''(phase) per side.
    const Poly s1l = hat.T.pieces()[0] * (eb / pp0);
    const Poly s1r = hat.T.pieces()[1] * (eb / pp1);
    out.S_tilde1 = PiecewisePoly({0.0, g, L}, {s1l, s1r});

    // Second-order correction.
    const Poly s2l = check.T.pieces()[0] * (eb / pp0) - s1l * s1l * (ppp0 / (2.0 * pp0));
    const Poly s2r = check.T.pieces()[1] * (eb / pp1) - s1r * s1r * (ppp1 / (2.0 * pp1));
    out.S_tilde2 = PiecewisePoly({0.0, g, L}, {s2l, s2r});

    // Interface traces of the third-order displacement, from profile
    // quadratures of the decaying parts of S1 and of the running S0 integral.
    const Profile& S0 = profiles.S0;
    const Profile& S1 = profiles.S1;
    S0.validate_shape();
    S1.validate_shape();
    const std::size_t n = S0.grid.size();
    const std::size_t i0 = S0.center_index();
    const double a = S0.decay_rate;

    std::vector<double> xs(S0.grid.begin(), S0.grid.begin() + i0 + 1);
    std::vector<double> ys(i0 + 1);
    for (std::size_t i = 0; i <= i0; ++i) ys[i] = S1.values[i] - S1.left_limit;
    const double int_left = trapezoid(xs, ys) + ys.front() / a;

    xs.assign(S0.grid.begin() + i0, S0.grid.end());
    ys.resize(n - i0);
    for (std::size_t i = i0; i < n; ++i) ys[i - i0] = S1.values[i] - S1.right_limit;
    const double int_right = trapezoid(xs, ys) + ys.back() / a;

    std::vector<double> IS0 = cumulative_trapezoid(S0.grid, S0.values);
    for (double& v : IS0) v += S0.values.front() / a;
    std::vector<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i)
        shifted[i] = IS0[i] - std::max(S0.grid[i], 0.0);
    if (std::abs(data.a_star) > 1e-14 && std::abs(shifted.back()) > 1e-6)
        throw std::runtime_error(
            "build_outer: running profile integral does not settle; an uneven "
            "potential combined with discontinuous body force is unsupported");
    const double int_IS0 = trapezoid(S0.grid, shifted);

    const double trace_minus = sqrt_l * data.u_star * int_left;
    const double trace_plus =
        sqrt_l * data.u_star * int_right + lambda * data.a_star * int_IS0;

    // Third-order displacement: one Dirichlet problem per phase, stress
    // constant on each side (no body force at this order).
    const Poly A2l = s2l.antiderivative();
    const Poly A2r = s2r.antiderivative();
    const double Ttl = D * (trace_minus - eb * s2l.integrate(0.0, g)) / g;
    const double Ttr = -D * (trace_plus + eb * s2r.integrate(g, L)) / (L - g);

    Poly ul = Poly({0.0, Ttl / D}) + A2l * eb;
    Poly ur = Poly({trace_plus - (Ttr / D) * g - eb * A2r.eval(g), Ttr / D}) + A2r * eb;
    out.u_tilde = PiecewisePoly({0.0, g, L}, {ul, ur});
    out.T_tilde = PiecewisePoly({0.0, g, L}, {Poly::constant(Ttl), Poly::constant(Ttr)});
    if (std::abs(ur.eval(L)) > 1e-9 * std::max(1.0, std::abs(trace_plus)))
        throw std::runtime_error("build_outer: third-order end condition not met");

    // Third-order order-parameter correction, pointwise from the expansion
    // balance with the time derivative taken in the traveling frame.
    auto third_order = [&](const Poly& s1p, const Poly& s2p, double Tt, double pp,
                           double ppp, double pppp) {
        const Poly d1 = s1p.derivative();
        const Poly d2 = d1.derivative();
        Poly num = Poly::constant(eb * Tt) - s1p * s2p * ppp -
                   s1p * s1p * s1p * (pppp / 6.0) + d2 * lambda +
                   d1 * (sqrt_l / c * speed_hint);
        return num * (1.0 / pp);
    };
    out.S_tilde3 = PiecewisePoly(
        {0.0, g, L},
        {third_order(s1l, s2l, Ttl, pp0, ppp0, pppp0),
         third_order(s1r, s2r, Ttr, pp1, ppp1, pppp1)});
    return out;
}

double TailedSpline::eval(double z) const {
    if (z < z_min) {
        const double d = z - z_min;
        return left_val + left_slope * d + 0.5 * left_curv * d * d;
    }
    if (z > z_max) {
        const double d = z - z_max;
        return right_val + right_slope * d + 0.5 * right_curv * d * d;
    }
    return spline.eval(z);
}

double TailedSpline::deriv(double z) const {
    if (z < z_min) return left_slope + left_curv * (z - z_min);
    if (z > z_max) return right_slope + right_curv * (z - z_max);
    return spline.deriv(z);
}

namespace {

TailedSpline make_tailed(const std::vector<double>& grid, const std::vector<double>& vals,
                         double left_slope, double left_curv, double right_slope,
                         double right_curv) {
    TailedSpline t;
    t.spline = CubicSpline(grid, vals);
    t.z_min = grid.front();
    t.z_max = grid.back();
    t.left_val = vals.front();
    t.right_val = vals.back();
    t.left_slope = left_slope;
    t.left_curv = left_curv;
    t.right_slope = right_slope;
    t.right_curv = right_curv;
    return t;
}

}  // namespace

CompositeField::CompositeField(OuterExpansion outer, const DoubleWellPotential& psi,
                               const InterfaceData& data, const ProfileSet& profiles,
                               double mu, double lambda)
    : outer_(std::move(outer)), psi_(psi), data_(data), mu_(mu), lambda_(lambda) {
    if (!(mu > 0.0 && mu <= mu_max()))
        throw std::domain_error("composite field: mu outside (0, exp(-2)]");
    if (!(lambda > 0.0 && lambda <= kLambdaMax))
        throw std::domain_error("composite field: lambda outside (0, 1]");
    if (std::abs(lambda - outer_.lambda) > 1e-12)
        throw std::invalid_argument("composite field: lambda differs from outer expansion");

    width_ = std::sqrt(mu * lambda);
    gamma_ = outer_.bar.interface;
    const double a = profiles.S0.decay_rate;
    const double log_factor = std::abs(std::log(mu));
    r_match_ = 3.0 * width_ * log_factor / a;
    r_inner_ = 0.5 * r_match_;
    const double delta = std::min(gamma_, outer_.bar.length - gamma_);
    if (r_match_ >= delta)
        throw std::runtime_error(
            "composite field: matching zone exits the interface neighborhood "
            "(mu too large for this geometry)");
    if (r_match_ / width_ > profiles.S0.grid.back() + 1e-9)
        throw std::runtime_error("composite field: profile grid shorter than matching zone");
    cutoff_scale_ = 2.0 * a / (3.0 * width_ * log_factor);

    zeta_ = profiles.S0.grid;
    const std::size_t i0 = profiles.S0.center_index();
    const double sqrt_l = std::sqrt(lambda);

    S0_ = make_tailed(zeta_, profiles.S0.values, 0.0, 0.0, 0.0, 0.0);
    S1_ = make_tailed(zeta_, profiles.S1.values, 0.0, 0.0, 0.0, 0.0);
    S2_ = make_tailed(zeta_, profiles.S2.values,
                      sqrt_l * data.sigma_hat_prime0 / data.psi_pp_0, 0.0,
                      sqrt_l * (data.sigma_hat_prime0 + data.grad_term) / data.psi_pp_1,
                      0.0);

    std::vector<double> IS0 = cumulative_trapezoid(zeta_, profiles.S0.values);
    for (double& v : IS0) v += profiles.S0.values.front() / a;
    IS0_ = make_tailed(zeta_, IS0, profiles.S0.values.front(), 0.0,
                       profiles.S0.values.back(), 0.0);

    std::vector<double> IS1 = cumulative_trapezoid(zeta_, profiles.S1.values);
    const double IS1_center = IS1[i0];
    for (double& v : IS1) v -= IS1_center;
    IS1_ = make_tailed(zeta_, IS1, profiles.S1.values.front(), 0.0,
                       profiles.S1.values.back(), 0.0);

    std::vector<double> IIS0 = cumulative_trapezoid(zeta_, IS0);
    for (double& v : IIS0) v += IS0.front() / a;
    IIS0_ = make_tailed(zeta_, IIS0, IS0.front(), profiles.S0.values.front(),
                        IS0.back(), profiles.S0.values.back());

    // Remainders of the displacement decomposition, exact piecewise polys.
    const double g = gamma_, L = outer_.bar.length;
    const Poly qr({-data.u_star * g + 0.5 * data.a_star * g * g,
                   data.u_star - data.a_star * g, 0.5 * data.a_star});
    v_hat_ = PiecewisePoly({0.0, g, L},
                           {outer_.hat.u.pieces()[0], outer_.hat.u.pieces()[1] - qr});
    v_hat_p_ = v_hat_.derivative();

    const double r_minus = data.eps_T_minus / data.psi_pp_0;
    const double r_plus = data.eps_T_plus / data.psi_pp_1;
    v_check_ = PiecewisePoly(
        {0.0, g, L},
        {outer_.check.u.pieces()[0] - linear_in_shifted(data.u_star * r_minus, g),
         outer_.check.u.pieces()[1] - linear_in_shifted(data.u_star * r_plus, g)});
    v_check_p_ = v_check_.derivative();

    hat_up_ = outer_.hat.u.derivative();
    check_up_ = outer_.check.u.derivative();
    tilde_up_ = outer_.u_tilde.derivative();

    if (std::abs(S(gamma_) - 0.5) > 1e-9)
        throw std::runtime_error("composite field: midpoint level is not 1/2");
}

double CompositeField::phi(double x) const {
    return SmoothBump::value(cutoff_scale_ * (x - gamma_));
}

int CompositeField::region(double x) const {
    const double r = std::abs(x - gamma_);
    if (r < r_inner_) return 0;
    if (r < r_match_) return 1;
    return 2;
}

double CompositeField::S_inner_at(double zeta) const {
    const double rmu = std::sqrt(mu_);
    return S0_.eval(zeta) + rmu * S1_.eval(zeta) + mu_ * S2_.eval(zeta);
}

double CompositeField::S_outer_at(double x) const { return outer_.S_outer(x, mu_); }

double CompositeField::S(double x) const {
    const double p = phi(x);
    if (p == 0.0) return S_outer_at(x);
    const double inner = S_inner_at(zeta_of(x));
    if (p == 1.0) return inner;
    return p * inner + (1.0 - p) * S_outer_at(x);
}

double CompositeField::u_inner(double x) const {
    const double z = zeta_of(x);
    const double rmu = std::sqrt(mu_);
    return width_ * data_.u_star * IS0_.eval(z) +
           mu_ * std::sqrt(lambda_) * data_.u_star * IS1_.eval(z) +
           mu_ * lambda_ * data_.a_star * IIS0_.eval(z) + v_hat_.eval(x) +
           rmu * v_check_.eval(x);
}

double CompositeField::du_inner(double x) const {
    const double z = zeta_of(x);
    const double rmu = std::sqrt(mu_);
    return data_.u_star * S0_.eval(z) + rmu * data_.u_star * S1_.eval(z) +
           width_ * data_.a_star * IS0_.eval(z) + v_hat_p_.eval(x) +
           rmu * v_check_p_.eval(x);
}

double CompositeField::u(double x) const {
    const double p = phi(x);
    const double rmu = std::sqrt(mu_);
    const double out =
        outer_.hat.u.eval(x) + rmu * outer_.check.u.eval(x) + mu_ * outer_.u_tilde.eval(x);
    if (p == 0.0) return out;
    const double inn = u_inner(x);
    if (p == 1.0) return inn;
    return p * inn + (1.0 - p) * out;
}

double CompositeField::du(double x) const {
    const double p = phi(x);
    const double rmu = std::sqrt(mu_);
    const double dout = hat_up_.eval(x) + rmu * check_up_.eval(x) + mu_ * tilde_up_.eval(x);
    if (p == 0.0) return dout;
    const double dinn = du_inner(x);
    if (p == 1.0) return dinn;
    const double dp = SmoothBump::d1(cutoff_scale_ * (x - gamma_)) * cutoff_scale_;
    const double uout =
        outer_.hat.u.eval(x) + rmu * outer_.check.u.eval(x) + mu_ * outer_.u_tilde.eval(x);
    return p * dinn + (1.0 - p) * dout + dp * (u_inner(x) - uout);
}

double CompositeField::T(double x) const {
    return outer_.bar.modulus * (du(x) - outer_.bar.eps_bar * S(x));
}

double CompositeField::matching_gap() const {
    double gap = 0.0;
    for (double z : zeta_) {
        const double r = std::abs(z) * width_;
        if (r < r_inner_ || r > r_match_) continue;
        const double x = gamma_ + width_ * z;
        gap = std::max(gap, std::abs(S_inner_at(z) - S_outer_at(x)));
    }
    return gap;
}

CompositeField build_composite(const OuterExpansion& outer, const ProfileSet& profiles,
                               const InterfaceData& data, const DoubleWellPotential& psi,
                               double mu, double lambda) {
    return CompositeField(outer, psi, data, profiles, mu, lambda);
}

int residual_profile_points(const DoubleWellPotential& psi, double mu) {
    if (!(mu > 0.0) || mu > 1.0)
        throw std::domain_error("residual_profile_points: mu must be in (0, 1]");
    const double Z = default_half_width(psi);
    const double hz = 0.3 * std::pow(mu, 0.75);
    int n = static_cast<int>(std::ceil(2.0 * Z / hz)) + 1;
    n = std::max(n, 4001);
    n = std::min(n, 200001);
    if (n % 2 == 0) ++n;
    return n;
}

ResidualNorms residuals(const CompositeField& field, const Bar1D& bar,
                        const DoubleWellPotential& psi, double mu, double lambda,
                        double c) {
    if (std::abs(bar.interface - field.outer().bar.interface) > 1e-12 ||
        std::abs(mu - field.mu()) > 1e-15 || std::abs(lambda - field.lambda()) > 1e-15)
        throw std::invalid_argument("residuals: field/parameter mismatch");

    const double B = field.width();
    const double s = field.speed();
    const double gamma = bar.interface;
    const double L = bar.length;
    const double inv_rmu = 1.0 / std::sqrt(mu);

    auto body = [&](double x) {
        return x < gamma ? bar.body_force_left.eval(x) : bar.body_force_right.eval(x);
    };
    // Full phase-field residual at a sample, given FD slopes in x.
    auto f2_at = [&](double Sx, double Tx, double dS, double d2S) {
        return -s * dS +
               (c / B) * (-bar.eps_bar * Tx + inv_rmu * psi.eval(Sx, 1) -
                          std::sqrt(mu) * lambda * d2S);
    };

    // ---- inner + match region on the stretched node grid ----
    const std::vector<double>& zeta = field.zeta_grid();
    const double hz = zeta[1] - zeta[0];
    const double z_region = field.match_radius() / B;
    std::size_t lo = 0, hi = zeta.size() - 1;
    while (lo < zeta.size() && zeta[lo] < -z_region) ++lo;
    while (hi > 0 && zeta[hi] > z_region) --hi;
    if (lo < 2) lo = 2;
    if (hi > zeta.size() - 3) hi = zeta.size() - 3;
    if (lo + 8 > hi) throw std::runtime_error("residuals: inner grid too short");

    std::vector<double> Sv(zeta.size()), Tv(zeta.size());
    for (std::size_t i = lo - 2; i <= hi + 2; ++i) {
        const double x = gamma + B * zeta[i];
        Sv[i] = field.S(x);
        Tv[i] = field.T(x);
    }

    double f1_inner[2] = {0.0, 0.0}, f2_inner[2] = {0.0, 0.0};
    double f1_l1_inner = 0.0, f2_l1_inner = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const int stride = pass == 0 ? 2 : 1;
        const double hx = stride * hz * B;
        std::vector<double> f1s, f2s;
        for (std::size_t i = lo; i <= hi; ++i) {
            const double dS = (Sv[i + stride] - Sv[i - stride]) / (2.0 * hx);
            const double d2S =
                (Sv[i + stride] - 2.0 * Sv[i] + Sv[i - stride]) / (hx * hx);
            const double dT = (Tv[i + stride] - Tv[i - stride]) / (2.0 * hx);
            const double x = gamma + B * zeta[i];
            const double f1 = -dT - body(x);
            const double f2 = f2_at(Sv[i], Tv[i], dS, d2S);
            f1_inner[pass] = std::max(f1_inner[pass], std::abs(f1));
            f2_inner[pass] = std::max(f2_inner[pass], std::abs(f2));
            if (pass == 1) {
                f1s.push_back(std::abs(f1));
                f2s.push_back(std::abs(f2));
            }
        }
        if (pass == 1) {
            for (std::size_t k = 0; k + 1 < f1s.size(); ++k) {
                f1_l1_inner += 0.5 * (f1s[k] + f1s[k + 1]) * hz * B;
                f2_l1_inner += 0.5 * (f2s[k] + f2s[k + 1]) * hz * B;
            }
        }
    }

    // ---- outer region, one uniform grid per phase, two resolutions ----
    double f1_outer[2] = {0.0, 0.0}, f2_outer[2] = {0.0, 0.0}, f3v[2] = {0.0, 0.0};
    double f1_l1_outer = 0.0, f2_l1_outer = 0.0;
    const double r_match = field.match_radius();
    for (int pass = 0; pass < 2; ++pass) {
        const double refine = pass == 0 ? 1.0 : 2.0;
        for (int side = 0; side < 2; ++side) {
            const double x0 = side == 0 ? 0.0 : gamma + r_match;
            const double x1 = side == 0 ? gamma - r_match : L;
            const std::size_t m = std::max<std::size_t>(
                65, static_cast<std::size_t>(std::ceil(refine * (x1 - x0) /
                                                       std::min(B, (x1 - x0) / 64.0))));
            const double h = (x1 - x0) / static_cast<double>(m - 1);
            std::vector<double> Sx(m), Tx(m);
            for (std::size_t i = 0; i < m; ++i) {
                const double x = x0 + h * static_cast<double>(i);
                Sx[i] = field.S(x);
                Tx[i] = field.T(x);
            }
            std::vector<double> f1s, f2s;
            for (std::size_t i = 1; i + 1 < m; ++i) {
                const double x = x0 + h * static_cast<double>(i);
                const double dS = (Sx[i + 1] - Sx[i - 1]) / (2.0 * h);
                const double d2S = (Sx[i + 1] - 2.0 * Sx[i] + Sx[i - 1]) / (h * h);
                const double dT = (Tx[i + 1] - Tx[i - 1]) / (2.0 * h);
                const double f1 = -dT - body(x);
                const double f2 = f2_at(Sx[i], Tx[i], dS, d2S);
                f1_outer[pass] = std::max(f1_outer[pass], std::abs(f1));
                f2_outer[pass] = std::max(f2_outer[pass], std::abs(f2));
                if (pass == 1) {
                    f1s.push_back(std::abs(f1));
                    f2s.push_back(std::abs(f2));
                }
            }
            if (pass == 1) {
                for (std::size_t k = 0; k + 1 < f1s.size(); ++k) {
                    f1_l1_outer += 0.5 * (f1s[k] + f1s[k + 1]) * h;
                    f2_l1_outer += 0.5 * (f2s[k] + f2s[k + 1]) * h;
                }
            }
            // boundary normal derivative of S, one-sided second order
            const double hb = h;
            if (side == 0) {
                const double d = (-3.0 * Sx[0] + 4.0 * field.S(hb) - field.S(2.0 * hb)) /
                                 (2.0 * hb);
                f3v[pass] = std::max(f3v[pass], std::abs(d));
            } else {
                const double d = (3.0 * Sx[m - 1] - 4.0 * field.S(L - hb) +
                                  field.S(L - 2.0 * hb)) /
                                 (2.0 * hb);
                f3v[pass] = std::max(f3v[pass], std::abs(d));
            }
        }
    }

    auto certified = [](double coarse, double fine, const char* what) {
        const double big = std::max(std::abs(coarse), std::abs(fine));
        if (big > 1e-9 && std::abs(coarse - fine) > 0.2 * big) {
            std::ostringstream msg;
            msg << "residuals: under-resolved grid for " << what << " (" << coarse
                << " vs " << fine << ")";
            throw std::runtime_error(msg.str());
        }
    };
    certified(f1_inner[0], f1_inner[1], "f1 inner");
    certified(f2_inner[0], f2_inner[1], "f2 inner");
    certified(f1_outer[0], f1_outer[1], "f1 outer");
    certified(f2_outer[0], f2_outer[1], "f2 outer");
    certified(f3v[0], f3v[1], "f3");

    ResidualNorms out;
    out.f1_inner = f1_inner[1];
    out.f2_inner = f2_inner[1];
    out.f1_outer = f1_outer[1];
    out.f2_outer = f2_outer[1];
    out.f3 = f3v[1];
    out.f1_l1 = f1_l1_inner + f1_l1_outer;
    out.f2_l1 = f2_l1_inner + f2_l1_outer;
    return out;
}

}  // namespace kinlab
