#include "kinlab/profiles.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kinlab/numerics.hpp"

namespace kinlab {

double mu_max() { return std::exp(-2.0); }

double Profile::spacing() const {
    if (grid.size() < 2) throw std::logic_error("Profile: empty grid");
    return grid[1] - grid[0];
}

std::size_t Profile::center_index() const { return (grid.size() - 1) / 2; }

void Profile::validate_shape() const {
    const std::size_t n = grid.size();
    if (n < 41 || n % 2 == 0) throw std::invalid_argument("Profile: grid must be odd-sized, >= 41");
    if (values.size() != n) throw std::invalid_argument("Profile: grid/value size mismatch");
    const double h = spacing();
    if (!(h > 0.0)) throw std::invalid_argument("Profile: grid must increase");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (std::abs((grid[i + 1] - grid[i]) - h) > 1e-12 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("Profile: grid must be uniform");
    if (grid[center_index()] != 0.0)
        throw std::invalid_argument("Profile: grid must contain zero exactly");
}

double KineticCoefficients::s0(double lambda) const { return s00 + std::sqrt(lambda) * s01; }
double KineticCoefficients::s1(double lambda) const { return s10 + std::sqrt(lambda) * s11; }

double default_half_width(const DoubleWellPotential& psi) {
    return std::max(12.0 / decay_rate(psi), 30.0);
}

namespace {

// Exact first integral of the leading-order profile equation.
double profile_slope(const DoubleWellPotential& psi, double s) {
    const double v = std::clamp(s, 0.0, 1.0);
    return std::sqrt(std::max(2.0 * psi.eval(v, 0), 0.0));
}

std::vector<double> sampled_slope(const DoubleWellPotential& psi, const Profile& S0) {
    std::vector<double> sp(S0.values.size());
    for (std::size_t i = 0; i < sp.size(); ++i) sp[i] = profile_slope(psi, S0.values[i]);
    return sp;
}

void check_data_matches_potential(const DoubleWellPotential& psi, const InterfaceData& d) {
    const double p0 = psi.eval(0.0, 2), p1 = psi.eval(1.0, 2);
    if (std::abs(d.psi_pp_0 - p0) > 1e-9 * std::max(1.0, p0) ||
        std::abs(d.psi_pp_1 - p1) > 1e-9 * std::max(1.0, p1))
        throw std::invalid_argument("interface data was built for a different potential");
}

std::vector<double> rho1_values(const InterfaceData& d, const std::vector<double>& grid) {
    std::vector<double> r(grid.size());
    const double am = d.eps_T_minus / d.psi_pp_0;
    const double ap = d.eps_T_plus / d.psi_pp_1;
    for (std::size_t i = 0; i < grid.size(); ++i)
        r[i] = am * SmoothStep::value(-grid[i]) + ap * SmoothStep::value(grid[i]);
    return r;
}

std::vector<double> rho1_second_derivative(const InterfaceData& d,
                                           const std::vector<double>& grid) {
    std::vector<double> r(grid.size());
    const double am = d.eps_T_minus / d.psi_pp_0;
    const double ap = d.eps_T_plus / d.psi_pp_1;
    for (std::size_t i = 0; i < grid.size(); ++i)
        r[i] = am * SmoothStep::d2(-grid[i]) + ap * SmoothStep::d2(grid[i]);
    return r;
}

struct DirichletSystem {
    std::vector<double> diag;     // interior diagonal of psi''(S0) - d^2
    std::vector<double> off;      // constant subdiagonal
    std::vector<double> kernel;   // sampled S0' on the interior
    std::vector<double> rhs;      // interior right-hand side with BCs folded in
    double bc_left = 0.0;
    double bc_right = 0.0;
};

// Interior discretization of (psi''(S0) - d^2/dzeta^2) w = rhs_full with
// Dirichlet values taken from the asymptotic balance w(+-Z) = rhs/psi''.
DirichletSystem build_system(const DoubleWellPotential& psi, const Profile& S0,
                             const std::vector<double>& sp,
                             const std::vector<double>& rhs_full) {
    const std::size_t n = S0.grid.size();
    const double h = S0.spacing();
    const double inv_h2 = 1.0 / (h * h);

    DirichletSystem s;
    s.bc_left = rhs_full.front() / psi.eval(S0.values.front(), 2);
    s.bc_right = rhs_full.back() / psi.eval(S0.values.back(), 2);

    const std::size_t m = n - 2;
    s.diag.resize(m);
    s.off.assign(m - 1, -inv_h2);
    s.kernel.resize(m);
    s.rhs.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        s.diag[j] = psi.eval(S0.values[j + 1], 2) + 2.0 * inv_h2;
        s.kernel[j] = sp[j + 1];
        s.rhs[j] = rhs_full[j + 1];
    }
    s.rhs.front() += s.bc_left * inv_h2;
    s.rhs.back() += s.bc_right * inv_h2;
    return s;
}

// Deflated solve followed by the kernel shift that zeroes the midpoint of
// correction + carrier; returns the full-grid profile values.
std::vector<double> solve_shifted(const DirichletSystem& sys, const Profile& S0,
                                  const std::vector<double>& sp,
                                  const std::vector<double>& carrier) {
    DeflatedTridiagonalSolver solver(sys.diag, sys.off, sys.kernel);
    const std::vector<double> w = solver.solve(sys.rhs);

    const std::size_t n = S0.grid.size();
    std::vector<double> out(n);
    out.front() = sys.bc_left + carrier.front();
    out.back() = sys.bc_right + carrier.back();
    for (std::size_t j = 0; j + 2 < n; ++j) out[j + 1] = w[j] + carrier[j + 1];

    const std::size_t i0 = S0.center_index();
    if (sp[i0] <= 0.0) throw std::runtime_error("profile solve: vanishing kernel at center");
    const double beta = -out[i0] / sp[i0];
    for (std::size_t i = 0; i < n; ++i) out[i] += beta * sp[i];
    return out;
}

}  // namespace

Profile solve_S0(const DoubleWellPotential& psi, double half_width, int n_points) {
    psi.validate();
    const double a = decay_rate(psi);
    if (half_width < 12.0 / a - 1e-12)
        throw std::invalid_argument("solve_S0: half width too small for the tail decay rate");
    if (n_points < 41 || n_points % 2 == 0)
        throw std::invalid_argument("solve_S0: n_points must be odd and >= 41");

    const int n = n_points;
    const int i0 = (n - 1) / 2;
    const double h = 2.0 * half_width / (n - 1);

    Profile p;
    p.grid.resize(n);
    p.values.assign(n, 0.0);
    for (int i = 0; i < n; ++i) p.grid[i] = (i - i0) * h;
    p.values[i0] = 0.5;
    p.left_limit = 0.0;
    p.right_limit = 1.0;
    p.decay_rate = a;

    const int substeps = std::max(4, static_cast<int>(std::ceil(h / 2e-3)));
    auto sweep = [&](int dir) {
        const double hs = dir * h / substeps;
        double s = 0.5;
        for (int i = i0; i != (dir > 0 ? n - 1 : 0); i += dir) {
            for (int k = 0; k < substeps; ++k) {
                const double k1 = profile_slope(psi, s);
                const double k2 = profile_slope(psi, s + 0.5 * hs * k1);
                const double k3 = profile_slope(psi, s + 0.5 * hs * k2);
                const double k4 = profile_slope(psi, s + hs * k3);
                s += hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                if (!std::isfinite(s) || s < -0.1 || s > 1.1) {
                    std::ostringstream msg;
                    msg << "solve_S0: step failure near zeta = " << p.grid[i];
                    throw std::runtime_error(msg.str());
                }
                s = std::clamp(s, 0.0, 1.0);
            }
            p.values[i + dir] = s;
        }
    };
    sweep(+1);
    sweep(-1);

    if (std::abs(p.values.front()) > kTailTol || std::abs(p.values.back() - 1.0) > kTailTol)
        throw std::runtime_error("solve_S0: tails not settled at +-Z; increase half width");
    return p;
}

void s0_closed_form(const InterfaceData& data, const DoubleWellPotential& psi,
                    double lambda, double c, double& s00, double& s01) {
    if (!(c > 0.0)) throw std::invalid_argument("s0_closed_form: mobility must be positive");
    if (!(lambda > 0.0 && lambda <= kLambdaMax))
        throw std::domain_error("s0_closed_form: lambda outside (0, 1]");
    const double c1 = c1_constant(psi);
    s00 = -(c / c1) * data.eps_T_mean;
    s01 = c * data.kappa;
}

FirstOrderRhs assemble_first_order(const DoubleWellPotential& psi, const Profile& S0,
                                   const InterfaceData& data, double s0, double lambda,
                                   double c) {
    S0.validate_shape();
    check_data_matches_potential(psi, data);
    const std::size_t n = S0.grid.size();
    const std::vector<double> sp = sampled_slope(psi, S0);

    FirstOrderRhs r;
    r.F1.resize(n);
    r.rho1 = rho1_values(data, S0.grid);
    const double drive = s0 / c - std::sqrt(lambda) * data.kappa;
    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.F1[i] = data.eps_T_jump * S0.values[i] + data.eps_T_minus + drive * sp[i];
        integrand[i] = r.F1[i] * sp[i];
    }
    r.defect = trapezoid(S0.grid, integrand);
    return r;
}

Profile solve_S1(const DoubleWellPotential& psi, const Profile& S0,
                 const InterfaceData& data, double s0, double lambda, double c) {
    FirstOrderRhs r = assemble_first_order(psi, S0, data, s0, lambda, c);
    if (std::abs(r.defect) > kDefectTol) {
        std::ostringstream msg;
        msg << "solve_S1: orthogonality defect " << r.defect
            << " exceeds " << kDefectTol << "; s0 inconsistent with the data";
        throw std::runtime_error(msg.str());
    }

    const std::size_t n = S0.grid.size();
    const std::vector<double> sp = sampled_slope(psi, S0);
    const std::vector<double> rpp = rho1_second_derivative(data, S0.grid);
    std::vector<double> rhs_full(n);
    for (std::size_t i = 0; i < n; ++i)
        rhs_full[i] = r.F1[i] - (psi.eval(S0.values[i], 2) * r.rho1[i] - rpp[i]);

    const DirichletSystem sys = build_system(psi, S0, sp, rhs_full);

    Profile out;
    out.grid = S0.grid;
    out.values = solve_shifted(sys, S0, sp, r.rho1);
    out.left_limit = data.eps_T_minus / data.psi_pp_0;
    out.right_limit = data.eps_T_plus / data.psi_pp_1;
    out.decay_rate = S0.decay_rate;

    const double scale_l = std::max(1.0, std::abs(out.left_limit));
    const double scale_r = std::max(1.0, std::abs(out.right_limit));
    if (std::abs(out.values.front() - out.left_limit) > kTailTol * scale_l ||
        std::abs(out.values.back() - out.right_limit) > kTailTol * scale_r)
        throw std::runtime_error("solve_S1: boundary limits not attained");
    return out;
}

void s1_closed_form(const DoubleWellPotential& psi, const Profile& S0, const Profile& S1,
                    const InterfaceData& data, double c, double& s10, double& s11) {
    S0.validate_shape();
    S1.validate_shape();
    if (S0.grid.size() != S1.grid.size() ||
        std::abs(S0.spacing() - S1.spacing()) > 1e-14)
        throw std::invalid_argument("s1_closed_form: profiles must share one grid");
    check_data_matches_potential(psi, data);

    const std::size_t n = S0.grid.size();
    const double h = S0.spacing();
    const double c1 = c1_constant(psi);
    const std::vector<double> sp = sampled_slope(psi, S0);
    const std::vector<double> S1p = fd_derivative(S1.values, h);

    std::vector<double> f_a(n), f_b(n), f_c(n), f_d(n);
    for (std::size_t i = 0; i < n; ++i) {
        f_a[i] = S1.values[i] * sp[i];
        f_b[i] = S1p[i] * sp[i];
        f_c[i] = psi.eval(S0.values[i], 3) * S1.values[i] * S1.values[i] * sp[i];
        f_d[i] = S0.values[i] * S0.values[n - 1 - i];
    }
    const double I_s1 = trapezoid(S0.grid, f_a);
    const double I_s1p = trapezoid(S0.grid, f_b);
    const double I_ppp = trapezoid(S0.grid, f_c);
    const double I_mirror = trapezoid(S0.grid, f_d);

    s10 = (c / c1) * (-data.eps_check_T_mean +
                      data.eps_T_jump * (data.mean_stress_ratio() - I_s1) +
                      (1.0 / c1) * data.eps_T_mean * I_s1p + 0.5 * I_ppp);
    s11 = -(c / c1) * data.grad_term * I_mirror;
}

SecondOrderRhs assemble_second_order(const DoubleWellPotential& psi, const Profile& S0,
                                     const Profile& S1, const InterfaceData& data,
                                     double s1, double lambda, double c) {
    S0.validate_shape();
    S1.validate_shape();
    check_data_matches_potential(psi, data);
    const std::size_t n = S0.grid.size();
    const double h = S0.spacing();
    const double c1 = c1_constant(psi);
    const double sqrt_l = std::sqrt(lambda);
    const std::vector<double> sp = sampled_slope(psi, S0);
    const std::vector<double> S1p = fd_derivative(S1.values, h);

    // Running integral of S0 with the exact exponential-tail correction at -Z.
    std::vector<double> IS0 = cumulative_trapezoid(S0.grid, S0.values);
    const double tail = S0.values.front() / S0.decay_rate;
    for (double& v : IS0) v += tail;

    const double q_minus =
        data.eps_check_T_minus() -
        0.5 * psi.eval(0.0, 3) * std::pow(data.eps_T_minus / data.psi_pp_0, 2);
    const double q_plus =
        data.eps_check_T_plus() -
        0.5 * psi.eval(1.0, 3) * std::pow(data.eps_T_plus / data.psi_pp_1, 2);
    const double slope_minus = sqrt_l * data.sigma_hat_prime0;
    const double slope_plus = sqrt_l * (data.sigma_hat_prime0 + data.grad_term);

    SecondOrderRhs r;
    r.F2.resize(n);
    r.F3.resize(n);
    r.rho2.resize(n);
    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = S0.grid[i];
        const double s1v = S1.values[i];
        r.F2[i] = data.sigma_check0 + data.eps_T_jump * s1v -
                  (1.0 / c1) * data.eps_T_mean * S1p[i] -
                  0.5 * psi.eval(S0.values[i], 3) * s1v * s1v +
                  sqrt_l * (data.sigma_hat_prime0 * z + data.grad_term * IS0[i]) +
                  (s1 / c - lambda * data.kappa_prime * z) * sp[i];

        const double gm = (q_minus + slope_minus * z) / data.psi_pp_0;
        const double gp = (q_plus + slope_plus * z) / data.psi_pp_1;
        r.rho2[i] = SmoothStep::value(-z) * gm + SmoothStep::value(z) * gp;
        const double rho2_pp = SmoothStep::d2(-z) * gm -
                               2.0 * SmoothStep::d1(-z) * slope_minus / data.psi_pp_0 +
                               SmoothStep::d2(z) * gp +
                               2.0 * SmoothStep::d1(z) * slope_plus / data.psi_pp_1;
        r.F3[i] = -(psi.eval(S0.values[i], 2) * r.rho2[i] - rho2_pp);
        integrand[i] = (r.F2[i] + r.F3[i]) * sp[i];
    }
    r.defect = trapezoid(S0.grid, integrand);
    return r;
}

Profile solve_S2(const DoubleWellPotential& psi, const Profile& S0, const Profile& S1,
                 const InterfaceData& data, double s10, double s11, double lambda,
                 double c) {
    const double s1 = s10 + std::sqrt(lambda) * s11;
    SecondOrderRhs r = assemble_second_order(psi, S0, S1, data, s1, lambda, c);
    if (std::abs(r.defect) > kDefectTol) {
        std::ostringstream msg;
        msg << "solve_S2: orthogonality defect " << r.defect << " exceeds " << kDefectTol
            << "; the closed-form s1 does not solve this configuration"
            << " (or the grid is too coarse)";
        throw std::runtime_error(msg.str());
    }

    const std::size_t n = S0.grid.size();
    const std::vector<double> sp = sampled_slope(psi, S0);
    std::vector<double> rhs_full(n);
    for (std::size_t i = 0; i < n; ++i) rhs_full[i] = r.F2[i] + r.F3[i];

    const DirichletSystem sys = build_system(psi, S0, sp, rhs_full);

    Profile out;
    out.grid = S0.grid;
    out.values = solve_shifted(sys, S0, sp, r.rho2);
    out.decay_rate = S0.decay_rate;

    // At most linear tail growth: the second difference must vanish in the
    // outer 20% of the domain.
    const double h = S0.spacing();
    double vmax = 0.0;
    for (double v : out.values) vmax = std::max(vmax, std::abs(v));
    const double z_edge = 0.8 * S0.grid.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (std::abs(S0.grid[i]) < z_edge) continue;
        const double d2 =
            (out.values[i - 1] - 2.0 * out.values[i] + out.values[i + 1]) / (h * h);
        if (std::abs(d2) > 1e-2 * (1.0 + vmax))
            throw std::runtime_error("solve_S2: super-linear tail growth detected");
    }

    const double sqrt_l = std::sqrt(lambda);
    out.left_limit = out.values.front() -
                     sqrt_l * data.sigma_hat_prime0 * S0.grid.front() / data.psi_pp_0;
    out.right_limit =
        out.values.back() - sqrt_l * (data.sigma_hat_prime0 + data.grad_term) *
                                S0.grid.back() / data.psi_pp_1;
    return out;
}

double kinetic_relation(const KineticCoefficients& coeffs, double mu, double lambda) {
    if (!(mu > 0.0 && mu <= mu_max()))
        throw std::domain_error("kinetic_relation: mu outside (0, exp(-2)]");
    if (!(lambda > 0.0 && lambda <= kLambdaMax))
        throw std::domain_error("kinetic_relation: lambda outside (0, 1]");
    return coeffs.s0(lambda) + std::sqrt(mu) * coeffs.s1(lambda);
}

ProfileSet solve_profiles(const DoubleWellPotential& psi, const InterfaceData& data,
                          double lambda, double c, int n_points,
                          double half_width_override) {
    const double Z = half_width_override > 0.0 ? half_width_override
                                               : default_half_width(psi);
    ProfileSet set;
    set.a = decay_rate(psi);
    set.c1 = c1_constant(psi);
    set.S0 = solve_S0(psi, Z, n_points);

    s0_closed_form(data, psi, lambda, c, set.coeffs.s00, set.coeffs.s01);
    const double s0 = set.coeffs.s0(lambda);

    FirstOrderRhs r1 = assemble_first_order(psi, set.S0, data, s0, lambda, c);
    set.defect_F1 = r1.defect;
    set.rho1 = std::move(r1.rho1);
    set.S1 = solve_S1(psi, set.S0, data, s0, lambda, c);

    s1_closed_form(psi, set.S0, set.S1, data, c, set.coeffs.s10, set.coeffs.s11);
    const double s1 = set.coeffs.s1(lambda);

    SecondOrderRhs r2 = assemble_second_order(psi, set.S0, set.S1, data, s1, lambda, c);
    set.defect_F2F3 = r2.defect;
    set.rho2 = std::move(r2.rho2);
    set.S2 = solve_S2(psi, set.S0, set.S1, data, set.coeffs.s10, set.coeffs.s11, lambda, c);
    return set;
}

KineticCoefficients compute_kinetic_coefficients(const DoubleWellPotential& psi,
                                                 const InterfaceData& data, double lambda,
                                                 double c, int n_points) {
    const double Z = default_half_width(psi);
    const Profile S0 = solve_S0(psi, Z, n_points);
    KineticCoefficients k;
    s0_closed_form(data, psi, lambda, c, k.s00, k.s01);
    const Profile S1 = solve_S1(psi, S0, data, k.s0(lambda), lambda, c);
    s1_closed_form(psi, S0, S1, data, c, k.s10, k.s11);
    return k;
}

namespace {

// One bordered solve: unknowns are the interior correction w and the speed
// coefficient q multiplying S0'/c; the extra row pins w at the midpoint so
// the assembled profile vanishes at zeta = 0.
struct BorderedResult {
    std::vector<double> profile;  // full grid, carrier added back
    double speed = 0.0;
};

BorderedResult bordered_solve(const DoubleWellPotential& psi, const Profile& S0,
                              const std::vector<double>& sp,
                              const std::vector<double>& rhs_full,
                              const std::vector<double>& carrier, double c) {
    const DirichletSystem sys = build_system(psi, S0, sp, rhs_full);
    const std::size_t m = sys.diag.size();
    const std::size_t center = S0.center_index() - 1;  // interior numbering

    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> trips;
    trips.reserve(4 * m + 4);
    for (std::size_t j = 0; j < m; ++j) {
        trips.emplace_back(j, j, sys.diag[j]);
        if (j + 1 < m) {
            trips.emplace_back(j, j + 1, sys.off[j]);
            trips.emplace_back(j + 1, j, sys.off[j]);
        }
        trips.emplace_back(j, m, -sys.kernel[j] / c);
    }
    trips.emplace_back(m, center, 1.0);

    Eigen::SparseMatrix<double> A(m + 1, m + 1);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();

    Eigen::VectorXd b(m + 1);
    for (std::size_t j = 0; j < m; ++j) b[j] = sys.rhs[j];
    b[m] = -carrier[S0.center_index()];  // assembled profile vanishes at zeta = 0

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("bordered solve: factorization failed");
    const Eigen::VectorXd x = lu.solve(b);

    BorderedResult res;
    res.speed = x[m];
    const std::size_t n = S0.grid.size();
    res.profile.resize(n);
    res.profile.front() = sys.bc_left + carrier.front();
    res.profile.back() = sys.bc_right + carrier.back();
    for (std::size_t j = 0; j < m; ++j) res.profile[j + 1] = x[j] + carrier[j + 1];
    return res;
}

// Both speed coefficients from bordered solves at one resolution.
void bordered_speeds(const DoubleWellPotential& psi, const InterfaceData& data,
                     double lambda, double c, int n_points, double& s0_out,
                     double& s1_out) {
    const double Z = default_half_width(psi);
    const Profile S0 = solve_S0(psi, Z, n_points);
    const std::vector<double> sp = sampled_slope(psi, S0);
    const std::size_t n = S0.grid.size();

    FirstOrderRhs r1 = assemble_first_order(psi, S0, data, /*s0=*/0.0, lambda, c);
    const std::vector<double> rpp = rho1_second_derivative(data, S0.grid);
    std::vector<double> rhs1(n);
    for (std::size_t i = 0; i < n; ++i)
        rhs1[i] = r1.F1[i] - (psi.eval(S0.values[i], 2) * r1.rho1[i] - rpp[i]);
    const BorderedResult b1 = bordered_solve(psi, S0, sp, rhs1, r1.rho1, c);
    s0_out = b1.speed;

    Profile S1 = S0;
    S1.values = b1.profile;
    S1.left_limit = data.eps_T_minus / data.psi_pp_0;
    S1.right_limit = data.eps_T_plus / data.psi_pp_1;

    SecondOrderRhs r2 = assemble_second_order(psi, S0, S1, data, /*s1=*/0.0, lambda, c);
    std::vector<double> rhs2(n);
    for (std::size_t i = 0; i < n; ++i) rhs2[i] = r2.F2[i] + r2.F3[i];
    const BorderedResult b2 = bordered_solve(psi, S0, sp, rhs2, r2.rho2, c);
    s1_out = b2.speed;
}

}  // namespace

SolvabilitySpeeds solvability_speeds(const DoubleWellPotential& psi,
                                     const InterfaceData& data, double lambda, double c,
                                     int n_points) {
    double s0_h = 0.0, s1_h = 0.0, s0_h2 = 0.0, s1_h2 = 0.0;
    bordered_speeds(psi, data, lambda, c, n_points, s0_h, s1_h);
    bordered_speeds(psi, data, lambda, c, 2 * n_points - 1, s0_h2, s1_h2);

    SolvabilitySpeeds out;
    out.s0 = (4.0 * s0_h2 - s0_h) / 3.0;
    out.s1 = (4.0 * s1_h2 - s1_h) / 3.0;
    return out;
}

double kappa_prime_sphere(double kappa, int dim) {
    if (dim < 2) throw std::invalid_argument("kappa_prime_sphere: dimension must be >= 2");
    return -kappa * kappa / (dim - 1);
}

}  // namespace kinlab
