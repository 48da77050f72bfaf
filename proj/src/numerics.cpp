#include "kinlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kinlab {

void Poly::trim() {
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Poly::eval(double x) const {
    double r = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly({0.0});
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
    return Poly(std::move(a));
}

double Poly::integrate(double x0, double x1) const {
    Poly F = antiderivative();
    return F.eval(x1) - F.eval(x0);
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly({0.0});
    std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator*(double s) const {
    std::vector<double> r = c_;
    for (double& v : r) v *= s;
    return Poly(std::move(r));
}

PiecewisePoly::PiecewisePoly(std::vector<double> breaks, std::vector<Poly> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    if (breaks_.size() != pieces_.size() + 1)
        throw std::invalid_argument("piecewise polynomial: breaks/pieces size mismatch");
    if (!std::is_sorted(breaks_.begin(), breaks_.end()))
        throw std::invalid_argument("piecewise polynomial: breakpoints not sorted");
}

std::size_t PiecewisePoly::piece_index(double x) const {
    // Right-continuous convention: breakpoint belongs to the piece on its right.
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin());
    if (i == 0) return 0;
    if (i >= breaks_.size()) return pieces_.size() - 1;
    return i - 1;
}

double PiecewisePoly::eval(double x) const { return pieces_[piece_index(x)].eval(x); }

double PiecewisePoly::eval_left(double x) const {
    std::size_t i = piece_index(x);
    if (i > 0 && x == breaks_[i]) --i;
    return pieces_[i].eval(x);
}

double PiecewisePoly::eval_right(double x) const { return eval(x); }

PiecewisePoly PiecewisePoly::derivative() const {
    std::vector<Poly> d;
    d.reserve(pieces_.size());
    for (const Poly& p : pieces_) d.push_back(p.derivative());
    return PiecewisePoly(breaks_, std::move(d));
}

double PiecewisePoly::integrate(double x0, double x1) const {
    if (x1 < x0) return -integrate(x1, x0);
    double total = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        double lo = std::max(x0, breaks_[i]);
        double hi = std::min(x1, breaks_[i + 1]);
        if (hi > lo) total += pieces_[i].integrate(lo, hi);
    }
    // Extend with the boundary pieces if the query range leaves the table.
    if (x0 < breaks_.front()) total += pieces_.front().integrate(x0, std::min(x1, breaks_.front()));
    if (x1 > breaks_.back()) total += pieces_.back().integrate(std::max(x0, breaks_.back()), x1);
    return total;
}

PiecewisePoly PiecewisePoly::antiderivative() const {
    std::vector<Poly> anti;
    anti.reserve(pieces_.size());
    double offset = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        Poly F = pieces_[i].antiderivative();
        double shift = offset - F.eval(breaks_[i]);
        anti.push_back(F + Poly::constant(shift));
        offset = anti.back().eval(breaks_[i + 1]);
    }
    return PiecewisePoly(breaks_, std::move(anti));
}

std::vector<double> thomas_solve(const std::vector<double>& lower,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& upper,
                                 std::vector<double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0) return {};
    if (lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n)
        throw std::invalid_argument("thomas_solve: inconsistent sizes");
    std::vector<double> cp(n - 1);
    double denom = diag[0];
    if (denom == 0.0) throw std::runtime_error("thomas_solve: zero pivot");
    if (n > 1) cp[0] = upper[0] / denom;
    rhs[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag[i] - lower[i - 1] * cp[i - 1];
        if (denom == 0.0) throw std::runtime_error("thomas_solve: zero pivot");
        if (i < n - 1) cp[i] = upper[i] / denom;
        rhs[i] = (rhs[i] - lower[i - 1] * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cp[i] * rhs[i + 1];
    return rhs;
}

DeflatedTridiagonalSolver::DeflatedTridiagonalSolver(std::vector<double> diag,
                                                     std::vector<double> off,
                                                     std::vector<double> kernel)
    : diag_(std::move(diag)), off_(std::move(off)), kernel_(std::move(kernel)) {
    if (off_.size() + 1 != diag_.size() || kernel_.size() != diag_.size())
        throw std::invalid_argument("deflated solver: inconsistent sizes");
    double norm = std::sqrt(std::inner_product(kernel_.begin(), kernel_.end(),
                                               kernel_.begin(), 0.0));
    if (norm == 0.0) throw std::invalid_argument("deflated solver: zero kernel vector");
    for (double& v : kernel_) v /= norm;
}

std::vector<double> DeflatedTridiagonalSolver::apply(const std::vector<double>& x) const {
    const std::size_t n = diag_.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = diag_[i] * x[i];
        if (i > 0) v += off_[i - 1] * x[i - 1];
        if (i + 1 < n) v += off_[i] * x[i + 1];
        y[i] = v;
    }
    return y;
}

void DeflatedTridiagonalSolver::project(std::vector<double>& x) const {
    double dot = std::inner_product(x.begin(), x.end(), kernel_.begin(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dot * kernel_[i];
}

std::vector<double> DeflatedTridiagonalSolver::solve(const std::vector<double>& rhs,
                                                     double rel_tol, int max_iter) const {
    const std::size_t n = diag_.size();
    if (rhs.size() != n) throw std::invalid_argument("deflated solver: rhs size mismatch");

    // Preconditioner M + I, factorized once.
    std::vector<double> pd(n), plo(off_), pup(off_);
    for (std::size_t i = 0; i < n; ++i) pd[i] = diag_[i] + 1.0;

    std::vector<double> b = rhs;
    project(b);
    double bnorm = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
    std::vector<double> x(n, 0.0);
    if (bnorm == 0.0) { last_iters_ = 0; return x; }

    std::vector<double> r = b;
    std::vector<double> z = thomas_solve(plo, pd, pup, r);
    project(z);
    std::vector<double> p = z;
    double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);

    int it = 0;
    for (; it < max_iter; ++it) {
        std::vector<double> Ap = apply(p);
        project(Ap);
        double pAp = std::inner_product(p.begin(), p.end(), Ap.begin(), 0.0);
        if (pAp <= 0.0) break;  // deflated operator exhausted
        double alpha = rz / pAp;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        double rnorm = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
        if (rnorm <= rel_tol * bnorm) { ++it; break; }
        z = thomas_solve(plo, pd, pup, r);
        project(z);
        double rz_new = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
        double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    last_iters_ = it;
    project(x);
    return x;
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n) throw std::invalid_argument("spline: need >= 3 nodes");
    // Natural spline: solve for second derivatives.
    std::vector<double> lower(n - 1, 0.0), diag(n, 1.0), upper(n - 1, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
        lower[i - 1] = hl / 6.0;
        diag[i] = (hl + hr) / 3.0;
        upper[i] = hr / 6.0;
        rhs[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
    }
    m_ = thomas_solve(lower, diag, upper, std::move(rhs));
}

std::size_t CubicSpline::interval(double x) const {
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double CubicSpline::eval(double x) const {
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return A * y_[i] + B * y_[i + 1] +
           ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::deriv(double x) const {
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * B * B - 1.0) * m_[i + 1] - (3.0 * A * A - 1.0) * m_[i]) * h / 6.0;
}

namespace {
double simpson_panel(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double m, double fm, double whole,
                            double tol, int depth, double& worst_tol) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_panel(a, fa, m, fm, flm);
    double right = simpson_panel(m, fm, b, fb, frm);
    double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    if (depth <= 0) {
        worst_tol = std::max(worst_tol, std::abs(err) / 15.0);
        return left + right + err / 15.0;
    }
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1, worst_tol) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1, worst_tol);
}
}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    double whole = simpson_panel(a, fa, b, fb, fm);
    double worst = 0.0;
    double result =
        adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth, worst);
    if (worst > 0.0)
        throw std::runtime_error("adaptive quadrature did not converge; achieved tolerance " +
                                 std::to_string(worst));
    return result;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("trapezoid: bad sizes");
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& x,
                                         const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("cumulative_trapezoid: bad sizes");
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::runtime_error("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.n = static_cast<int>(x.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

namespace {
// g(x) = exp(-1/x) for x > 0, extended by 0; with first two derivatives.
inline double bump_g(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
inline double bump_g1(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }
inline double bump_g2(double x) {
    if (x <= 0.0) return 0.0;
    double g = std::exp(-1.0 / x);
    return g * (1.0 - 2.0 * x) / (x * x * x * x);
}
constexpr double kStepEdge = 1e-3;  // clamp distance from the transition ends
}  // namespace

double SmoothStep::value(double t) {
    if (t <= 1.0 + kStepEdge) return 0.0;
    if (t >= 2.0 - kStepEdge) return 1.0;
    double A = bump_g(t - 1.0), B = bump_g(2.0 - t);
    return A / (A + B);
}

double SmoothStep::d1(double t) {
    if (t <= 1.0 + kStepEdge || t >= 2.0 - kStepEdge) return 0.0;
    double A = bump_g(t - 1.0), B = bump_g(2.0 - t);
    double A1 = bump_g1(t - 1.0), B1 = -bump_g1(2.0 - t);
    double s = A + B;
    return (A1 * B - A * B1) / (s * s);
}

double SmoothStep::d2(double t) {
    if (t <= 1.0 + kStepEdge || t >= 2.0 - kStepEdge) return 0.0;
    double A = bump_g(t - 1.0), B = bump_g(2.0 - t);
    double A1 = bump_g1(t - 1.0), B1 = -bump_g1(2.0 - t);
    double A2 = bump_g2(t - 1.0), B2 = bump_g2(2.0 - t);
    double s = A + B;
    double N = A1 * B - A * B1;
    double N1 = A2 * B - A * B2;
    return N1 / (s * s) - 2.0 * N * (A1 + B1) / (s * s * s);
}

double SmoothBump::value(double r) { return 1.0 - SmoothStep::value(std::abs(r)); }

double SmoothBump::d1(double r) {
    double s = r < 0.0 ? -1.0 : 1.0;
    return -s * SmoothStep::d1(std::abs(r));
}

double SmoothBump::d2(double r) { return -SmoothStep::d2(std::abs(r)); }

std::vector<double> fd_derivative(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    if (n < 3) throw std::invalid_argument("fd_derivative: need >= 3 samples");
    std::vector<double> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
    return d;
}

}  // namespace kinlab
