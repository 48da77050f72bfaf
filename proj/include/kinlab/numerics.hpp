#ifndef KINLAB_NUMERICS_HPP
#define KINLAB_NUMERICS_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kinlab {

// Dense polynomial with ascending coefficients: p(x) = c[0] + c[1] x + ...
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(double v) { return Poly({v}); }

    double eval(double x) const;
    Poly derivative() const;
    // Antiderivative with value 0 at x = 0.
    Poly antiderivative() const;
    double integrate(double x0, double x1) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(double s) const;

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }

private:
    void trim();
    std::vector<double> c_;
};

// Piecewise polynomial on contiguous intervals [breaks[i], breaks[i+1]].
// Evaluation at an interior breakpoint uses the right piece; the one-sided
// accessors expose traces for interface bookkeeping.
class PiecewisePoly {
public:
    PiecewisePoly() = default;
    PiecewisePoly(std::vector<double> breaks, std::vector<Poly> pieces);

    double eval(double x) const;
    double eval_left(double x) const;   // limit from below at a breakpoint
    double eval_right(double x) const;  // limit from above at a breakpoint
    PiecewisePoly derivative() const;
    double integrate(double x0, double x1) const;
    // Antiderivative F with F(breaks.front()) = 0, continuous across pieces.
    PiecewisePoly antiderivative() const;

    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<Poly>& pieces() const { return pieces_; }

private:
    std::size_t piece_index(double x) const;
    std::vector<double> breaks_;
    std::vector<Poly> pieces_;
};

// Tridiagonal solve (Thomas algorithm). lower/upper have size n-1.
std::vector<double> thomas_solve(const std::vector<double>& lower,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& upper,
                                 std::vector<double> rhs);

// Symmetric tridiagonal operator with a known near-null direction. Solves
// M x = b restricted to the orthogonal complement of the null direction by
// preconditioned conjugate gradients, projecting the residual and the
// preconditioned direction off the kernel each iteration. The preconditioner
// is a Thomas factorization of M + I.
class DeflatedTridiagonalSolver {
public:
    // diag/off define M (off has size n-1); kernel is the near-null vector.
    DeflatedTridiagonalSolver(std::vector<double> diag, std::vector<double> off,
                              std::vector<double> kernel);

    // Solves on the deflated subspace; returns x with x·kernel = 0.
    std::vector<double> solve(const std::vector<double>& rhs, double rel_tol = 1e-13,
                              int max_iter = 400) const;
    int last_iterations() const { return last_iters_; }

private:
    std::vector<double> apply(const std::vector<double>& x) const;
    void project(std::vector<double>& x) const;

    std::vector<double> diag_, off_, kernel_;
    mutable int last_iters_ = 0;
};

// Natural cubic spline interpolant on a strictly increasing grid.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double eval(double x) const;
    double deriv(double x) const;
    bool valid() const { return !x_.empty(); }

private:
    std::size_t interval(double x) const;
    std::vector<double> x_, y_, m_;  // m_: second derivatives at nodes
};

// Adaptive Simpson quadrature with absolute tolerance. Throws on
// non-convergence, reporting the achieved tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 40);

// Trapezoid rule over equally indexed samples (grid may be non-uniform).
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);
// Cumulative trapezoid: out[i] = integral from x[0] to x[i].
std::vector<double> cumulative_trapezoid(const std::vector<double>& x,
                                         const std::vector<double>& y);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root-mean-square residual
    int n = 0;
};
// Least-squares line through (x, y); requires >= 2 points.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// C-infinity monotone transition: 0 for t <= 1, 1 for t >= 2, built from
// exp(-1/x) ratios. Value and first two derivatives are analytic.
struct SmoothStep {
    static double value(double t);
    static double d1(double t);
    static double d2(double t);
};

// C-infinity bump: 1 for |r| <= 1, 0 for |r| >= 2 (value 1 - step(|r|)).
struct SmoothBump {
    static double value(double r);
    static double d1(double r);
    static double d2(double r);
};

// Second-order finite differences of sampled values on a uniform grid
// (central in the interior, one-sided at the ends).
std::vector<double> fd_derivative(const std::vector<double>& y, double h);

}  // namespace kinlab

#endif  // KINLAB_NUMERICS_HPP
