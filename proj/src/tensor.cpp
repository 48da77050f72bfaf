#include "kinlab/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace kinlab {

namespace {
const double kSqrt2 = std::sqrt(2.0);

// Orthonormal 6-vector coordinates of a symmetric tensor: off-diagonal
// components carry sqrt(2) so that the Euclidean dot product of coordinate
// vectors equals the tensor double contraction.
Eigen::Matrix<double, 6, 1> mandel(const SymTensor3& t) {
    Eigen::Matrix<double, 6, 1> m;
    m << t.v[0], t.v[1], t.v[2], kSqrt2 * t.v[3], kSqrt2 * t.v[4], kSqrt2 * t.v[5];
    return m;
}

SymTensor3 from_mandel(const Eigen::Matrix<double, 6, 1>& m) {
    SymTensor3 t;
    t.v = {m[0], m[1], m[2], m[3] / kSqrt2, m[4] / kSqrt2, m[5] / kSqrt2};
    return t;
}
}  // namespace

SymTensor3 SymTensor3::identity() {
    SymTensor3 t;
    t.v = {1.0, 1.0, 1.0, 0.0, 0.0, 0.0};
    return t;
}

SymTensor3 SymTensor3::from_matrix(const Eigen::Matrix3d& m) {
    SymTensor3 t;
    t.v = {m(0, 0), m(1, 1), m(2, 2), 0.5 * (m(1, 2) + m(2, 1)),
           0.5 * (m(0, 2) + m(2, 0)), 0.5 * (m(0, 1) + m(1, 0))};
    return t;
}

SymTensor3 SymTensor3::sym_outer(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    return from_matrix(0.5 * (a * b.transpose() + b * a.transpose()));
}

Eigen::Matrix3d SymTensor3::matrix() const {
    Eigen::Matrix3d m;
    m << v[0], v[5], v[4],
         v[5], v[1], v[3],
         v[4], v[3], v[2];
    return m;
}

Eigen::Vector3d SymTensor3::apply(const Eigen::Vector3d& n) const {
    return matrix() * n;
}

double SymTensor3::ddot(const SymTensor3& o) const {
    return v[0] * o.v[0] + v[1] * o.v[1] + v[2] * o.v[2] +
           2.0 * (v[3] * o.v[3] + v[4] * o.v[4] + v[5] * o.v[5]);
}

SymTensor3 SymTensor3::operator+(const SymTensor3& o) const {
    SymTensor3 t;
    for (int i = 0; i < 6; ++i) t.v[i] = v[i] + o.v[i];
    return t;
}

SymTensor3 SymTensor3::operator-(const SymTensor3& o) const {
    SymTensor3 t;
    for (int i = 0; i < 6; ++i) t.v[i] = v[i] - o.v[i];
    return t;
}

SymTensor3 SymTensor3::operator*(double s) const {
    SymTensor3 t;
    for (int i = 0; i < 6; ++i) t.v[i] = v[i] * s;
    return t;
}

ElasticityTensor::ElasticityTensor(Eigen::Matrix<double, 6, 6> mandel_matrix)
    : m_(std::move(mandel_matrix)) {
    double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if (asym > 1e-10 * scale)
        throw std::invalid_argument("elasticity tensor: not symmetric as a bilinear form");
    m_ = 0.5 * (m_ + m_.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(m_);
    min_eig_ = es.eigenvalues().minCoeff();
    if (min_eig_ <= 1e-10 * scale)
        throw std::invalid_argument("elasticity tensor: not positive definite");
}

ElasticityTensor ElasticityTensor::isotropic(double lame_lambda, double lame_mu) {
    Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
    for (int i = 0; i < 6; ++i) m(i, i) = 2.0 * lame_mu;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) += lame_lambda;
    return ElasticityTensor(m);
}

ElasticityTensor ElasticityTensor::from_raw(const std::array<std::array<double, 6>, 6>& C) {
    // Raw array couples stress components to engineering strains; rescaling
    // both sides by diag(1,1,1,sqrt2,sqrt2,sqrt2) yields the orthonormal form.
    Eigen::Matrix<double, 6, 6> voigt;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) voigt(i, j) = C[i][j];
    // With stress_m = S stress_v and strain_eng = S strain_m for
    // S = diag(1,1,1,sqrt2,sqrt2,sqrt2), the orthonormal form is S C S.
    Eigen::Matrix<double, 6, 1> s;
    s << 1.0, 1.0, 1.0, kSqrt2, kSqrt2, kSqrt2;
    Eigen::Matrix<double, 6, 6> m = s.asDiagonal() * voigt * s.asDiagonal();
    return ElasticityTensor(m);
}

SymTensor3 ElasticityTensor::apply(const SymTensor3& eps) const {
    return from_mandel(m_ * mandel(eps));
}

double ElasticityTensor::pair(const SymTensor3& a, const SymTensor3& b) const {
    return mandel(a).dot(m_ * mandel(b));
}

SymTensor3 project_normal(const ElasticityTensor& D, const Eigen::Vector3d& n,
                          const SymTensor3& eps) {
    if (std::abs(n.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("project_normal: normal must be a unit vector");
    Eigen::Matrix3d B;
    for (int j = 0; j < 3; ++j) {
        Eigen::Vector3d ej = Eigen::Vector3d::Zero();
        ej[j] = 1.0;
        B.col(j) = D.apply(SymTensor3::sym_outer(ej, n)).apply(n);
    }
    Eigen::Vector3d rhs = D.apply(eps).apply(n);
    Eigen::FullPivLU<Eigen::Matrix3d> lu(B);
    if (!lu.isInvertible())
        throw std::runtime_error("project_normal: singular normal operator");
    Eigen::Vector3d w = lu.solve(rhs);
    return SymTensor3::sym_outer(w, n);
}

JumpData3D jump_data(const ElasticityTensor& D, const Eigen::Vector3d& n,
                     const SymTensor3& eps_bar) {
    JumpData3D out;
    out.strain_jump = project_normal(D, n, eps_bar);
    // Recover the dyad direction: w = 2 strain_jump n - (n . strain_jump n) n.
    Eigen::Vector3d Pn = out.strain_jump.apply(n);
    out.u_star = 2.0 * Pn - n.dot(Pn) * n;
    out.stress_jump = D.apply(out.strain_jump - eps_bar);
    return out;
}

double eshelby_normal_jump(const SymTensor3& T_plus, const SymTensor3& T_minus,
                           const SymTensor3& eps_bar, double psi_jump_over_sqrt_mu) {
    SymTensor3 mean = (T_plus + T_minus) * 0.5;
    return psi_jump_over_sqrt_mu - eps_bar.ddot(mean);
}

}  // namespace kinlab
