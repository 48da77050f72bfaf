#ifndef KINLAB_TENSOR_HPP
#define KINLAB_TENSOR_HPP

#include <Eigen/Dense>
#include <array>

namespace kinlab {

// Symmetric 3x3 tensor stored as six plain components in the order
// (xx, yy, zz, yz, xz, xy). No weight factors are folded into the storage:
// component k of an off-diagonal pair holds the matrix entry itself, and the
// double contraction ddot() supplies the factor 2 on the off-diagonal terms.
struct SymTensor3 {
    std::array<double, 6> v{0, 0, 0, 0, 0, 0};

    static SymTensor3 identity();
    static SymTensor3 from_matrix(const Eigen::Matrix3d& m);  // symmetrizes
    // Symmetrized dyad: 0.5 * (a b^T + b a^T).
    static SymTensor3 sym_outer(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

    Eigen::Matrix3d matrix() const;
    Eigen::Vector3d apply(const Eigen::Vector3d& n) const;  // matrix-vector
    double ddot(const SymTensor3& o) const;                 // full contraction
    double trace() const { return v[0] + v[1] + v[2]; }

    SymTensor3 operator+(const SymTensor3& o) const;
    SymTensor3 operator-(const SymTensor3& o) const;
    SymTensor3 operator*(double s) const;
};

// Linear, symmetric, positive-definite map on symmetric 3x3 tensors.
// Internally stored in an orthonormal (Mandel) 6-vector basis so that
// symmetry and positive definiteness are properties of a plain symmetric
// 6x6 matrix; construction validates both.
class ElasticityTensor {
public:
    // Isotropic medium from the two Lame parameters.
    static ElasticityTensor isotropic(double lame_lambda, double lame_mu);
    // General medium from a raw 6x6 stiffness array in conventional
    // (stress-vs-engineering-strain) component order; validated to be
    // symmetric and positive definite via an eigenvalue check.
    static ElasticityTensor from_raw(const std::array<std::array<double, 6>, 6>& C);

    SymTensor3 apply(const SymTensor3& eps) const;
    // Energy pairing a : D b.
    double pair(const SymTensor3& a, const SymTensor3& b) const;
    double min_eigenvalue() const { return min_eig_; }

private:
    explicit ElasticityTensor(Eigen::Matrix<double, 6, 6> mandel);
    Eigen::Matrix<double, 6, 6> m_;
    double min_eig_ = 0.0;
};

// Jump data across a planar interface with unit normal n for a transformation
// strain eps_bar: the displacement-gradient jump direction u_star, the strain
// jump (the D-orthogonal projection of eps_bar onto symmetrized dyads with n),
// and the traction-free stress jump.
struct JumpData3D {
    Eigen::Vector3d u_star;
    SymTensor3 strain_jump;
    SymTensor3 stress_jump;
};

// D-orthogonal projection of eps onto { sym_outer(w, n) : w in R^3 }:
// solves the 3x3 system B w = (D eps) n with B w := (D sym_outer(w, n)) n.
SymTensor3 project_normal(const ElasticityTensor& D, const Eigen::Vector3d& n,
                          const SymTensor3& eps);

// Full jump package: u_star solves (D(sym_outer(u_star,n) - eps_bar)) n = 0,
// strain_jump = P_n eps_bar, stress_jump = -D (I - P_n) eps_bar.
JumpData3D jump_data(const ElasticityTensor& D, const Eigen::Vector3d& n,
                     const SymTensor3& eps_bar);

// Normal-normal jump of the configurational stress across the interface:
// psi_jump_over_sqrt_mu - eps_bar : mean(T_plus, T_minus). With equal well
// values the first term is zero and the driving force is -eps_bar : <T>.
double eshelby_normal_jump(const SymTensor3& T_plus, const SymTensor3& T_minus,
                           const SymTensor3& eps_bar, double psi_jump_over_sqrt_mu);

}  // namespace kinlab

#endif  // KINLAB_TENSOR_HPP
