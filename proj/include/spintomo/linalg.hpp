#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace spintomo {

using cx = std::complex<double>;

using Mat2 = Eigen::Matrix<cx, 2, 2>;
using Mat4 = Eigen::Matrix<cx, 4, 4>;
using Mat8 = Eigen::Matrix<cx, 8, 8>;
using MatX = Eigen::MatrixXcd;
using Vec4 = Eigen::Matrix<cx, 4, 1>;
using Vec8 = Eigen::Matrix<cx, 8, 1>;
using VecX = Eigen::VectorXcd;

using RMat16 = Eigen::Matrix<double, 16, 16>;
using RVec16 = Eigen::Matrix<double, 16, 1>;
using RMatX = Eigen::MatrixXd;
using RVecX = Eigen::VectorXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Kronecker product, result is (ra*rb) x (ca*cb).
template <typename DerivedA, typename DerivedB>
MatX kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    MatX out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

template <typename Derived>
MatX dagger(const Eigen::MatrixBase<Derived>& m) {
    return m.adjoint();
}

inline double hermiticity_defect(const MatX& m) {
    double scale = m.template lpNorm<Eigen::Infinity>();
    if (scale == 0.0) return 0.0;
    return (m - m.adjoint()).template lpNorm<Eigen::Infinity>() / scale;
}

inline double unitarity_defect(const MatX& u) {
    MatX d = u.adjoint() * u - MatX::Identity(u.rows(), u.cols());
    return d.template lpNorm<Eigen::Infinity>();
}

// exp(-i * 2*pi * h * t) for Hermitian h (frequencies in MHz, t in us).
MatX evolution_operator(const MatX& h_mhz, double t_us);

// Matrix exponential / principal logarithm for small dense matrices.
MatX expm(const MatX& a);
RMatX expm_real(const RMatX& a);

// Principal logarithm of a real matrix with positive-real-axis spectrum.
// Throws std::domain_error if an eigenvalue sits on the closed negative real axis.
RMatX logm_real(const RMatX& a);

// Entanglement-style process fidelity |tr(U^dag V)|^2 / d^2 between unitaries.
double process_fidelity(const MatX& u, const MatX& v);

// <psi|rho|psi> for a pure target.
double state_fidelity(const VecX& psi, const MatX& rho);

// Trace out the electron (last tensor factor) of an 8x8 density operator,
// basis index = 4*q1 + 2*q2 + e.
Mat4 trace_out_electron(const Mat8& rho);

// Trace out one nuclear qubit of a 4x4 (index = 2*q1 + q2).
Mat2 trace_out_qubit(const Mat4& rho, int keep);

// Column-major vectorization helpers for superoperators acting on vec(rho).
VecX vectorize(const MatX& m);
MatX devectorize(const VecX& v, Eigen::Index rows);

// Superoperator of rho -> a * rho * b in the vec convention above: (b^T (x) a).
MatX sandwich_superop(const MatX& a, const MatX& b);

} // namespace spintomo
