#include "spintomo/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace spintomo {

MatX evolution_operator(const MatX& h_mhz, double t_us) {
    Eigen::SelfAdjointEigenSolver<MatX> es(h_mhz);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    VecX phases(vals.size());
    for (Eigen::Index k = 0; k < vals.size(); ++k)
        phases(k) = std::exp(cx(0.0, -kTwoPi * vals(k) * t_us));
    return vecs * phases.asDiagonal() * vecs.adjoint();
}

MatX expm(const MatX& a) {
    return a.exp();
}

RMatX expm_real(const RMatX& a) {
    return a.exp();
}

RMatX logm_real(const RMatX& a) {
    Eigen::ComplexEigenSolver<MatX> es(a.cast<cx>());
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        cx lam = es.eigenvalues()(k);
        if (lam.real() <= 0.0 && std::abs(lam.imag()) < 1e-14)
            throw std::domain_error(
                "logm_real: eigenvalue on the negative real axis, principal branch undefined "
                "(eigenvalue " + std::to_string(lam.real()) + ")");
    }
    MatX l = a.cast<cx>().log();
    double imag_norm = l.imag().lpNorm<Eigen::Infinity>();
    if (imag_norm > 1e-8 * std::max(1.0, l.real().lpNorm<Eigen::Infinity>()))
        throw std::domain_error("logm_real: logarithm is not real; branch ambiguity");
    return l.real();
}

double process_fidelity(const MatX& u, const MatX& v) {
    cx tr = (u.adjoint() * v).trace();
    double d = static_cast<double>(u.rows());
    return std::norm(tr) / (d * d);
}

double state_fidelity(const VecX& psi, const MatX& rho) {
    return std::real((psi.adjoint() * rho * psi)(0, 0));
}

Mat4 trace_out_electron(const Mat8& rho) {
    Mat4 out = Mat4::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    return out;
}

Mat2 trace_out_qubit(const Mat4& rho, int keep) {
    Mat2 out = Mat2::Zero();
    if (keep == 0) { // keep q1, trace q2
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    } else { // keep q2
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out(i, j) = rho(i, j) + rho(i + 2, j + 2);
    }
    return out;
}

VecX vectorize(const MatX& m) {
    return Eigen::Map<const VecX>(m.data(), m.size());
}

MatX devectorize(const VecX& v, Eigen::Index rows) {
    return Eigen::Map<const MatX>(v.data(), rows, v.size() / rows);
}

MatX sandwich_superop(const MatX& a, const MatX& b) {
    return kron(b.transpose(), a);
}

} // namespace spintomo
