#include "spintomo/pauli.hpp"

#include <stdexcept>

namespace spintomo {

namespace {

std::array<Mat2, 4> make_pauli1() {
    std::array<Mat2, 4> p;
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, cx(0, -1), cx(0, 1), 0;
    p[3] << 1, 0, 0, -1;
    return p;
}

std::array<Mat4, 16> make_pauli2() {
    std::array<Mat4, 16> p;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            p[4 * a + b] = kron(pauli1(a), pauli1(b));
    return p;
}

std::array<std::string, 16> make_labels() {
    const char* sym = "IXYZ";
    std::array<std::string, 16> l;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            l[4 * a + b] = std::string{sym[a], sym[b]};
    return l;
}

} // namespace

const Mat2& pauli1(int k) {
    static const auto p = make_pauli1();
    return p[k];
}

const Mat4& pauli2(int k) {
    static const auto p = make_pauli2();
    return p[k];
}

const std::string& pauli2_label(int k) {
    static const auto l = make_labels();
    return l[k];
}

int pauli2_index(const std::string& label) {
    static const auto l = make_labels();
    for (int k = 0; k < 16; ++k)
        if (l[k] == label) return k;
    throw std::invalid_argument("unknown Pauli label: " + label);
}

int pauli2_support(int k) {
    int a = k / 4, b = k % 4;
    return (a != 0 ? 1 : 0) | (b != 0 ? 2 : 0);
}

RVec16 state_to_pauli_vec(const Mat4& rho) {
    RVec16 s;
    for (int k = 0; k < 16; ++k)
        s(k) = 0.5 * std::real((pauli2(k) * rho).trace());
    return s;
}

Mat4 pauli_vec_to_state(const RVec16& s) {
    Mat4 rho = Mat4::Zero();
    for (int k = 0; k < 16; ++k)
        rho += s(k) * 0.5 * pauli2(k);
    return rho;
}

RVec16 effect_to_pauli_vec(const Mat4& effect) {
    RVec16 e;
    for (int k = 0; k < 16; ++k)
        e(k) = 0.5 * std::real((pauli2(k) * effect).trace());
    return e;
}

Mat4 pauli_vec_to_effect(const RVec16& e) {
    Mat4 eff = Mat4::Zero();
    for (int k = 0; k < 16; ++k)
        eff += e(k) * 0.5 * pauli2(k);
    return eff;
}

RMat16 ptm_of_unitary(const Mat4& u) {
    RMat16 r;
    for (int j = 0; j < 16; ++j) {
        Mat4 mapped = u * pauli2(j) * u.adjoint();
        for (int i = 0; i < 16; ++i)
            r(i, j) = 0.25 * std::real((pauli2(i) * mapped).trace());
    }
    return r;
}

RMat16 ptm_of_kraus(const std::vector<Mat4>& kraus) {
    RMat16 r = RMat16::Zero();
    for (const auto& k : kraus) {
        for (int j = 0; j < 16; ++j) {
            Mat4 mapped = k * pauli2(j) * k.adjoint();
            for (int i = 0; i < 16; ++i)
                r(i, j) += 0.25 * std::real((pauli2(i) * mapped).trace());
        }
    }
    return r;
}

SignedPauliPerm pauli_conjugation(const Mat4& u) {
    SignedPauliPerm out;
    out.perm[0] = 0;
    out.sign[0] = 1;
    for (int k = 1; k < 16; ++k) {
        Mat4 mapped = u * pauli2(k) * u.adjoint();
        bool found = false;
        for (int m = 1; m < 16; ++m) {
            double cplus = (mapped - pauli2(m)).lpNorm<Eigen::Infinity>();
            double cminus = (mapped + pauli2(m)).lpNorm<Eigen::Infinity>();
            if (cplus < 1e-9) {
                out.perm[k] = m;
                out.sign[k] = 1;
                found = true;
                break;
            }
            if (cminus < 1e-9) {
                out.perm[k] = m;
                out.sign[k] = -1;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("pauli_conjugation: unitary is not a Clifford");
    }
    return out;
}

MatX choi_of_ptm(const RMat16& r) {
    // Choi = (1/d) sum_{ij} E(|i><j|) (x) |i><j| built through the Pauli rep.
    MatX choi = MatX::Zero(16, 16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Mat4 eij = Mat4::Zero();
            eij(i, j) = 1.0;
            // Map eij through the PTM: decompose on P_k/2, apply r, resum.
            RVec16 coeff;
            for (int k = 0; k < 16; ++k)
                coeff(k) = 0.5 * std::real((pauli2(k) * eij).trace());
            RVec16 img_re = r * coeff;
            // Imaginary part of the decomposition handled separately.
            RVec16 coeff_im;
            for (int k = 0; k < 16; ++k)
                coeff_im(k) = 0.5 * std::imag((pauli2(k) * eij).trace());
            RVec16 img_im = r * coeff_im;
            Mat4 mapped = Mat4::Zero();
            for (int k = 0; k < 16; ++k)
                mapped += (img_re(k) + cx(0, 1) * img_im(k)) * 0.5 * pauli2(k);
            Mat4 ketbra = Mat4::Zero();
            ketbra(i, j) = 1.0;
            choi += 0.25 * kron(mapped, ketbra);
        }
    }
    return choi;
}

double min_choi_eigenvalue(const RMat16& r) {
    MatX choi = choi_of_ptm(r);
    Eigen::SelfAdjointEigenSolver<MatX> es(0.5 * (choi + choi.adjoint()));
    return es.eigenvalues().minCoeff();
}

} // namespace spintomo
