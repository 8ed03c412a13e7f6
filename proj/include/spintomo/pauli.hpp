#pragma once

#include "spintomo/linalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace spintomo {

// Single-qubit Paulis, index order I, X, Y, Z.
const Mat2& pauli1(int k);

// Two-qubit Pauli P_{4a+b} = sigma_a (x) sigma_b, order II, IX, IY, IZ, XI, ... ZZ.
const Mat4& pauli2(int k);

const std::string& pauli2_label(int k);
int pauli2_index(const std::string& label); // throws on unknown label

// Support of a two-qubit Pauli: 0 = identity, 1 = Q1 only, 2 = Q2 only, 3 = both.
int pauli2_support(int k);

// Pauli vector of a state: s_k = tr(P_k rho) / 2 (normalized basis P_k/2).
RVec16 state_to_pauli_vec(const Mat4& rho);
Mat4 pauli_vec_to_state(const RVec16& s);

// Effect vector of a POVM element: e_k = tr(P_k E) / 2, so p = e . s.
RVec16 effect_to_pauli_vec(const Mat4& effect);
Mat4 pauli_vec_to_effect(const RVec16& e);

// Pauli transfer matrix of a unitary channel rho -> U rho U^dag.
RMat16 ptm_of_unitary(const Mat4& u);

// PTM of a general superoperator given by its action on the 16 basis matrices.
RMat16 ptm_of_kraus(const std::vector<Mat4>& kraus);

// Action of conjugation by a Clifford unitary on the Pauli group:
// U P_k U^dag = sign[k] * P_{perm[k]}. Throws if u is not Clifford.
struct SignedPauliPerm {
    std::array<int, 16> perm;
    std::array<int, 16> sign;

    SignedPauliPerm inverse() const {
        SignedPauliPerm r;
        for (int k = 0; k < 16; ++k) {
            r.perm[perm[k]] = k;
            r.sign[perm[k]] = sign[k];
        }
        return r;
    }
};
SignedPauliPerm pauli_conjugation(const Mat4& u);

// Choi matrix (column-major vec convention) of a PTM; CP iff PSD.
MatX choi_of_ptm(const RMat16& r);
double min_choi_eigenvalue(const RMat16& r);

} // namespace spintomo
