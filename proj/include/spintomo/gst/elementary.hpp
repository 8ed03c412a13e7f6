#pragma once

#include "spintomo/linalg.hpp"

#include <string>
#include <vector>

namespace spintomo::gst {

// Elementary error generators on the two-qubit space, acting on density
// operators as
//   H_P[rho] = -i [P, rho]
//   S_P[rho] = P rho P - rho
//   C_{P,Q}[rho] = P rho Q + Q rho P - (1/2){ {P,Q}, rho }
//   A_{P,Q}[rho] = i (P rho Q - Q rho P) + (i/2) { [P,Q], rho }
// with P, Q among the 15 non-identity Paulis. The full basis has
// 15 H + 15 S + 105 C + 105 A = 240 elements and spans every
// trace-preserving, Hermiticity-preserving generator.
enum class GenKind { H, S, C, A };

struct GenLabel {
    GenKind kind = GenKind::H;
    int p = 1;  // Pauli index 1..15
    int q = -1; // second Pauli for C/A, p < q

    bool operator==(const GenLabel& o) const {
        return kind == o.kind && p == o.p && q == o.q;
    }
};

constexpr int kNumElementary = 240;
constexpr int kNumHs = 30;

// Basis index <-> label: [0,15) H, [15,30) S, [30,135) C, [135,240) A.
int elementary_index(const GenLabel& label);
GenLabel elementary_label(int index);
std::string to_string(const GenLabel& label);
GenLabel parse_gen_label(const std::string& text); // e.g. "H_ZZ", "C_XI,IX"

// PTM (normalized Pauli basis) of one elementary generator.
const RMat16& elementary_ptm(int index);

// Generator from sparse rates.
RMat16 generator_from_rates(const std::vector<std::pair<GenLabel, double>>& rates);

struct GeneratorDecomposition {
    Eigen::VectorXd rates;  // 240 coefficients in basis order
    double residual = 0.0;  // Frobenius norm of the unexplained part

    double rate(const GenLabel& label) const { return rates(elementary_index(label)); }
    std::vector<std::pair<GenLabel, double>> nonzero(double floor = 1e-12) const;
};

// Projection of an arbitrary generator onto the elementary basis. The
// residual is zero (to rounding) for any trace-preserving generator; a large
// residual is reported for maps leaking outside the space.
GeneratorDecomposition decompose_error_generator(const RMat16& generator);

// L = log(G T^{-1}); throws std::domain_error on branch ambiguity and
// std::runtime_error if exp(L) T fails to reproduce G to 1e-9.
RMat16 error_generator(const RMat16& gate, const RMat16& target);

} // namespace spintomo::gst
