#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spintomo/linalg.hpp"
#include "spintomo/pauli.hpp"
#include "spintomo/rng.hpp"

using namespace spintomo;

TEST_CASE("kron dimensions and values") {
    Mat2 a, b;
    a << 1, 2, 3, 4;
    b << 0, 1, 1, 0;
    MatX k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(std::abs(k(0, 1) - cx(1)) < 1e-15);
    CHECK(std::abs(k(1, 2) - cx(2)) < 1e-15);
}

TEST_CASE("evolution operator is unitary and matches scalar phase") {
    MatX h = MatX::Zero(2, 2);
    h(0, 0) = 1.0; // 1 MHz
    MatX u = evolution_operator(h, 0.25); // quarter microsecond
    CHECK(unitarity_defect(u) < 1e-12);
    CHECK(std::abs(u(0, 0) - std::exp(cx(0, -kTwoPi * 0.25))) < 1e-12);
    CHECK(std::abs(u(1, 1) - cx(1)) < 1e-12);
}

TEST_CASE("logm_real inverts expm_real near identity") {
    RMatX a = 0.05 * RMatX::Random(6, 6);
    RMatX e = expm_real(a);
    RMatX l = logm_real(e);
    CHECK((l - a).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("logm_real rejects negative real spectrum") {
    RMatX m = RMatX::Identity(3, 3);
    m(0, 0) = -1.0;
    CHECK_THROWS_AS(logm_real(m), std::domain_error);
}

TEST_CASE("partial traces") {
    // rho = |q1 q2 e> = |0 1 0><...| in product form
    Mat8 rho = Mat8::Zero();
    rho(2, 2) = 1.0;
    Mat4 nuc = trace_out_electron(rho);
    CHECK(std::abs(nuc(1, 1) - cx(1)) < 1e-15);
    Mat2 q1 = trace_out_qubit(nuc, 0);
    CHECK(std::abs(q1(0, 0) - cx(1)) < 1e-15);
    Mat2 q2 = trace_out_qubit(nuc, 1);
    CHECK(std::abs(q2(1, 1) - cx(1)) < 1e-15);
}

TEST_CASE("pauli basis orthonormality and ptm of identity") {
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            double ip = std::real((pauli2(i).adjoint() * pauli2(j)).trace()) / 4.0;
            CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-14);
        }
    RMat16 r = ptm_of_unitary(Mat4::Identity());
    CHECK((r - RMat16::Identity()).lpNorm<Eigen::Infinity>() < 1e-13);
}

TEST_CASE("state/effect pauli vectors reproduce Born probabilities") {
    Mat4 rho = Mat4::Zero();
    rho(2, 2) = 1.0; // |down, up>
    RVec16 s = state_to_pauli_vec(rho);
    CHECK(std::abs(s(0) - 0.5) < 1e-14);
    Mat4 proj = Mat4::Zero();
    proj(2, 2) = 1.0;
    RVec16 e = effect_to_pauli_vec(proj);
    CHECK(std::abs(e.dot(s) - 1.0) < 1e-13);
    CHECK((pauli_vec_to_state(s) - rho).lpNorm<Eigen::Infinity>() < 1e-13);
}

TEST_CASE("clifford conjugation table round trip") {
    Mat2 h2;
    h2 << 1, 1, 1, -1;
    h2 /= std::sqrt(2.0);
    Mat4 u = kron(h2, Mat2::Identity());
    auto perm = pauli_conjugation(u);
    // H maps X->Z, Z->X, Y->-Y on qubit 1.
    CHECK(perm.perm[pauli2_index("XI")] == pauli2_index("ZI"));
    CHECK(perm.perm[pauli2_index("ZI")] == pauli2_index("XI"));
    CHECK(perm.perm[pauli2_index("YI")] == pauli2_index("YI"));
    CHECK(perm.sign[pauli2_index("YI")] == -1);
    auto inv = perm.inverse();
    for (int k = 0; k < 16; ++k) CHECK(inv.perm[perm.perm[k]] == k);
}

TEST_CASE("choi of a unitary PTM is positive") {
    Mat4 u = Mat4::Identity();
    u(3, 3) = -1.0;
    RMat16 r = ptm_of_unitary(u);
    CHECK(min_choi_eigenvalue(r) > -1e-12);
    // First row of a TP map is (1, 0, ..., 0).
    CHECK(std::abs(r(0, 0) - 1.0) < 1e-13);
    for (int j = 1; j < 16; ++j) CHECK(std::abs(r(0, j)) < 1e-13);
}

TEST_CASE("rng determinism and multinomial totals") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng r(7);
    auto counts = r.multinomial(1000, {0.25, 0.25, 0.25, 0.25});
    long total = 0;
    for (long c : counts) total += c;
    CHECK(total == 1000);
}
