#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "spintomo/noise.hpp"
#include "spintomo/sampling.hpp"

#include <cmath>

using namespace spintomo;

namespace {

Mat8 pure8(const Vec8& psi) { return psi * psi.adjoint(); }

// Choi matrix of an 8-dim superoperator; PSD iff the channel is CP.
MatX choi_of_superop(const MatX& s) {
    MatX choi = MatX::Zero(64, 64);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            MatX eij = MatX::Zero(8, 8);
            eij(i, j) = 1.0;
            MatX mapped = devectorize(VecX(s * vectorize(eij)), 8);
            for (int a = 0; a < 8; ++a)
                for (int b = 0; b < 8; ++b)
                    choi(8 * i + a, 8 * j + b) = mapped(a, b) / 8.0;
        }
    return choi;
}

} // namespace

TEST_CASE("empty circuit leaves the state unchanged") {
    Mat8 rho = pure8(basis_ket8(1, 0, 1));
    Mat8 out = apply_circuit(rho, Circuit{});
    CHECK((out - rho).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("bell circuit from |dd down> yields Phi+ with unit fidelity") {
    Mat8 out = apply_circuit(pure8(basis_ket8(1, 1, 1)), bell_circuit());
    Vec8 phi_plus = Vec8::Zero();
    phi_plus(1) = 1 / std::sqrt(2.0); // |uu down>
    phi_plus(7) = 1 / std::sqrt(2.0); // |dd down>
    CHECK(state_fidelity(VecX(phi_plus), MatX(out)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("forward-then-reverse GHZ returns to the initial state") {
    Circuit c = ghz_forward_circuit();
    c.append(ghz_reverse_circuit(0, 0, 0));
    Mat8 out = apply_circuit(pure8(basis_ket8(1, 1, 1)), c);
    CHECK(std::real(out(7, 7)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("noise channels are CPTP and dephase coherences") {
    // C/A pair rates must be dominated by the diagonal S rates for a CP map.
    std::vector<GeneratorTerm> terms = {
        {'S', "IX", "", 0.01},    {'S', "XI", "", 0.004},  {'S', "YI", "", 0.002},
        {'S', "ZZ", "", 0.005},   {'H', "ZI", "", 0.02},
        {'C', "XI", "IX", 0.002}, {'A', "XI", "YI", 0.001}};
    MatX chan = noise_channel_superop(terms);

    // Trace preservation: adjoint of identity is fixed.
    MatX id_vec = vectorize(MatX::Identity(8, 8));
    CHECK((chan.adjoint() * id_vec - id_vec).lpNorm<Eigen::Infinity>() < 1e-9);

    // Complete positivity.
    MatX choi = choi_of_superop(chan);
    Eigen::SelfAdjointEigenSolver<MatX> es{MatX(0.5 * (choi + choi.adjoint()))};
    CHECK(es.eigenvalues().minCoeff() > -1e-10);

    // Stochastic electron dephasing kills the GHZ corner coherence by e^{-2r}.
    Mat8 ghz = apply_circuit(pure8(basis_ket8(1, 1, 1)), ghz_forward_circuit());
    NoiseModel n;
    n.per_gate_generators["Idle"] = {{'S', "IIZ", "", 0.08125}};
    Circuit idle;
    idle.append(GateLabel::idle(1.0));
    Mat8 dephased = apply_circuit(ghz, idle, &n);
    double expect = 0.5 * std::exp(-2 * 0.08125);
    CHECK(std::abs(dephased(7, 0)) == doctest::Approx(expect).epsilon(1e-9));
    CHECK(std::real(dephased(7, 7)) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("negative stochastic rate is rejected") {
    NoiseModel n;
    n.per_gate_generators["CZ"] = {{'S', "IX", "", -0.01}};
    CHECK_THROWS_AS(n.validate(), std::invalid_argument);
}

TEST_CASE("sampling a basis state concentrates all counts") {
    Mat8 rho = pure8(basis_ket8(0, 0, 1));
    auto counts = sample_measurement(rho, NuclearPovm::ideal(), 1000, 7);
    CHECK(counts[0] == 1000);
}

TEST_CASE("maximally mixed nuclear state samples uniformly") {
    Mat8 rho = Mat8::Zero();
    for (int k = 0; k < 4; ++k) rho(2 * k + 1, 2 * k + 1) = 0.25;
    auto counts = sample_measurement(rho, NuclearPovm::ideal(), 1000, 12345);
    double sigma = std::sqrt(1000 * 0.25 * 0.75);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(counts[j] - 250.0) < 5 * sigma);
}

TEST_CASE("identical seeds give identical counts") {
    Mat8 rho = Mat8::Zero();
    for (int k = 0; k < 4; ++k) rho(2 * k + 1, 2 * k + 1) = 0.25;
    auto a = sample_measurement(rho, NuclearPovm::ideal(), 5000, 99);
    auto b = sample_measurement(rho, NuclearPovm::ideal(), 5000, 99);
    for (int j = 0; j < 4; ++j) CHECK(a[j] == b[j]);
}

TEST_CASE("confusion model reproduces its row probabilities over 1e5 shots") {
    Mat8 rho = pure8(basis_ket8(1, 1, 1)); // prepared |dd>
    auto povm = NuclearPovm::with_confusion(fixtures::readout_confusion());
    const long shots = 100000;
    auto counts = sample_measurement(rho, povm, shots, 2024);
    for (int j = 0; j < 4; ++j) {
        double p = fixtures::readout_confusion()(3, j);
        double sigma = std::sqrt(shots * p * (1 - p));
        CHECK(std::abs(counts[j] - shots * p) < 3 * sigma + 1);
    }
}

TEST_CASE("invalid POVM rejected") {
    NuclearPovm p = NuclearPovm::ideal();
    p.effects[0](0, 0) = 0.5; // breaks completeness
    Mat8 rho = pure8(basis_ket8(0, 0, 1));
    CHECK_THROWS_AS(sample_measurement(rho, p, 10, 1), std::invalid_argument);
}

TEST_CASE("perfect QND readout is always correct") {
    ReadoutCycleParams p;
    p.electron_read_fidelity = 1.0;
    p.esr_pi_fidelity = 1.0;
    p.cycles = 7;
    p.gamma1 = p.gamma2 = 0.0;
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        int s = t % 4;
        CHECK(simulate_qnd_readout(s, p, rng).label == s);
    }
}

TEST_CASE("majority vote at 0.8 electron fidelity over 40 cycles") {
    ReadoutCycleParams p;
    p.electron_read_fidelity = 0.8;
    p.esr_pi_fidelity = 1.0;
    p.cycles = 40;
    p.gamma1 = p.gamma2 = 0.0;
    Rng rng(17);
    long errors = 0;
    const long trials = 100000;
    for (long t = 0; t < trials; ++t)
        if (simulate_qnd_readout(static_cast<int>(t % 4), p, rng).label !=
            static_cast<int>(t % 4))
            ++errors;
    // Analytic binomial-tail bound: P(correct votes <= 20 of 40 at 0.8) ~ 1e-5.
    CHECK(static_cast<double>(errors) / trials < 1e-4);
}

TEST_CASE("ionization-shock flip rate matches gamma") {
    ReadoutCycleParams p;
    p.electron_read_fidelity = 0.8;
    p.cycles = 100;
    p.gamma1 = 2.8e-6;
    p.gamma2 = 4.0e-7;
    Rng rng(31);
    long q1_flips = 0;
    const long runs = 100000; // 1e7 ionizations in total
    for (long t = 0; t < runs; ++t) q1_flips += simulate_qnd_readout(3, p, rng).q1_flips;
    // Poisson with mean 28: allow a generous 5-sigma window.
    CHECK(q1_flips > 28 - 5 * 6);
    CHECK(q1_flips < 28 + 5 * 6);
}
