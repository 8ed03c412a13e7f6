#include "spintomo/sampling.hpp"

namespace spintomo {

NuclearPovm NuclearPovm::ideal() {
    NuclearPovm p;
    for (int j = 0; j < 4; ++j) {
        p.effects[j] = Mat4::Zero();
        p.effects[j](j, j) = 1.0;
    }
    return p;
}

NuclearPovm NuclearPovm::with_confusion(const Eigen::Matrix4d& confusion) {
    NuclearPovm p;
    for (int j = 0; j < 4; ++j) {
        p.effects[j] = Mat4::Zero();
        for (int i = 0; i < 4; ++i) p.effects[j](i, i) = confusion(i, j);
    }
    return p;
}

void NuclearPovm::validate() const {
    Mat4 sum = Mat4::Zero();
    for (const auto& e : effects) {
        Eigen::SelfAdjointEigenSolver<MatX> es{MatX(0.5 * (e + e.adjoint()))};
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw std::invalid_argument("NuclearPovm: effect not positive");
        sum += e;
    }
    if ((sum - Mat4::Identity()).lpNorm<Eigen::Infinity>() > 1e-9)
        throw std::invalid_argument("NuclearPovm: effects do not sum to identity");
}

std::array<double, 4> outcome_probabilities(const Mat8& rho, const NuclearPovm& povm) {
    Mat4 nuclear = trace_out_electron(rho);
    std::array<double, 4> p{};
    for (int j = 0; j < 4; ++j)
        p[j] = std::max(0.0, std::real((povm.effects[j] * nuclear).trace()));
    return p;
}

std::array<long, 4> sample_measurement(const Mat8& rho, const NuclearPovm& povm,
                                       long shots, uint64_t seed) {
    povm.validate();
    auto p = outcome_probabilities(rho, povm);
    Rng rng(seed);
    auto counts = rng.multinomial(shots, {p[0], p[1], p[2], p[3]});
    return {counts[0], counts[1], counts[2], counts[3]};
}

QndReadoutResult simulate_qnd_readout(int true_state, const ReadoutCycleParams& params,
                                      Rng& rng) {
    if (params.cycles < 1 || params.cycles > 100)
        throw std::invalid_argument("simulate_qnd_readout: cycles must be in [1, 100]");
    if (params.electron_read_fidelity < 0 || params.electron_read_fidelity > 1 ||
        params.esr_pi_fidelity < 0 || params.esr_pi_fidelity > 1)
        throw std::invalid_argument("simulate_qnd_readout: fidelities must be in [0, 1]");

    QndReadoutResult res;
    res.cycles_used = params.cycles;
    int state = true_state;
    std::array<long, 4> votes{};
    const double p_correct = params.electron_read_fidelity * params.esr_pi_fidelity;
    for (int c = 0; c < params.cycles; ++c) {
        // Loading the electron ionizes the cluster once.
        if (rng.uniform() < params.gamma1) {
            state ^= 2;
            ++res.q1_flips;
        }
        if (rng.uniform() < params.gamma2) {
            state ^= 1;
            ++res.q2_flips;
        }
        if (rng.uniform() < p_correct) {
            ++votes[state];
        } else {
            int wrong = static_cast<int>(rng.uniform_int(3));
            if (wrong >= state) ++wrong;
            ++votes[wrong];
        }
    }
    int best = true_state; // ties break toward "no flip"
    for (int j = 0; j < 4; ++j)
        if (votes[j] > votes[best]) best = j;
    res.label = best;
    return res;
}

} // namespace spintomo
