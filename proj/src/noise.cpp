#include "spintomo/noise.hpp"

#include "spintomo/pauli.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace spintomo {

Mat8 pauli8_from_label(const std::string& label) {
    auto single = [](char c) -> const Mat2& {
        switch (c) {
            case 'I': return pauli1(0);
            case 'X': return pauli1(1);
            case 'Y': return pauli1(2);
            case 'Z': return pauli1(3);
            default: throw std::invalid_argument(std::string("bad Pauli letter: ") + c);
        }
    };
    if (label.size() == 2)
        return Mat8(kron(kron(single(label[0]), single(label[1])), Mat2::Identity()));
    if (label.size() == 3)
        return Mat8(kron(kron(single(label[0]), single(label[1])), single(label[2])));
    throw std::invalid_argument("Pauli label must have 2 or 3 letters: " + label);
}

void NoiseModel::validate() const {
    for (const auto& [gate, terms] : per_gate_generators)
        for (const auto& t : terms) {
            if (t.kind == 'S' && t.rate < 0.0)
                throw std::invalid_argument("NoiseModel: negative stochastic rate on " + gate);
            if (t.kind != 'H' && t.kind != 'S' && t.kind != 'C' && t.kind != 'A')
                throw std::invalid_argument("NoiseModel: unknown generator kind");
        }
    for (int i = 0; i < 4; ++i) {
        if (std::abs(confusion.row(i).sum() - 1.0) > 1e-12)
            throw std::invalid_argument("NoiseModel: confusion row does not sum to 1");
    }
    if (std::abs(init_populations.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("NoiseModel: initial populations do not sum to 1");
}

MatX noise_channel_superop(const std::vector<GeneratorTerm>& terms) {
    const MatX id = MatX::Identity(8, 8);
    MatX l = MatX::Zero(64, 64);
    for (const auto& t : terms) {
        Mat8 p = pauli8_from_label(t.pauli);
        if (t.kind == 'H') {
            l += t.rate * cx(0, -1) *
                 (sandwich_superop(MatX(p), id) - sandwich_superop(id, MatX(p)));
        } else if (t.kind == 'S') {
            l += t.rate * (sandwich_superop(MatX(p), MatX(p)) - MatX::Identity(64, 64));
        } else if (t.kind == 'C') {
            Mat8 q = pauli8_from_label(t.pauli2);
            Mat8 anti = p * q + q * p;
            l += t.rate * (sandwich_superop(MatX(p), MatX(q)) +
                           sandwich_superop(MatX(q), MatX(p)) -
                           0.5 * (sandwich_superop(MatX(anti), id) +
                                  sandwich_superop(id, MatX(anti))));
        } else if (t.kind == 'A') {
            Mat8 q = pauli8_from_label(t.pauli2);
            Mat8 comm = p * q - q * p;
            l += t.rate * (cx(0, 1) * (sandwich_superop(MatX(p), MatX(q)) -
                                       sandwich_superop(MatX(q), MatX(p))) +
                           cx(0, 0.5) * (sandwich_superop(MatX(comm), id) +
                                         sandwich_superop(id, MatX(comm))));
        }
    }
    return l.exp();
}

namespace {

void check_physical_state(const Mat8& rho) {
    if (std::abs(std::real(rho.trace()) - 1.0) > 1e-9 || std::abs(std::imag(rho.trace())) > 1e-9)
        throw std::invalid_argument("apply_circuit: state trace is not 1");
    Eigen::SelfAdjointEigenSolver<MatX> es{MatX(0.5 * (rho + rho.adjoint()))};
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw std::invalid_argument("apply_circuit: state is not positive semidefinite");
}

std::string noise_key(const GateLabel& g) {
    return g.name;
}

} // namespace

CircuitSimulator::CircuitSimulator(const NoiseModel* noise) : noise_(noise) {
    if (noise_) noise_->validate();
}

Mat8 CircuitSimulator::run(const Mat8& rho0, const Circuit& circuit) const {
    check_physical_state(rho0);
    Mat8 rho = rho0;
    for (const auto& g : circuit.gates) {
        Mat8 u = native_gate_unitary(g);
        rho = u * rho * u.adjoint();
        if (noise_ && noise_->has_gate_noise()) {
            auto it = noise_->per_gate_generators.find(noise_key(g));
            if (it != noise_->per_gate_generators.end() && !it->second.empty()) {
                auto cached = channel_cache_.find(it->first);
                if (cached == channel_cache_.end())
                    cached = channel_cache_
                                 .emplace(it->first, noise_channel_superop(it->second))
                                 .first;
                VecX v = cached->second * vectorize(MatX(rho));
                rho = devectorize(v, 8);
            }
        }
    }
    if (std::abs(std::real(rho.trace()) - 1.0) > 1e-9)
        throw std::runtime_error("apply_circuit: trace not preserved");
    return rho;
}

Mat8 apply_circuit(const Mat8& rho0, const Circuit& circuit, const NoiseModel* noise) {
    CircuitSimulator sim(noise);
    return sim.run(rho0, circuit);
}

Mat8 noisy_initial_state(int q1_down, int q2_down, const NoiseModel& noise) {
    int intended = 2 * q1_down + q2_down;
    Mat8 rho = Mat8::Zero();
    int slot = 1;
    for (int label = 0; label < 4; ++label) {
        double pop = (label == intended) ? noise.init_populations(0)
                                         : noise.init_populations(slot++);
        rho(2 * label + 1, 2 * label + 1) = pop; // electron down
    }
    return rho;
}

} // namespace spintomo
