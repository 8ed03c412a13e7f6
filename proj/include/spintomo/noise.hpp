#pragma once

#include "spintomo/gates.hpp"
#include "spintomo/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace spintomo {

// Elementary error-generator label: kind in {H, S, C, A}, each Pauli given as
// a 2-letter (nuclear, electron untouched) or 3-letter (Q1 Q2 e) string.
struct GeneratorTerm {
    char kind = 'S';
    std::string pauli;   // e.g. "IX" or "ZZI"
    std::string pauli2;  // second Pauli for C/A kinds
    double rate = 0.0;
};

struct ReadoutCycleParams {
    double electron_read_fidelity = 0.80;
    double esr_pi_fidelity = 0.999;
    int cycles = 30;                  // paper repeats 7..40 times
    double gamma1 = 2.8e-6;           // nuclear flip probability per ionization
    double gamma2 = 4.0e-7;
};

struct NoiseModel {
    // Gate name -> generator terms applied after the ideal unitary.
    std::map<std::string, std::vector<GeneratorTerm>> per_gate_generators;

    // SPAM: conditional probability of reading column j given true row i,
    // and the population vector of the prepared nuclear state.
    Eigen::Matrix4d confusion = Eigen::Matrix4d::Identity();
    Eigen::Vector4d init_populations = (Eigen::Vector4d() << 1, 0, 0, 0).finished();

    ReadoutCycleParams readout_cycle;

    // Throws std::invalid_argument when stochastic rates are negative or the
    // confusion rows do not sum to one within 1e-12.
    void validate() const;

    bool has_gate_noise() const { return !per_gate_generators.empty(); }
};

// 64x64 superoperator (vec convention) of exp(sum rate * generator) for one
// gate's terms; identity when the list is empty.
MatX noise_channel_superop(const std::vector<GeneratorTerm>& terms);

// 8-dim Pauli from a 2- or 3-letter label (2-letter acts on the nuclei only).
Mat8 pauli8_from_label(const std::string& label);

// Left-to-right application of a circuit to a density operator; after each
// gate the gate's noise channel (when present) is applied. Trace preserved
// to 1e-9.
Mat8 apply_circuit(const Mat8& rho0, const Circuit& circuit, const NoiseModel* noise = nullptr);

// Mixed initial state for an intended nuclear basis preparation: the model's
// init_populations place entry 0 on the intended label and the remainder on
// the other labels in increasing label order. Electron starts in down.
Mat8 noisy_initial_state(int q1_down, int q2_down, const NoiseModel& noise);

// Cache of per-gate noise channels for repeated circuit evaluation.
class CircuitSimulator {
public:
    explicit CircuitSimulator(const NoiseModel* noise = nullptr);
    Mat8 run(const Mat8& rho0, const Circuit& circuit) const;

private:
    const NoiseModel* noise_;
    mutable std::map<std::string, MatX> channel_cache_;
};

} // namespace spintomo
