#pragma once

#include "spintomo/gst/elementary.hpp"
#include "spintomo/linalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace spintomo::gst {

// A GST circuit over the six-gate set, stored as gate indices.
struct GstCircuit {
    std::vector<int> gate_indices;
    int germ = -1;       // provenance (optional)
    int power = 0;
    int prep_fid = -1;
    int meas_fid = -1;

    std::string key() const;
    size_t depth() const { return gate_indices.size(); }
};

struct GateSetModel {
    std::vector<std::string> gate_names;
    std::vector<RMat16> gates;      // PTMs in the 2-qubit Pauli basis
    RVec16 rho;                     // prepared state as a Pauli vector
    std::array<RVec16, 4> povm;     // effects as Pauli vectors

    int gate_index(const std::string& name) const;
    void validate() const; // TP rows, POVM completeness, physical rho trace
};

// Ideal model: the six native gates, |up,up> preparation, product readout.
GateSetModel target_gateset();

// Outcome probabilities of one circuit, clipped to [eps, 1].
std::array<double, 4> circuit_probabilities(const GateSetModel& model,
                                            const GstCircuit& circuit,
                                            double clip = 1e-12);

// Parameterization of a model around the targets. Kind generator_sparse
// builds G_i = exp(sum_k r_ik L_k) T_i over per-gate term lists; full_ptm
// exposes rows 2..16 of each PTM directly. SPAM parameters (15 for rho and
// 3 x 16 for independent effects) are appended when fit_spam is set.
struct Parameterization {
    enum class Kind { generator_sparse, full_ptm };
    Kind kind = Kind::generator_sparse;
    std::vector<std::vector<GenLabel>> gate_terms; // per gate, generator_sparse
    bool fit_spam = true;

    static Parameterization hs_default(); // 15 H + 15 S per gate
    static Parameterization full_ptm(bool fit_spam = true);

    int n_gate_params() const;
    int n_params() const;

    // Offset of gate i's parameter block and of the SPAM block.
    int gate_offset(int i) const;
    int spam_offset() const { return n_gate_params(); }

    GateSetModel build(const Eigen::VectorXd& params) const;
    Eigen::VectorXd start_params() const { return Eigen::VectorXd::Zero(n_params()); }

    // Rates of one gate from the parameter vector (generator_sparse).
    std::vector<std::pair<GenLabel, double>> gate_rates(const Eigen::VectorXd& params,
                                                        int gate) const;
};

// Model with per-gate derivative matrices, prepared once per parameter point.
struct PreparedModel {
    GateSetModel model;
    // d gates / d param for every gate parameter (16x16 each).
    std::vector<RMat16> gate_derivs; // indexed by parameterization layout
    const Parameterization* param = nullptr;
};

PreparedModel prepare_model(const Parameterization& param, const Eigen::VectorXd& params);

// Frechet derivative of expm at a in direction e (reference implementation
// for tests; prepare_model uses the commutator series internally).
RMat16 expm_frechet(const RMat16& a, const RMat16& e);

} // namespace spintomo::gst
