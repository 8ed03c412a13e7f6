#pragma once

#include "spintomo/gst/model.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace spintomo::gst {

// Per-circuit outcome counts; entries align with a design's circuit list.
struct MeasurementDataset {
    std::vector<std::array<double, 4>> counts;
    std::vector<double> shots;
    uint64_t seed = 0;

    double total_shots() const;
    void validate(size_t n_circuits) const;
};

// Samples counts for every circuit. shots_per_circuit <= 0 stores exact
// probabilities scaled by 1e6 (the infinite-shot limit).
MeasurementDataset simulate_dataset(const GateSetModel& model,
                                    const std::vector<GstCircuit>& circuits,
                                    double shots_per_circuit, uint64_t seed);

double log_likelihood(const GateSetModel& model, const std::vector<GstCircuit>& circuits,
                      const MeasurementDataset& data, double clip = 1e-12);

// Log-likelihood of a parameterized model with its gradient; evaluated
// data-parallel over circuits.
class LikelihoodFunction {
public:
    LikelihoodFunction(const Parameterization& param, std::vector<GstCircuit> circuits,
                       MeasurementDataset data);

    double value(const Eigen::VectorXd& params) const;
    double value_and_gradient(const Eigen::VectorXd& params, Eigen::VectorXd& grad) const;

    // Observed Fisher information sum_c shots_c sum_j (d p_j)(d p_j)^T / p_j.
    Eigen::MatrixXd fisher_information(const Eigen::VectorXd& params) const;

    const Parameterization& parameterization() const { return param_; }
    const std::vector<GstCircuit>& circuits() const { return circuits_; }
    const MeasurementDataset& data() const { return data_; }

private:
    Parameterization param_;
    std::vector<GstCircuit> circuits_;
    MeasurementDataset data_;
};

} // namespace spintomo::gst
