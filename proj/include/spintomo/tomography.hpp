#pragma once

#include "spintomo/linalg.hpp"
#include "spintomo/noise.hpp"

#include <array>
#include <string>
#include <vector>

namespace spintomo {

// One tomography setting: single-qubit pre-rotations applied to each nucleus
// before the fixed 4-outcome readout. Labels from {"I", "X90", "Y90"}.
struct TomographySetting {
    std::string pre_q1 = "I";
    std::string pre_q2 = "I";
    std::array<double, 4> counts{}; // may hold exact expected counts
    double shots = 0.0;
};

// The nine-setting {I, X90, Y90}^2 measurement frame.
std::vector<TomographySetting> standard_tomography_settings();

// Nuclear 2-qubit unitary of a pre-rotation label pair.
Mat4 pre_rotation_unitary(const std::string& q1, const std::string& q2);

struct MleOptions {
    double rel_tol = 1e-11;
    int max_iterations = 3000;
};

// Maximum-likelihood reconstruction over rho = T^dag T / tr(T^dag T) with T
// upper triangular; deterministic from the projected linear-inversion start.
// Throws std::invalid_argument naming missing Pauli components when the
// settings are informationally incomplete.
Mat4 mle_state_tomography(const std::vector<TomographySetting>& settings,
                          const MleOptions& opts = {});

// Wootters concurrence of a two-qubit state.
double concurrence(const Mat4& rho);

// The four Bell states in the (uu, ud, du, dd) nuclear basis:
// 0: Phi+, 1: Phi-, 2: Psi+, 3: Psi-.
Vec4 bell_state(int kind);

// Simulated Bell-state tomography: runs the Fig. 2-style circuit from the
// given initial nuclear basis state through the noise model (init populations,
// per-gate generators, readout confusion), then measures all nine settings.
// shots <= 0 uses exact probabilities scaled by 1e6.
std::vector<TomographySetting> simulate_bell_tomography(int q1_down, int q2_down,
                                                        const NoiseModel* noise,
                                                        double shots, uint64_t seed);

// Multinomial resampling of measured settings for bootstrap error bars.
std::vector<TomographySetting> resample_settings(const std::vector<TomographySetting>& settings,
                                                 uint64_t seed);

} // namespace spintomo
