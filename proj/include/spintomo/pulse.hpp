#pragma once

#include "spintomo/linalg.hpp"
#include "spintomo/spin_model.hpp"

#include <vector>

namespace spintomo {

enum class PulseChannel { esr, nmr };
enum class PulseMethod { rwa, time_sliced };

struct PulseSpec {
    double target_frequency_mhz = 0.0;
    double rabi_frequency_mhz = 0.0; // on-resonance Rabi rate of the addressed line
    double duration_us = 0.0;
    double phase_rad = 0.0;          // rotation axis in the transition's frame
    PulseChannel channel = PulseChannel::esr;

    void validate() const;
};

struct PulseOptions {
    // Transitions within this detuning of the drive are evolved as exact
    // two-level generalized rotations; negative means 5x the Rabi rate.
    double resonance_window_mhz = -1.0;
    // When set, off-resonant connected transitions accumulate first-order
    // detuning (a.c. Stark) phases instead of being ignored.
    bool first_order_stark = false;
    // Piecewise-constant steps per carrier period for the time-sliced method.
    long steps_per_period = 10000;
};

// Static frame of the spin system: eigenstates labeled by their dominant
// product component and the shared transverse drive operator of Methods
// Eq. (2) per unit B1 (MHz/T).
struct SpinFrame {
    Mat8 eigvecs;                    // column b = eigenstate with product label b
    std::array<double, 8> energies_mhz{};
    Mat8 drive_unit;                 // -gamma_e Sy - gamma_n (I1y + I2y)

    static SpinFrame build(const SpinSystemConfig& config);
};

struct TransitionLine {
    int upper = 0;          // product label of the higher-energy level
    int lower = 0;
    double frequency_mhz = 0.0;
    double element_mhz_per_t = 0.0;  // |<upper| V_unit |lower>|
};

// All drive-connected level pairs, sorted by frequency.
std::vector<TransitionLine> drive_transitions(const SpinFrame& frame,
                                              double relative_element_floor = 1e-8);

// Propagator of a single pulse in the interaction picture of the static
// Hamiltonian, expressed in the product basis. Unitary to 1e-9.
Mat8 pulse_propagator(const SpinSystemConfig& config, const PulseSpec& pulse,
                      PulseMethod method, const PulseOptions& options = {});

} // namespace spintomo
