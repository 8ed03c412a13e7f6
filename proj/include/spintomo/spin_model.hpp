#pragma once

#include "spintomo/linalg.hpp"

#include <array>
#include <optional>
#include <string>

namespace spintomo {

// Physical configuration of the electron / two-nuclei system.
// Energies are handled in MHz (h = 1); gamma_e enters in GHz/T and is
// converted at the boundary. Basis ordering throughout is Q1 (x) Q2 (x) e,
// index = 4*q1 + 2*q2 + e with up (nuclear "up"-arrow / electron "up") = 0.
struct SpinSystemConfig {
    double b0_tesla = 1.33;
    double gamma_e_ghz_per_t = -27.97;
    double gamma_n_mhz_per_t = 17.23;
    double a1_mhz = 95.0;
    double a2_mhz = 9.0;

    // Throws std::invalid_argument on non-finite or ordering violations.
    // Returns true when the secular regime |gamma_e| B0 >> A1 holds; callers
    // may warn when it does not.
    bool validate() const;

    static SpinSystemConfig paper_values() { return SpinSystemConfig{}; }
};

// Labeled single-spin-flip transition frequencies (MHz, absolute values).
// ESR entries are indexed by the nuclear configuration m = 2*q1 + q2
// (0 = up-up, 3 = down-down); NMR entries by (nucleus, electron state).
struct TransitionTable {
    std::array<double, 4> esr_mhz;    // nu_e | (q1 q2)
    std::array<double, 4> nmr_mhz;    // [Q1|down, Q1|up, Q2|down, Q2|up]

    double esr(int q1_down, int q2_down) const { return esr_mhz[2 * q1_down + q2_down]; }
    double nmr_q1(bool electron_down) const { return nmr_mhz[electron_down ? 0 : 1]; }
    double nmr_q2(bool electron_down) const { return nmr_mhz[electron_down ? 2 : 3]; }
};

// H = -ge B0 Sz - gn B0 (I1z + I2z) + A1 S.I1 + A2 S.I2, in MHz.
Mat8 build_static_hamiltonian(const SpinSystemConfig& config);

// Spin operators in the fixed product basis (factors of 1/2 included).
Mat8 electron_op(const Mat2& single);  // I4 (x) s
Mat8 nucleus_op(int which, const Mat2& single);

// Diagonalizes h, labels eigenstates by dominant product component
// (overlap^2 > 0.5, else throws std::runtime_error naming the state), and
// returns the eight allowed single-flip frequencies.
TransitionTable transition_frequencies(const Mat8& h);

// Hyperfine couplings from the four labeled ESR lines (ED-figure formulas):
// A1 = avg(nu_e| up .) - avg(nu_e| down .), A2 = nu_e|up,up - nu_e|up,down.
std::pair<double, double> extract_hyperfine_from_esr(const std::array<double, 4>& esr_mhz);

struct RamseyDetuning {
    double delta_f_hz = 0.0;
    bool outside_validity = false; // |delta_f * tau| >= 0.25
};

// delta_f = arcsin(2 p_flip - 1) / (2 pi tau).
RamseyDetuning ramsey_detuning_estimate(double p_flip, double tau_s);

// Eigenstate labels sorted by product-basis index, convenience for tests/CLI.
std::array<double, 8> sorted_level_energies(const Mat8& h);

} // namespace spintomo
