#pragma once

#include "spintomo/linalg.hpp"
#include "spintomo/noise.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace spintomo {

struct GhzScanPoint {
    int n = 0;
    std::array<double, 3> thetas{}; // theta1 = 3 theta2 = 9 theta3 = 9 N / 125
    double p_return = 0.0;
};

// Maps reversal-pulse phase shifts to the measured return probability.
using GhzExecutor = std::function<double(double, double, double)>;

// Executor running the forward + phase-shifted reverse circuit through the
// noise model and reading the population of |down,down,down>.
GhzExecutor make_ghz_executor(const NoiseModel* noise);

// Phase-incremented reversal scan, N = 0..n_max with the schedule
// theta1 = 3 theta2 = 9 theta3 = 9 N / 125 (radians).
std::vector<GhzScanPoint> run_parity_scan(const GhzExecutor& executor, int n_max = 100);

struct ParityFit {
    double c0 = 0.0;
    double amplitude = 0.0;       // peak-to-peak oscillation amplitude
    double phi = 0.0;
    std::complex<double> rho18{}; // |rho18| = amplitude / 2, arg = phi
    double rms_residual = 0.0;
};

// Least-squares fit of p(N) = c0 + (amplitude/2) cos(sum theta_i(N) + phi).
// Requires the scan to cover at least two oscillation periods.
ParityFit fit_parity_oscillation(const std::vector<GhzScanPoint>& points);

struct GhzFidelity {
    double value = 0.0;
    bool clipped = false; // inputs inconsistent (|rho18| > sqrt(rho11 rho88))
};

// F = (rho11 + rho88)/2 + |rho18|, the fidelity to the nearest GHZ state.
GhzFidelity ghz_fidelity(double rho11, double rho88, std::complex<double> rho18);

// Populations of the eight product states (electron-resolved readout).
std::array<double, 8> ghz_populations(const Mat8& rho);

} // namespace spintomo
