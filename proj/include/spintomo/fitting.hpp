#pragma once

#include <vector>

namespace spintomo {

struct DecayingSinusoidFit {
    double c0 = 0.0;
    double c1 = 0.0;
    double omega = 0.0;   // angular frequency (rad per time unit)
    double phi = 0.0;
    double t2 = 0.0;      // Gaussian decay constant
    double rms_residual = 0.0;
    bool converged = false;
    bool t2_identifiable = true; // false when |c1| is consistent with zero
};

// Least-squares fit of p(t) = c0 + c1 cos(omega t + phi) exp(-(t/t2)^exponent).
// The frequency seed comes from a periodogram scan; refinement is
// deterministic. Requires at least 6 points.
DecayingSinusoidFit fit_decaying_sinusoid(const std::vector<double>& t,
                                          const std::vector<double>& p,
                                          double exponent = 2.0);

struct RbDecayFit {
    double r = 0.0; // per-Clifford decay rate, survival = a (1-r)^m + b
    double a = 0.0;
    double b = 0.0;
    double rms_residual = 0.0;
    bool converged = false;
};

// Fit of mean survival versus depth. Requires at least 3 distinct depths.
RbDecayFit fit_rb_decay(const std::vector<double>& depths,
                        const std::vector<double>& survival);

} // namespace spintomo
