#pragma once

#include "spintomo/linalg.hpp"
#include "spintomo/noise.hpp"
#include "spintomo/rng.hpp"

#include <array>
#include <vector>

namespace spintomo {

// Four-outcome nuclear POVM, outcome order (uu, ud, du, dd).
struct NuclearPovm {
    std::array<Mat4, 4> effects;

    // Projectors onto the product basis.
    static NuclearPovm ideal();
    // Projectors smeared by a readout confusion matrix:
    // E'_j = sum_i confusion(i, j) |i><i|.
    static NuclearPovm with_confusion(const Eigen::Matrix4d& confusion);

    // Throws std::invalid_argument unless effects are >= -1e-10 and sum to
    // the identity within 1e-9.
    void validate() const;
};

// Born probabilities of the nuclear POVM after tracing out the electron.
std::array<double, 4> outcome_probabilities(const Mat8& rho, const NuclearPovm& povm);

// Multinomial shot sampling; deterministic for a given seed.
std::array<long, 4> sample_measurement(const Mat8& rho, const NuclearPovm& povm,
                                       long shots, uint64_t seed);

struct QndReadoutResult {
    int label = 0;       // majority-vote nuclear label
    int cycles_used = 0;
    long q1_flips = 0;   // ionization-shock flips during the readout
    long q2_flips = 0;
};

// Repeated electron-mediated readout of a nuclear basis state: each cycle
// loads an electron (one ionization event, which may flip a nucleus), applies
// a conditional ESR pi pulse and reads the electron. The per-cycle vote is
// correct with probability read_fidelity * pi_fidelity, otherwise lands on a
// uniformly random other label. Ties break toward the initial state.
QndReadoutResult simulate_qnd_readout(int true_state, const ReadoutCycleParams& params,
                                      Rng& rng);

} // namespace spintomo
