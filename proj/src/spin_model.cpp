#include "spintomo/spin_model.hpp"

#include "spintomo/pauli.hpp"

#include <cmath>

namespace spintomo {

bool SpinSystemConfig::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(b0_tesla) || !finite(gamma_e_ghz_per_t) || !finite(gamma_n_mhz_per_t) ||
        !finite(a1_mhz) || !finite(a2_mhz))
        throw std::invalid_argument("SpinSystemConfig: non-finite entry");
    if (b0_tesla <= 0.0)
        throw std::invalid_argument("SpinSystemConfig: b0_tesla must be positive");
    // Q1/Q2 are labeled by coupling strength; zero couplings are allowed for
    // degenerate test configurations.
    if (a1_mhz < a2_mhz || a2_mhz < 0.0)
        throw std::invalid_argument("SpinSystemConfig: require a1_mhz >= a2_mhz >= 0");
    return std::abs(gamma_e_ghz_per_t) * 1e3 * b0_tesla > 100.0 * a1_mhz;
}

Mat8 electron_op(const Mat2& single) {
    Mat8 out;
    out = kron(Mat4::Identity(), (0.5 * single).eval());
    return out;
}

Mat8 nucleus_op(int which, const Mat2& single) {
    MatX half = 0.5 * single;
    if (which == 1)
        return kron(kron(half, Mat2::Identity()), Mat2::Identity());
    return kron(kron(Mat2::Identity(), half), Mat2::Identity());
}

Mat8 build_static_hamiltonian(const SpinSystemConfig& config) {
    config.validate();
    const double ge_mhz = config.gamma_e_ghz_per_t * 1e3;
    const double gn_mhz = config.gamma_n_mhz_per_t;
    const double b0 = config.b0_tesla;

    Mat8 sz = electron_op(pauli1(3));
    Mat8 h = -ge_mhz * b0 * sz;
    h += -gn_mhz * b0 * (nucleus_op(1, pauli1(3)) + nucleus_op(2, pauli1(3)));
    for (int axis = 1; axis <= 3; ++axis) {
        Mat8 s = electron_op(pauli1(axis));
        h += config.a1_mhz * s * nucleus_op(1, pauli1(axis));
        h += config.a2_mhz * s * nucleus_op(2, pauli1(axis));
    }
    if (hermiticity_defect(h) > 1e-12)
        throw std::runtime_error("build_static_hamiltonian: Hermiticity defect");
    return h;
}

namespace {

// Index of the dominant product component of each eigenvector; throws if any
// eigenstate has no overlap^2 > 0.5.
std::array<int, 8> label_eigenstates(const Eigen::SelfAdjointEigenSolver<MatX>& es) {
    std::array<int, 8> label_of_state{};
    std::array<bool, 8> used{};
    for (int k = 0; k < 8; ++k) {
        int best = -1;
        double best_w = 0.0;
        for (int b = 0; b < 8; ++b) {
            double w = std::norm(es.eigenvectors()(b, k));
            if (w > best_w) {
                best_w = w;
                best = b;
            }
        }
        if (best_w <= 0.5)
            throw std::runtime_error(
                "transition_frequencies: eigenstate " + std::to_string(k) +
                " has no dominant product component (max overlap^2 = " +
                std::to_string(best_w) + ")");
        if (used[best])
            throw std::runtime_error("transition_frequencies: two eigenstates share label " +
                                     std::to_string(best));
        used[best] = true;
        label_of_state[k] = best;
    }
    return label_of_state;
}

} // namespace

std::array<double, 8> sorted_level_energies(const Mat8& h) {
    Eigen::SelfAdjointEigenSolver<MatX> es{MatX(h)};
    auto labels = label_eigenstates(es);
    std::array<double, 8> by_label{};
    for (int k = 0; k < 8; ++k)
        by_label[labels[k]] = es.eigenvalues()(k);
    return by_label;
}

TransitionTable transition_frequencies(const Mat8& h) {
    if (hermiticity_defect(h) > 1e-10)
        throw std::invalid_argument("transition_frequencies: Hamiltonian not Hermitian");
    auto e = sorted_level_energies(h);

    auto idx = [](int q1, int q2, int el) { return 4 * q1 + 2 * q2 + el; };
    TransitionTable t{};
    // Electron flip with nuclei fixed. Reported as |E(e down) - E(e up)|.
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            t.esr_mhz[2 * q1 + q2] = std::abs(e[idx(q1, q2, 1)] - e[idx(q1, q2, 0)]);
    // Nuclear flips with electron fixed; spectator nucleus kept in "down"
    // (the state the circuits start from), where the residual dependence on
    // the spectator is second order in A/(gamma_e B0).
    t.nmr_mhz[0] = std::abs(e[idx(1, 1, 1)] - e[idx(0, 1, 1)]); // Q1 | e down
    t.nmr_mhz[1] = std::abs(e[idx(1, 1, 0)] - e[idx(0, 1, 0)]); // Q1 | e up
    t.nmr_mhz[2] = std::abs(e[idx(1, 1, 1)] - e[idx(1, 0, 1)]); // Q2 | e down
    t.nmr_mhz[3] = std::abs(e[idx(1, 1, 0)] - e[idx(1, 0, 0)]); // Q2 | e up
    return t;
}

std::pair<double, double> extract_hyperfine_from_esr(const std::array<double, 4>& esr_mhz) {
    for (double f : esr_mhz)
        if (!std::isfinite(f))
            throw std::invalid_argument("extract_hyperfine_from_esr: non-finite frequency");
    // Index = 2*q1 + q2 with 0 = up. A1 = avg over up-q1 rows minus avg over
    // down-q1 rows; A2 = nu_e|up,up - nu_e|up,down.
    double a1 = 0.5 * (esr_mhz[0] + esr_mhz[1]) - 0.5 * (esr_mhz[2] + esr_mhz[3]);
    double a2 = esr_mhz[0] - esr_mhz[1];
    return {a1, a2};
}

RamseyDetuning ramsey_detuning_estimate(double p_flip, double tau_s) {
    if (tau_s <= 0.0)
        throw std::invalid_argument("ramsey_detuning_estimate: tau must be positive");
    if (p_flip < 0.0 || p_flip > 1.0)
        throw std::invalid_argument("ramsey_detuning_estimate: p_flip outside [0, 1]");
    RamseyDetuning out;
    out.delta_f_hz = std::asin(2.0 * p_flip - 1.0) / (kTwoPi * tau_s);
    out.outside_validity = std::abs(out.delta_f_hz * tau_s) >= 0.25;
    return out;
}

} // namespace spintomo
