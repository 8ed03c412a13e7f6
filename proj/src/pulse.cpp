#include "spintomo/pulse.hpp"

#include "spintomo/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spintomo {

namespace {

// Labeled eigendecomposition with a deterministic phase gauge: the dominant
// component of each eigenvector is made real positive.
void labeled_eigensystem(const Mat8& h, Mat8& vecs, std::array<double, 8>& vals) {
    Eigen::SelfAdjointEigenSolver<MatX> es{MatX(h)};
    std::array<bool, 8> used{};
    for (int k = 0; k < 8; ++k) {
        int best = 0;
        double best_w = -1.0;
        for (int b = 0; b < 8; ++b) {
            double w = std::norm(es.eigenvectors()(b, k));
            if (w > best_w) {
                best_w = w;
                best = b;
            }
        }
        if (best_w <= 0.5 || used[best])
            throw std::runtime_error("SpinFrame: ambiguous eigenstate labeling");
        used[best] = true;
        VecX v = es.eigenvectors().col(k);
        cx pivot = v(best);
        v *= std::abs(pivot) / pivot;
        vecs.col(best) = v;
        vals[best] = es.eigenvalues()(k);
    }
}

} // namespace

void PulseSpec::validate() const {
    if (!(duration_us >= 0.0))
        throw std::invalid_argument("PulseSpec: duration must be >= 0");
    if (!(rabi_frequency_mhz > 0.0))
        throw std::invalid_argument("PulseSpec: rabi frequency must be positive");
    if (!(target_frequency_mhz > 0.0))
        throw std::invalid_argument("PulseSpec: target frequency must be positive");
}

SpinFrame SpinFrame::build(const SpinSystemConfig& config) {
    SpinFrame f;
    Mat8 h = build_static_hamiltonian(config);
    labeled_eigensystem(h, f.eigvecs, f.energies_mhz);
    const double ge_mhz = config.gamma_e_ghz_per_t * 1e3;
    Mat8 drive = -ge_mhz * electron_op(pauli1(2));
    drive += -config.gamma_n_mhz_per_t *
             (nucleus_op(1, pauli1(2)) + nucleus_op(2, pauli1(2)));
    f.drive_unit = drive;
    return f;
}

std::vector<TransitionLine> drive_transitions(const SpinFrame& frame,
                                              double relative_element_floor) {
    Mat8 v_eig = frame.eigvecs.adjoint() * frame.drive_unit * frame.eigvecs;
    double vmax = 0.0;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) vmax = std::max(vmax, std::abs(v_eig(a, b)));

    std::vector<TransitionLine> lines;
    for (int a = 0; a < 8; ++a) {
        for (int b = a + 1; b < 8; ++b) {
            double el = std::abs(v_eig(a, b));
            if (el < relative_element_floor * vmax) continue;
            TransitionLine t;
            bool a_upper = frame.energies_mhz[a] > frame.energies_mhz[b];
            t.upper = a_upper ? a : b;
            t.lower = a_upper ? b : a;
            t.frequency_mhz = std::abs(frame.energies_mhz[a] - frame.energies_mhz[b]);
            t.element_mhz_per_t = el;
            lines.push_back(t);
        }
    }
    std::sort(lines.begin(), lines.end(),
              [](const auto& x, const auto& y) { return x.frequency_mhz < y.frequency_mhz; });
    return lines;
}

namespace {

// Exact two-level RWA block in the interaction picture. Basis (upper, lower);
// delta = transition frequency - drive frequency. The pulse phase sets the
// rotation axis with phase 0 = the x axis of rotation2(). In the drive frame
// H' = delta |u><u| + (rabi/2) sigma_phase; the frame factor returns the
// upper level's accumulated detuning phase.
Mat2 rwa_block(double delta, double rabi, double phase, double t_us) {
    Mat2 hdrv;
    hdrv << delta, 0.5 * rabi * std::exp(cx(0, -phase)),
            0.5 * rabi * std::exp(cx(0, phase)), 0.0;
    Eigen::SelfAdjointEigenSolver<Mat2> es(hdrv);
    Eigen::Vector2cd ph;
    for (int k = 0; k < 2; ++k)
        ph(k) = std::exp(cx(0, -kTwoPi * es.eigenvalues()(k) * t_us));
    Mat2 u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    Mat2 frame_return = Mat2::Identity();
    frame_return(0, 0) = std::exp(cx(0, kTwoPi * delta * t_us));
    return frame_return * u;
}

Mat8 rwa_propagator(const SpinFrame& frame, const PulseSpec& pulse,
                    const PulseOptions& options) {
    auto lines = drive_transitions(frame);
    if (lines.empty()) throw std::runtime_error("pulse_propagator: no driven transitions");

    // Calibrate B1 so the addressed line has the requested Rabi rate.
    const TransitionLine* target = nullptr;
    double best = 1e300;
    for (const auto& t : lines) {
        double d = std::abs(t.frequency_mhz - pulse.target_frequency_mhz);
        if (d < best) {
            best = d;
            target = &t;
        }
    }
    double b1_tesla = pulse.rabi_frequency_mhz / target->element_mhz_per_t;

    double window = options.resonance_window_mhz >= 0.0
                        ? options.resonance_window_mhz
                        : 5.0 * pulse.rabi_frequency_mhz;

    std::vector<const TransitionLine*> order;
    for (const auto& t : lines) order.push_back(&t);
    std::sort(order.begin(), order.end(), [&](const TransitionLine* x, const TransitionLine* y) {
        return std::abs(x->frequency_mhz - pulse.target_frequency_mhz) <
               std::abs(y->frequency_mhz - pulse.target_frequency_mhz);
    });

    Mat8 u_eig = Mat8::Identity();
    std::array<bool, 8> claimed{};
    std::array<double, 8> stark_phase{}; // accumulated first-order phases

    for (const TransitionLine* t : order) {
        double delta = t->frequency_mhz - pulse.target_frequency_mhz;
        double rabi = b1_tesla * t->element_mhz_per_t;
        bool in_window = std::abs(delta) <= window;
        if (in_window && !claimed[t->upper] && !claimed[t->lower]) {
            Mat2 blk = rwa_block(delta, rabi, pulse.phase_rad, pulse.duration_us);
            u_eig(t->upper, t->upper) = blk(0, 0);
            u_eig(t->upper, t->lower) = blk(0, 1);
            u_eig(t->lower, t->upper) = blk(1, 0);
            u_eig(t->lower, t->lower) = blk(1, 1);
            claimed[t->upper] = true;
            claimed[t->lower] = true;
        } else if (options.first_order_stark && std::abs(delta) > 1e-9) {
            // Level shifts of a far-detuned drive: upper moves by +r^2/(4 d),
            // lower by -r^2/(4 d) (matching the exact block as rabi -> 0).
            double shift = rabi * rabi / (4.0 * delta);
            stark_phase[t->upper] -= kTwoPi * shift * pulse.duration_us;
            stark_phase[t->lower] += kTwoPi * shift * pulse.duration_us;
        }
    }
    if (options.first_order_stark) {
        Mat8 ph = Mat8::Identity();
        for (int b = 0; b < 8; ++b)
            if (!claimed[b]) ph(b, b) = std::exp(cx(0, stark_phase[b]));
        u_eig = ph * u_eig;
    }

    return frame.eigvecs * u_eig * frame.eigvecs.adjoint();
}

// Pade(2,2) of exp(-i a); exactly unitary for Hermitian a up to solve roundoff.
Mat8 expm_small(const Mat8& a) {
    Mat8 x = cx(0, -1) * a;
    Mat8 x2 = x * x;
    Mat8 num = Mat8::Identity() + 0.5 * x + (1.0 / 12.0) * x2;
    Mat8 den = Mat8::Identity() - 0.5 * x + (1.0 / 12.0) * x2;
    return den.partialPivLu().solve(num);
}

// Nearest unitary (polar factor).
Mat8 reunitarize(const Mat8& u) {
    Eigen::JacobiSVD<MatX> svd(MatX(u), Eigen::ComputeThinU | Eigen::ComputeThinV);
    return Mat8(svd.matrixU() * svd.matrixV().adjoint());
}

Mat8 sliced_propagator(const SpinSystemConfig& config, const SpinFrame& frame,
                       const PulseSpec& pulse, const PulseOptions& options) {
    if (options.steps_per_period < 4)
        throw std::invalid_argument(
            "pulse_propagator: steps_per_period below the carrier Nyquist floor");

    auto lines = drive_transitions(frame);
    const TransitionLine* target = nullptr;
    double best = 1e300;
    for (const auto& t : lines) {
        double d = std::abs(t.frequency_mhz - pulse.target_frequency_mhz);
        if (d < best) {
            best = d;
            target = &t;
        }
    }
    double b1_tesla = pulse.rabi_frequency_mhz / target->element_mhz_per_t;

    Mat8 h0 = build_static_hamiltonian(config);
    Mat8 v = b1_tesla * frame.drive_unit;

    const double period = 1.0 / pulse.target_frequency_mhz;
    const double t_total = pulse.duration_us;
    long n_periods = static_cast<long>(std::floor(t_total / period + 1e-9));
    double remainder = t_total - n_periods * period;
    if (remainder < 0) remainder = 0;

    const long steps = options.steps_per_period;
    const double dt = period / steps;

    auto integrate = [&](double t0, double t1) {
        Mat8 u = Mat8::Identity();
        long n = std::max<long>(1, static_cast<long>(std::ceil((t1 - t0) / dt - 1e-12)));
        double h_step = (t1 - t0) / n;
        for (long k = 0; k < n; ++k) {
            double tm = t0 + (k + 0.5) * h_step;
            Mat8 h = h0 + std::sin(kTwoPi * pulse.target_frequency_mhz * tm +
                                   pulse.phase_rad) * v;
            u = expm_small((kTwoPi * h_step) * h) * u;
        }
        return u;
    };

    Mat8 u_lab = Mat8::Identity();
    if (n_periods > 0) {
        // The lab Hamiltonian is exactly carrier-periodic, so one finely
        // sliced period is computed and powered up. Truncation defects would
        // be amplified by the power, so the period propagator is projected
        // back onto the unitary group first.
        Mat8 u_period = reunitarize(integrate(0.0, period));
        Mat8 base = u_period;
        long n = n_periods;
        Mat8 acc = Mat8::Identity();
        while (n > 0) {
            if (n & 1) acc = base * acc;
            base = base * base;
            n >>= 1;
        }
        u_lab = acc;
    }
    if (remainder > 1e-15)
        u_lab = integrate(0.0, remainder) * u_lab; // H is carrier-periodic

    // Into the interaction picture of the static Hamiltonian.
    Mat8 back = evolution_operator(MatX(h0), -t_total);
    return back * u_lab;
}

} // namespace

Mat8 pulse_propagator(const SpinSystemConfig& config, const PulseSpec& pulse,
                      PulseMethod method, const PulseOptions& options) {
    pulse.validate();
    SpinFrame frame = SpinFrame::build(config);
    if (pulse.duration_us == 0.0) return Mat8::Identity();
    Mat8 u = (method == PulseMethod::rwa) ? rwa_propagator(frame, pulse, options)
                                          : sliced_propagator(config, frame, pulse, options);
    if (unitarity_defect(MatX(u)) > 1e-9)
        throw std::runtime_error("pulse_propagator: propagator lost unitarity");
    return u;
}

} // namespace spintomo
