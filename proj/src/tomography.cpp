#include "spintomo/tomography.hpp"

#include "spintomo/optimize.hpp"
#include "spintomo/pauli.hpp"
#include "spintomo/rng.hpp"
#include "spintomo/sampling.hpp"

#include <cmath>

namespace spintomo {

namespace {
constexpr double kPi = 3.14159265358979323846;

Mat2 rot1(const std::string& label) {
    auto r = [](double theta, double phase) {
        double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
        Mat2 m;
        m << c, cx(0, -1) * std::exp(cx(0, -phase)) * s,
            cx(0, -1) * std::exp(cx(0, phase)) * s, c;
        return m;
    };
    if (label == "I") return Mat2::Identity();
    if (label == "X90") return r(kPi / 2, 0.0);
    if (label == "Y90") return r(kPi / 2, kPi / 2);
    throw std::invalid_argument("unknown pre-rotation label: " + label);
}

// Effective effects of one setting: E_sj = U^dag Proj_j U.
std::array<Mat4, 4> setting_effects(const TomographySetting& s) {
    Mat4 u = pre_rotation_unitary(s.pre_q1, s.pre_q2);
    std::array<Mat4, 4> e;
    for (int j = 0; j < 4; ++j) {
        Mat4 proj = Mat4::Zero();
        proj(j, j) = 1.0;
        e[j] = u.adjoint() * proj * u;
    }
    return e;
}

void check_informational_completeness(const std::vector<TomographySetting>& settings) {
    Eigen::MatrixXd frame(static_cast<int>(settings.size()) * 4, 16);
    int row = 0;
    for (const auto& s : settings)
        for (const auto& e : setting_effects(s)) frame.row(row++) = effect_to_pauli_vec(e);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(frame, Eigen::ComputeThinV);
    std::string missing;
    for (int k = 0; k < 16; ++k) {
        if (svd.singularValues()(k) < 1e-9 * svd.singularValues()(0)) {
            // Report the dominant Pauli of each null direction.
            Eigen::VectorXd dir = svd.matrixV().col(k);
            int arg = 0;
            dir.cwiseAbs().maxCoeff(&arg);
            missing += (missing.empty() ? "" : ", ") + pauli2_label(arg);
        }
    }
    if (!missing.empty())
        throw std::invalid_argument(
            "mle_state_tomography: settings are informationally incomplete; "
            "unconstrained Pauli components: " + missing);
}

Mat4 params_to_t(const Eigen::VectorXd& x) {
    Mat4 t = Mat4::Zero();
    int k = 0;
    for (int i = 0; i < 4; ++i) t(i, i) = x(k++);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) { // upper triangle, complex
            t(i, j) = cx(x(k), x(k + 1));
            k += 2;
        }
    return t;
}

Eigen::VectorXd t_to_params(const Mat4& t) {
    Eigen::VectorXd x(16);
    int k = 0;
    for (int i = 0; i < 4; ++i) x(k++) = std::real(t(i, i));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            x(k++) = std::real(t(i, j));
            x(k++) = std::imag(t(i, j));
        }
    return x;
}

Mat4 linear_inversion_start(const std::vector<TomographySetting>& settings) {
    // Least squares for the 15 traceless Pauli components.
    Eigen::MatrixXd a(static_cast<int>(settings.size()) * 4, 15);
    Eigen::VectorXd b(static_cast<int>(settings.size()) * 4);
    int row = 0;
    for (const auto& s : settings) {
        auto effects = setting_effects(s);
        for (int j = 0; j < 4; ++j) {
            RVec16 e = effect_to_pauli_vec(effects[j]);
            double freq = s.shots > 0 ? s.counts[j] / s.shots : 0.25;
            a.row(row) = e.tail(15);
            b(row) = freq - e(0) * 0.5;
            ++row;
        }
    }
    Eigen::VectorXd sol = a.colPivHouseholderQr().solve(b);
    RVec16 svec;
    svec(0) = 0.5;
    svec.tail(15) = sol;
    Mat4 rho = pauli_vec_to_state(svec);

    // Project to the physical cone and take a triangular factor.
    Eigen::SelfAdjointEigenSolver<MatX> es{MatX(0.5 * (rho + rho.adjoint()))};
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(1e-6);
    lam /= lam.sum();
    MatX phys = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
    Eigen::LLT<MatX> llt(phys + 1e-10 * MatX::Identity(4, 4));
    return Mat4(MatX(llt.matrixL()).adjoint());
}

} // namespace

std::vector<TomographySetting> standard_tomography_settings() {
    std::vector<TomographySetting> out;
    for (const char* a : {"I", "X90", "Y90"})
        for (const char* b : {"I", "X90", "Y90"}) {
            TomographySetting s;
            s.pre_q1 = a;
            s.pre_q2 = b;
            out.push_back(s);
        }
    return out;
}

Mat4 pre_rotation_unitary(const std::string& q1, const std::string& q2) {
    return Mat4(kron(rot1(q1), rot1(q2)));
}

Mat4 mle_state_tomography(const std::vector<TomographySetting>& settings,
                          const MleOptions& opts) {
    for (const auto& s : settings) {
        double total = s.counts[0] + s.counts[1] + s.counts[2] + s.counts[3];
        if (std::abs(total - s.shots) > 1e-6 * std::max(1.0, s.shots))
            throw std::invalid_argument("mle_state_tomography: counts do not sum to shots");
    }
    check_informational_completeness(settings);

    // Cache effects once.
    std::vector<std::array<Mat4, 4>> effects;
    effects.reserve(settings.size());
    for (const auto& s : settings) effects.push_back(setting_effects(s));

    double total_counts = 0.0;
    for (const auto& s : settings) total_counts += s.shots;

    auto fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
        Mat4 t = params_to_t(x);
        Mat4 gram = t.adjoint() * t;
        double norm = std::real(gram.trace());
        double neg_logl = 0.0;
        Mat4 gsum = Mat4::Zero(); // sum n_sj / q_sj * (T E_sj)
        for (size_t i = 0; i < settings.size(); ++i) {
            for (int j = 0; j < 4; ++j) {
                double n = settings[i].counts[j];
                if (n <= 0.0) continue;
                double q = std::max(std::real((effects[i][j] * gram).trace()), 1e-14 * norm);
                neg_logl -= n * (std::log(q) - std::log(norm));
                gsum += (n / q) * (t * effects[i][j]);
            }
        }
        Mat4 gt = gsum - (total_counts / norm) * t; // d logL / d T*
        Eigen::VectorXd glin = t_to_params(Mat4((2.0 * gt)));
        // Diagonal params are real: derivative is 2 Re((..)_ii), already taken
        // by t_to_params on the real part. Off-diagonals carry re/im parts.
        grad = -glin;
        return neg_logl;
    };

    LbfgsOptions lopts;
    lopts.max_iterations = opts.max_iterations;
    lopts.rel_f_tol = opts.rel_tol * 1e-1;
    lopts.grad_tol = 1e-9 * std::max(1.0, total_counts);
    LbfgsResult res = lbfgs_minimize(fg, t_to_params(linear_inversion_start(settings)), lopts);

    Mat4 t = params_to_t(res.x);
    Mat4 rho = t.adjoint() * t;
    rho /= std::real(rho.trace());
    return rho;
}

double concurrence(const Mat4& rho) {
    Mat4 yy = Mat4(kron(pauli1(2), pauli1(2)));
    Mat4 spun = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<MatX> es{MatX(spun)};
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k)
        lam[k] = std::sqrt(std::max(0.0, std::real(es.eigenvalues()(k))));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

Vec4 bell_state(int kind) {
    Vec4 v = Vec4::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case 0: v(0) = r; v(3) = r; break;
        case 1: v(0) = r; v(3) = -r; break;
        case 2: v(1) = r; v(2) = r; break;
        case 3: v(1) = r; v(2) = -r; break;
        default: throw std::invalid_argument("bell_state: kind must be 0..3");
    }
    return v;
}

std::vector<TomographySetting> simulate_bell_tomography(int q1_down, int q2_down,
                                                        const NoiseModel* noise,
                                                        double shots, uint64_t seed) {
    Mat8 rho0 = noise ? noisy_initial_state(q1_down, q2_down, *noise)
                      : Mat8(basis_ket8(q1_down, q2_down, 1) *
                             basis_ket8(q1_down, q2_down, 1).adjoint());
    CircuitSimulator sim(noise);
    Mat8 rho_bell = sim.run(rho0, bell_circuit());

    NuclearPovm povm = noise ? NuclearPovm::with_confusion(noise->confusion)
                             : NuclearPovm::ideal();

    auto settings = standard_tomography_settings();
    Rng master(seed);
    for (auto& s : settings) {
        Circuit pre;
        if (s.pre_q1 != "I") pre.append(GateLabel::named(s.pre_q1 + "_Q1"));
        if (s.pre_q2 != "I") pre.append(GateLabel::named(s.pre_q2 + "_Q2"));
        Mat8 rho_meas = sim.run(rho_bell, pre);
        auto probs = outcome_probabilities(rho_meas, povm);
        if (shots > 0) {
            Rng child = master.spawn(0);
            auto counts = child.multinomial(static_cast<long>(shots),
                                            {probs[0], probs[1], probs[2], probs[3]});
            for (int j = 0; j < 4; ++j) s.counts[j] = static_cast<double>(counts[j]);
            s.shots = shots;
        } else {
            for (int j = 0; j < 4; ++j) s.counts[j] = probs[j] * 1e6;
            s.shots = 1e6;
        }
    }
    return settings;
}

std::vector<TomographySetting> resample_settings(const std::vector<TomographySetting>& settings,
                                                 uint64_t seed) {
    Rng rng(seed);
    auto out = settings;
    for (auto& s : out) {
        long shots = static_cast<long>(std::llround(s.shots));
        std::vector<double> p(4);
        for (int j = 0; j < 4; ++j) p[j] = s.counts[j] / s.shots;
        auto counts = rng.multinomial(shots, p);
        for (int j = 0; j < 4; ++j) s.counts[j] = static_cast<double>(counts[j]);
        s.shots = static_cast<double>(shots);
    }
    return out;
}

} // namespace spintomo
