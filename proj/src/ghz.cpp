#include "spintomo/ghz.hpp"

#include "spintomo/gates.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace spintomo {

GhzExecutor make_ghz_executor(const NoiseModel* noise) {
    auto sim = std::make_shared<CircuitSimulator>(noise);
    Mat8 rho0;
    if (noise)
        rho0 = noisy_initial_state(1, 1, *noise);
    else
        rho0 = basis_ket8(1, 1, 1) * basis_ket8(1, 1, 1).adjoint();
    return [sim, rho0](double t1, double t2, double t3) {
        Circuit c = ghz_forward_circuit();
        c.append(ghz_reverse_circuit(t1, t2, t3));
        Mat8 out = sim->run(rho0, c);
        return std::real(out(7, 7));
    };
}

std::vector<GhzScanPoint> run_parity_scan(const GhzExecutor& executor, int n_max) {
    std::vector<GhzScanPoint> points;
    points.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        GhzScanPoint pt;
        pt.n = n;
        double t1 = 9.0 * n / 125.0;
        pt.thetas = {t1, t1 / 3.0, t1 / 9.0};
        pt.p_return = executor(pt.thetas[0], pt.thetas[1], pt.thetas[2]);
        if (pt.p_return < -1e-9 || pt.p_return > 1.0 + 1e-9)
            throw std::runtime_error("run_parity_scan: return probability outside [0, 1]");
        points.push_back(pt);
    }
    return points;
}

ParityFit fit_parity_oscillation(const std::vector<GhzScanPoint>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_parity_oscillation: too few points");
    // The canonical N = 0..100 schedule spans 13*100/125 = 10.4 rad, about
    // 1.66 oscillation periods; require at least 1.5 for identifiability.
    double span = 0.0;
    for (const auto& pt : points)
        span = std::max(span, pt.thetas[0] + pt.thetas[1] + pt.thetas[2]);
    if (span < 1.5 * kTwoPi)
        throw std::invalid_argument(
            "fit_parity_oscillation: scan covers too few oscillation periods");

    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd m(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        double x = points[i].thetas[0] + points[i].thetas[1] + points[i].thetas[2];
        m(i, 0) = 1.0;
        m(i, 1) = std::cos(x);
        m(i, 2) = std::sin(x);
        y(i) = points[i].p_return;
    }
    Eigen::Vector3d sol = (m.transpose() * m).ldlt().solve(m.transpose() * y);

    ParityFit fit;
    fit.c0 = sol(0);
    double coeff = std::hypot(sol(1), sol(2));
    fit.amplitude = 2.0 * coeff;
    fit.phi = std::atan2(-sol(2), sol(1));
    fit.rho18 = 0.5 * fit.amplitude * std::exp(std::complex<double>(0, fit.phi));
    fit.rms_residual = std::sqrt((m * sol - y).squaredNorm() / n);
    return fit;
}

GhzFidelity ghz_fidelity(double rho11, double rho88, std::complex<double> rho18) {
    if (rho11 < 0 || rho11 > 1 || rho88 < 0 || rho88 > 1)
        throw std::invalid_argument("ghz_fidelity: populations outside [0, 1]");
    GhzFidelity out;
    double coh = std::abs(rho18);
    if (coh > std::sqrt(rho11 * rho88) + 1e-12) out.clipped = true;
    out.value = 0.5 * (rho11 + rho88) + coh;
    if (out.value > 1.0) {
        out.value = 1.0;
        out.clipped = true;
    }
    if (out.value < 0.0) out.value = 0.0;
    return out;
}

std::array<double, 8> ghz_populations(const Mat8& rho) {
    std::array<double, 8> p{};
    for (int b = 0; b < 8; ++b) p[b] = std::real(rho(b, b));
    return p;
}

} // namespace spintomo
