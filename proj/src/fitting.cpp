#include "spintomo/fitting.hpp"

#include "spintomo/optimize.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace spintomo {

namespace {

// Linear solve for (c0, a, b) in c0 + a cos(w t) env + b sin(w t) env.
struct LinearPieces {
    double c0, a, b, rss;
};

LinearPieces solve_linear(const std::vector<double>& t, const std::vector<double>& p,
                          double omega, double t2, double exponent) {
    const int n = static_cast<int>(t.size());
    Eigen::MatrixXd m(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        double env = t2 > 0 ? std::exp(-std::pow(t[i] / t2, exponent)) : 1.0;
        m(i, 0) = 1.0;
        m(i, 1) = std::cos(omega * t[i]) * env;
        m(i, 2) = std::sin(omega * t[i]) * env;
        y(i) = p[i];
    }
    Eigen::Vector3d sol = (m.transpose() * m + 1e-12 * Eigen::Matrix3d::Identity())
                              .ldlt()
                              .solve(m.transpose() * y);
    double rss = (m * sol - y).squaredNorm();
    return {sol(0), sol(1), sol(2), rss};
}

} // namespace

DecayingSinusoidFit fit_decaying_sinusoid(const std::vector<double>& t,
                                          const std::vector<double>& p,
                                          double exponent) {
    if (t.size() != p.size() || t.size() < 6)
        throw std::invalid_argument("fit_decaying_sinusoid: need at least 6 samples");

    double t_min = t[0], t_max = t[0], dt_min = 1e300;
    for (size_t i = 0; i < t.size(); ++i) {
        t_min = std::min(t_min, t[i]);
        t_max = std::max(t_max, t[i]);
    }
    for (size_t i = 1; i < t.size(); ++i)
        dt_min = std::min(dt_min, std::abs(t[i] - t[i - 1]));
    double span = std::max(t_max - t_min, 1e-300);

    // Periodogram-style scan over frequency and a coarse decay grid.
    double best_rss = 1e300;
    double best_w = 0.0, best_t2 = span;
    const double w_max = M_PI / std::max(dt_min, 1e-300);
    const int w_steps = 800;
    for (double t2 : {1e9 * span, 3.0 * span, span, span / 3.0, span / 10.0}) {
        for (int k = 1; k <= w_steps; ++k) {
            double w = w_max * k / w_steps;
            auto lin = solve_linear(t, p, w, t2, exponent);
            if (lin.rss < best_rss) {
                best_rss = lin.rss;
                best_w = w;
                best_t2 = t2;
            }
        }
    }

    auto start_lin = solve_linear(t, p, best_w, best_t2, exponent);
    Eigen::VectorXd x0(5);
    x0 << start_lin.c0, start_lin.a, start_lin.b, best_w, std::min(best_t2, 30.0 * span);

    auto residuals = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd r(t.size());
        for (size_t i = 0; i < t.size(); ++i) {
            double env = std::exp(-std::pow(std::abs(t[i] / x(4)), exponent));
            r(i) = x(0) + (x(1) * std::cos(x(3) * t[i]) + x(2) * std::sin(x(3) * t[i])) * env -
                   p[i];
        }
        return r;
    };
    LmResult lm = levenberg_marquardt(residuals, x0);

    DecayingSinusoidFit fit;
    fit.c0 = lm.x(0);
    fit.c1 = std::hypot(lm.x(1), lm.x(2));
    fit.omega = std::abs(lm.x(3));
    // c1 cos(w t + phi) = a cos + b sin -> phi = atan2(-b, a); keep c1 >= 0.
    fit.phi = std::atan2(-lm.x(2), lm.x(1));
    if (lm.x(3) < 0) fit.phi = -fit.phi; // frequency sign folded into phase
    fit.t2 = std::abs(lm.x(4));
    fit.rms_residual = std::sqrt(lm.chi2 / static_cast<double>(t.size()));
    fit.converged = lm.converged;
    fit.t2_identifiable = fit.c1 > 5.0 * (fit.rms_residual + 1e-12);
    return fit;
}

RbDecayFit fit_rb_decay(const std::vector<double>& depths,
                        const std::vector<double>& survival) {
    if (depths.size() != survival.size() || depths.size() < 3)
        throw std::invalid_argument("fit_rb_decay: need at least 3 depths");

    const int n = static_cast<int>(depths.size());
    auto linear_ab = [&](double r, double& a, double& b, double& rss) {
        Eigen::MatrixXd m(n, 2);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            m(i, 0) = std::pow(1.0 - r, depths[i]);
            m(i, 1) = 1.0;
            y(i) = survival[i];
        }
        Eigen::Vector2d sol = (m.transpose() * m + 1e-14 * Eigen::Matrix2d::Identity())
                                  .ldlt()
                                  .solve(m.transpose() * y);
        a = sol(0);
        b = sol(1);
        rss = (m * sol - y).squaredNorm();
    };

    double best_r = 0.0, best_rss = 1e300;
    for (int k = 0; k < 2000; ++k) {
        double r = k / 2000.0;
        double a, b, rss;
        linear_ab(r, a, b, rss);
        if (rss < best_rss) {
            best_rss = rss;
            best_r = r;
        }
    }

    auto residuals = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd res(n);
        for (int i = 0; i < n; ++i)
            res(i) = x(1) * std::pow(std::clamp(1.0 - x(0), 1e-12, 1.0), depths[i]) + x(2) -
                     survival[i];
        return res;
    };
    double a0, b0, rss0;
    linear_ab(best_r, a0, b0, rss0);
    Eigen::VectorXd x0(3);
    x0 << best_r, a0, b0;
    LmResult lm = levenberg_marquardt(residuals, x0);

    RbDecayFit fit;
    fit.r = lm.x(0);
    fit.a = lm.x(1);
    fit.b = lm.x(2);
    fit.rms_residual = std::sqrt(lm.chi2 / n);
    fit.converged = lm.converged;
    return fit;
}

} // namespace spintomo
