#include "spintomo/optimize.hpp"

#include <cmath>
#include <deque>

namespace spintomo {

LbfgsResult lbfgs_minimize(
    const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& fg,
    const Eigen::VectorXd& x0, const LbfgsOptions& opts) {
    using Eigen::VectorXd;

    LbfgsResult res;
    VectorXd x = x0;
    VectorXd g(x.size());
    double f = fg(x, g);

    std::deque<VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        res.iterations = iter + 1;
        if (g.lpNorm<Eigen::Infinity>() < opts.grad_tol) {
            res.converged = true;
            break;
        }

        // Two-loop recursion.
        VectorXd q = g;
        std::vector<double> alpha(s_hist.size());
        for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
            alpha[i] = rho_hist[i] * s_hist[i].dot(q);
            q -= alpha[i] * y_hist[i];
        }
        if (!s_hist.empty()) {
            double gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
            q *= gamma;
        }
        for (size_t i = 0; i < s_hist.size(); ++i) {
            double beta = rho_hist[i] * y_hist[i].dot(q);
            q += (alpha[i] - beta) * s_hist[i];
        }
        VectorXd dir = -q;
        double dg = dir.dot(g);
        if (dg >= 0.0) { // fall back to steepest descent
            dir = -g;
            dg = -g.squaredNorm();
        }

        // Backtracking Armijo line search.
        double step = 1.0;
        const double c1 = 1e-4;
        VectorXd x_new, g_new(x.size());
        double f_new = f;
        bool ok = false;
        for (int ls = 0; ls < opts.max_line_search; ++ls) {
            x_new = x + step * dir;
            f_new = fg(x_new, g_new);
            if (std::isfinite(f_new) && f_new <= f + c1 * step * dg) {
                ok = true;
                break;
            }
            step *= 0.5;
        }
        if (!ok) {
            res.converged = true; // no further progress possible
            break;
        }

        VectorXd s = x_new - x;
        VectorXd y = g_new - g;
        double sy = s.dot(y);
        if (sy > 1e-14 * s.norm() * y.norm()) {
            s_hist.push_back(s);
            y_hist.push_back(y);
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opts.history) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        double df = f - f_new;
        x = x_new;
        g = g_new;
        f = f_new;
        if (df <= opts.rel_f_tol * std::max(1.0, std::abs(f))) {
            res.converged = true;
            break;
        }
    }

    res.x = x;
    res.f = f;
    return res;
}

LmResult levenberg_marquardt(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residuals,
    const Eigen::VectorXd& x0, const LmOptions& opts) {
    using Eigen::MatrixXd;
    using Eigen::VectorXd;

    LmResult res;
    VectorXd x = x0;
    VectorXd r = residuals(x);
    double chi2 = r.squaredNorm();
    double lambda = opts.initial_lambda;
    const int n = static_cast<int>(x.size());

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        res.iterations = iter + 1;

        MatrixXd jac(r.size(), n);
        for (int j = 0; j < n; ++j) {
            double h = 1e-7 * std::max(1.0, std::abs(x(j)));
            VectorXd xp = x;
            xp(j) += h;
            jac.col(j) = (residuals(xp) - r) / h;
        }

        MatrixXd jtj = jac.transpose() * jac;
        VectorXd jtr = jac.transpose() * r;

        bool improved = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            MatrixXd a = jtj;
            for (int d = 0; d < n; ++d)
                a(d, d) += lambda * std::max(jtj(d, d), 1e-12);
            VectorXd delta = a.ldlt().solve(-jtr);
            VectorXd x_try = x + delta;
            VectorXd r_try = residuals(x_try);
            double chi2_try = r_try.squaredNorm();
            if (std::isfinite(chi2_try) && chi2_try < chi2) {
                double rel = (chi2 - chi2_try) / std::max(chi2, 1e-300);
                x = x_try;
                r = r_try;
                chi2 = chi2_try;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
                if (rel < opts.rel_tol) {
                    res.converged = true;
                    res.x = x;
                    res.chi2 = chi2;
                    return res;
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) {
            res.converged = true;
            break;
        }
    }

    res.x = x;
    res.chi2 = chi2;
    return res;
}

} // namespace spintomo
