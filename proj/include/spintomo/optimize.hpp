#pragma once

#include <Eigen/Dense>
#include <functional>

namespace spintomo {

struct LbfgsOptions {
    int max_iterations = 4000;
    int history = 16;
    double rel_f_tol = 1e-12;   // relative objective change for convergence
    double grad_tol = 1e-11;    // infinity-norm gradient for convergence
    int max_line_search = 40;
};

struct LbfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Minimizes f(x); fg returns f and writes the gradient. Deterministic.
LbfgsResult lbfgs_minimize(
    const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& fg,
    const Eigen::VectorXd& x0, const LbfgsOptions& opts = {});

struct LmOptions {
    int max_iterations = 300;
    double rel_tol = 1e-12;
    double initial_lambda = 1e-3;
};

struct LmResult {
    Eigen::VectorXd x;
    double chi2 = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Levenberg-Marquardt on residuals r(x); jacobian by forward differences.
LmResult levenberg_marquardt(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residuals,
    const Eigen::VectorXd& x0, const LmOptions& opts = {});

} // namespace spintomo
