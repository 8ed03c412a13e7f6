#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spintomo/gates.hpp"
#include "spintomo/ghz.hpp"
#include "spintomo/rng.hpp"

#include <cmath>

using namespace spintomo;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Executor that prepares the GHZ state, applies a state transform, then runs
// the phase-shifted reversal.
GhzExecutor executor_with_transform(const std::function<Mat8(const Mat8&)>& transform) {
    return [transform](double t1, double t2, double t3) {
        Mat8 rho = basis_ket8(1, 1, 1) * basis_ket8(1, 1, 1).adjoint();
        rho = apply_circuit(rho, ghz_forward_circuit());
        rho = transform(rho);
        rho = apply_circuit(rho, ghz_reverse_circuit(t1, t2, t3));
        return std::real(rho(7, 7));
    };
}
} // namespace

TEST_CASE("ideal GHZ scan: unit return at zero angles, unit peak-to-peak") {
    auto points = run_parity_scan(make_ghz_executor(nullptr), 100);
    CHECK(points[0].p_return == doctest::Approx(1.0).epsilon(1e-9));
    // Schedule constraint theta1 = 3 theta2 = 9 theta3.
    for (const auto& pt : points) {
        CHECK(pt.thetas[0] == doctest::Approx(3 * pt.thetas[1]));
        CHECK(pt.thetas[0] == doctest::Approx(9 * pt.thetas[2]));
    }
    auto fit = fit_parity_oscillation(points);
    CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(fit.phi) < 1e-3);
    CHECK(std::abs(fit.rho18) == doctest::Approx(0.5).epsilon(1e-3));
    auto fid = ghz_fidelity(0.5, 0.5, fit.rho18);
    CHECK(fid.value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(!fid.clipped);
}

TEST_CASE("dephasing scales the fitted coherence and the GHZ fidelity") {
    const double scale = 0.85; // |rho18| 0.5 -> 0.425
    auto executor = executor_with_transform([&](const Mat8& rho) {
        Mat8 out = rho;
        out(0, 7) *= scale;
        out(7, 0) *= scale;
        return out;
    });
    auto points = run_parity_scan(executor, 100);
    auto fit = fit_parity_oscillation(points);
    CHECK(std::abs(fit.rho18) == doctest::Approx(0.425).epsilon(0.005 / 0.425));
    auto fid = ghz_fidelity(0.5, 0.5, fit.rho18);
    CHECK(fid.value == doctest::Approx(0.925).epsilon(0.005 / 0.925));
}

TEST_CASE("fully dephased GHZ has no oscillation") {
    auto executor = executor_with_transform([](const Mat8& rho) {
        Mat8 out = rho;
        out(0, 7) = 0.0;
        out(7, 0) = 0.0;
        return out;
    });
    auto fit = fit_parity_oscillation(run_parity_scan(executor, 100));
    CHECK(fit.amplitude < 1e-9);
}

TEST_CASE("electron Z phase shifts the fitted oscillation phase") {
    for (double theta : {0.4, 1.1, -0.7}) {
        auto executor = executor_with_transform([&](const Mat8& rho) {
            Mat8 u = native_gate_unitary(GateLabel::z_phase(0, theta));
            return Mat8(u * rho * u.adjoint());
        });
        auto fit = fit_parity_oscillation(run_parity_scan(executor, 100));
        CHECK(std::abs(fit.phi - theta) < 1e-6);
    }
}

TEST_CASE("scan amplitude equals 2 |rho18| for diag-corner states") {
    Rng rng(9);
    for (int trial = 0; trial < 6; ++trial) {
        double p11 = 0.3 + 0.2 * rng.uniform();
        double p88 = 0.3 + 0.2 * rng.uniform();
        double mid = (1.0 - p11 - p88) / 6.0;
        double coh = std::sqrt(p11 * p88) * rng.uniform();
        double phase = 2 * kPi * rng.uniform() - kPi;
        auto executor = [&](double t1, double t2, double t3) {
            Mat8 rho = Mat8::Zero();
            rho(0, 0) = p11;
            rho(7, 7) = p88;
            for (int b = 1; b < 7; ++b) rho(b, b) = mid;
            rho(0, 7) = coh * std::exp(cx(0, -phase));
            rho(7, 0) = std::conj(rho(0, 7));
            rho = apply_circuit(rho, ghz_reverse_circuit(t1, t2, t3));
            return std::real(rho(7, 7));
        };
        auto fit = fit_parity_oscillation(run_parity_scan(executor, 100));
        CHECK(fit.amplitude == doctest::Approx(2.0 * coh).epsilon(1e-6));
    }
}

TEST_CASE("ghz_fidelity formula, clipping and phase invariance") {
    CHECK(ghz_fidelity(0.5, 0.5, {0.5, 0.0}).value == doctest::Approx(1.0));
    CHECK(ghz_fidelity(0.5, 0.5, {0.0, 0.0}).value == doctest::Approx(0.5));
    for (double ph : {0.0, 0.9, 2.2})
        CHECK(ghz_fidelity(0.45, 0.45, std::polar(0.4, ph)).value ==
              doctest::Approx(0.85).epsilon(1e-12));
    auto bad = ghz_fidelity(0.1, 0.1, {0.4, 0.0});
    CHECK(bad.clipped);
    CHECK_THROWS_AS(ghz_fidelity(-0.1, 0.5, {0, 0}), std::invalid_argument);
}

TEST_CASE("scan shorter than one and a half periods is rejected") {
    CHECK_THROWS_AS(fit_parity_oscillation(run_parity_scan(make_ghz_executor(nullptr), 40)),
                    std::invalid_argument);
}
