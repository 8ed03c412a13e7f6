#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spintomo/fitting.hpp"
#include "spintomo/rng.hpp"

#include <cmath>

using namespace spintomo;

namespace {
constexpr double kTwoPi = 6.283185307179586;
}

TEST_CASE("noiseless decaying sinusoid recovers parameters to 1 percent") {
    // Times in ms: 5 kHz detuning, 1 ms Gaussian decay.
    const double c0 = 0.5, c1 = 0.4, f = 5.0, phi = 0.6, t2 = 1.0;
    std::vector<double> ts, ps;
    for (int i = 0; i < 80; ++i) {
        double t = 2.5 * i / 80.0;
        ts.push_back(t);
        ps.push_back(c0 + c1 * std::cos(kTwoPi * f * t + phi) * std::exp(-(t / t2) * (t / t2)));
    }
    auto fit = fit_decaying_sinusoid(ts, ps);
    CHECK(fit.converged);
    CHECK(fit.c0 == doctest::Approx(c0).epsilon(0.01));
    CHECK(fit.c1 == doctest::Approx(c1).epsilon(0.01));
    CHECK(fit.omega == doctest::Approx(kTwoPi * f).epsilon(0.01));
    CHECK(fit.t2 == doctest::Approx(t2).epsilon(0.01));
    CHECK(std::abs(std::remainder(fit.phi - phi, kTwoPi)) < 0.02);
    CHECK(fit.t2_identifiable);
}

TEST_CASE("zero-contrast data flags T2 as unidentifiable") {
    std::vector<double> ts, ps;
    Rng rng(4);
    for (int i = 0; i < 40; ++i) {
        ts.push_back(i * 0.05);
        ps.push_back(0.5 + 2e-4 * (rng.uniform() - 0.5));
    }
    auto fit = fit_decaying_sinusoid(ts, ps);
    CHECK(!fit.t2_identifiable);
}

TEST_CASE("echo-style phase ramp at 3.5 kHz is recovered") {
    // One oscillation period per (3.5 kHz)^-1; time in ms.
    const double f = 3.5, t2 = 0.8;
    std::vector<double> ts, ps;
    for (int i = 0; i < 60; ++i) {
        double t = 1.6 * i / 60.0;
        ts.push_back(t);
        ps.push_back(0.5 + 0.45 * std::cos(kTwoPi * f * t) *
                               std::exp(-std::pow(t / t2, 2.0)));
    }
    auto fit = fit_decaying_sinusoid(ts, ps);
    CHECK(fit.omega / kTwoPi == doctest::Approx(3.5).epsilon(0.01));
}

TEST_CASE("too few samples rejected") {
    std::vector<double> t = {0, 1, 2}, p = {1, 0, 1};
    CHECK_THROWS_AS(fit_decaying_sinusoid(t, p), std::invalid_argument);
}

TEST_CASE("rb decay fit on an exact exponential") {
    std::vector<double> depths, surv;
    for (double m : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        depths.push_back(m);
        surv.push_back(0.75 * std::pow(0.9, m) + 0.25);
    }
    auto fit = fit_rb_decay(depths, surv);
    CHECK(fit.r == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(fit.a == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(fit.b == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("zero-noise rb data fits r = 0") {
    std::vector<double> depths = {1, 2, 4, 8, 16}, surv(5, 1.0);
    auto fit = fit_rb_decay(depths, surv);
    CHECK(std::abs(fit.r) < 1e-9);
}
