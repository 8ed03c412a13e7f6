#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "spintomo/pauli.hpp"
#include "spintomo/rng.hpp"
#include "spintomo/tomography.hpp"

#include <algorithm>
#include <cmath>

using namespace spintomo;

namespace {

// Exact-probability counts for a given nuclear state across the 9 settings.
std::vector<TomographySetting> settings_from_state(const Mat4& rho, double shots) {
    auto settings = standard_tomography_settings();
    for (auto& s : settings) {
        Mat4 u = pre_rotation_unitary(s.pre_q1, s.pre_q2);
        Mat4 rotated = u * rho * u.adjoint();
        for (int j = 0; j < 4; ++j) s.counts[j] = std::real(rotated(j, j)) * shots;
        s.shots = shots;
    }
    return settings;
}

std::vector<TomographySetting> sampled_settings(const Mat4& rho, long shots, uint64_t seed) {
    auto settings = standard_tomography_settings();
    Rng rng(seed);
    for (auto& s : settings) {
        Mat4 u = pre_rotation_unitary(s.pre_q1, s.pre_q2);
        Mat4 rotated = u * rho * u.adjoint();
        std::vector<double> p(4);
        for (int j = 0; j < 4; ++j) p[j] = std::max(0.0, std::real(rotated(j, j)));
        auto counts = rng.multinomial(shots, p);
        for (int j = 0; j < 4; ++j) s.counts[j] = static_cast<double>(counts[j]);
        s.shots = static_cast<double>(shots);
    }
    return settings;
}

double trace_distance(const Mat4& a, const Mat4& b) {
    Eigen::SelfAdjointEigenSolver<MatX> es{MatX(a - b)};
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

} // namespace

TEST_CASE("exact Phi+ counts reconstruct with fidelity above 0.9999") {
    Vec4 phi = bell_state(0);
    Mat4 rho = phi * phi.adjoint();
    Mat4 est = mle_state_tomography(settings_from_state(rho, 1e6));
    CHECK(std::real((phi.adjoint() * est * phi)(0, 0)) >= 0.9999);

    // Physicality of the estimate.
    Eigen::SelfAdjointEigenSolver<MatX> es{MatX(est)};
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
    CHECK(std::real(est.trace()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("maximally mixed data reconstructs the identity") {
    Mat4 rho = 0.25 * Mat4::Identity();
    Mat4 est = mle_state_tomography(settings_from_state(rho, 1e6));
    CHECK((est - rho).lpNorm<Eigen::Infinity>() < 1e-3);
}

TEST_CASE("informationally incomplete settings are rejected with Pauli names") {
    // Drop every setting that uses Y90: Y components become invisible.
    auto all = standard_tomography_settings();
    std::vector<TomographySetting> partial;
    Vec4 phi = bell_state(0);
    Mat4 rho = phi * phi.adjoint();
    for (auto& s : settings_from_state(rho, 1000))
        if (s.pre_q1 != "Y90" && s.pre_q2 != "Y90") partial.push_back(s);
    bool threw = false;
    try {
        mle_state_tomography(partial);
    } catch (const std::invalid_argument& e) {
        threw = true;
        CHECK(std::string(e.what()).find("incomplete") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("MLE estimate converges to the truth as shots grow") {
    // Median trace distance over seeds must fall monotonically with shots.
    Vec4 psi = bell_state(2);
    Mat4 rho = 0.85 * psi * psi.adjoint() + 0.15 * 0.25 * Mat4::Identity();
    std::vector<double> medians;
    for (long shots : {1000L, 10000L, 100000L}) {
        std::vector<double> dists;
        for (uint64_t seed = 0; seed < 20; ++seed) {
            Mat4 est = mle_state_tomography(sampled_settings(rho, shots, 1000 + seed));
            dists.push_back(trace_distance(est, rho));
        }
        std::sort(dists.begin(), dists.end());
        medians.push_back(dists[dists.size() / 2]);
    }
    CHECK(medians[1] < medians[0]);
    CHECK(medians[2] < medians[1]);
}

TEST_CASE("concurrence of reference states") {
    for (int kind = 0; kind < 4; ++kind) {
        Vec4 b = bell_state(kind);
        CHECK(concurrence(Mat4(b * b.adjoint())) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(concurrence(Mat4(0.25 * Mat4::Identity())) == doctest::Approx(0.0));
    // Werner state at p = 1/2: C = max(0, (3p - 1)/2) = 1/4.
    Vec4 phi = bell_state(0);
    Mat4 werner = 0.5 * phi * phi.adjoint() + 0.5 * 0.25 * Mat4::Identity();
    CHECK(concurrence(werner) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("noiseless Bell pipeline reaches fidelity and concurrence 0.999") {
    struct Case { int q1, q2, kind; };
    for (auto [q1, q2, kind] :
         {Case{1, 1, 0}, Case{0, 1, 1}, Case{1, 0, 2}, Case{0, 0, 3}}) {
        auto settings = simulate_bell_tomography(q1, q2, nullptr, -1, 1);
        Mat4 est = mle_state_tomography(settings);
        Vec4 target = bell_state(kind);
        CHECK(std::real((target.adjoint() * est * target)(0, 0)) >= 0.999);
        CHECK(concurrence(est) >= 0.999);
    }
}

TEST_CASE("SPAM-injected Bell fidelities land in the published band") {
    NoiseModel spam = fixtures::spam_only_noise();
    auto settings = simulate_bell_tomography(1, 1, &spam, -1, 2);
    Mat4 est = mle_state_tomography(settings);
    Vec4 target = bell_state(0);
    double f = std::real((target.adjoint() * est * target)(0, 0));
    CHECK(f >= 0.92);
    CHECK(f <= 0.97);
}

TEST_CASE("bootstrap resampling is deterministic and preserves shots") {
    Vec4 phi = bell_state(0);
    auto settings = sampled_settings(Mat4(phi * phi.adjoint()), 500, 3);
    auto a = resample_settings(settings, 11);
    auto b = resample_settings(settings, 11);
    for (size_t i = 0; i < a.size(); ++i) {
        double total = 0;
        for (int j = 0; j < 4; ++j) {
            CHECK(a[i].counts[j] == b[i].counts[j]);
            total += a[i].counts[j];
        }
        CHECK(total == doctest::Approx(settings[i].shots));
    }
}
