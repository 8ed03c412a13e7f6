#pragma once

#include "spintomo/noise.hpp"

// Shared test fixtures: SPAM at the scale the device reports, used by the
// Bell/GHZ pipelines and the acceptance suite.
namespace spintomo::fixtures {

inline Eigen::Matrix4d readout_confusion() {
    Eigen::Matrix4d c;
    c << 0.9925, 0.0030, 0.0030, 0.0015,
         0.0060, 0.9790, 0.0030, 0.0120,
         0.0070, 0.0030, 0.9780, 0.0120,
         0.0020, 0.0090, 0.0090, 0.9800;
    return c;
}

inline NoiseModel spam_only_noise() {
    NoiseModel n;
    n.confusion = readout_confusion();
    n.init_populations << 0.975, 0.010, 0.010, 0.005;
    return n;
}

} // namespace spintomo::fixtures
