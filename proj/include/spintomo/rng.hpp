#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace spintomo {

// xoshiro256** seeded via splitmix64. All sampling paths are explicit so that
// identical seeds give identical draws on any platform.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    uint64_t next_u64() {
        auto rotl = [](uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        uint64_t result = rotl(state_[1] * 5, 7) * 9;
        uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n) {
        uint64_t limit = (~uint64_t{0}) - (~uint64_t{0}) % n;
        uint64_t v;
        do { v = next_u64(); } while (v >= limit);
        return v % n;
    }

    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1, u2, s;
        do {
            u1 = 2.0 * uniform() - 1.0;
            u2 = 2.0 * uniform() - 1.0;
            s = u1 * u1 + u2 * u2;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = u2 * f;
        have_cached_ = true;
        return u1 * f;
    }

    // Multinomial counts by per-shot inverse CDF; probs need not be normalized.
    std::vector<long> multinomial(long shots, const std::vector<double>& probs) {
        std::vector<long> counts(probs.size(), 0);
        double total = 0.0;
        for (double p : probs) total += p;
        for (long s = 0; s < shots; ++s) {
            double u = uniform() * total;
            double acc = 0.0;
            size_t k = 0;
            for (; k + 1 < probs.size(); ++k) {
                acc += probs[k];
                if (u < acc) break;
            }
            ++counts[k];
        }
        return counts;
    }

    // Independent child stream (for per-circuit seeding).
    Rng spawn(uint64_t salt) {
        return Rng(next_u64() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x853c49e6748fea9bULL));
    }

private:
    uint64_t state_[4];
    bool have_cached_ = false;
    double cached_ = 0.0;
};

} // namespace spintomo
