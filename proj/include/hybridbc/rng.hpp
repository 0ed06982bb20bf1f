#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hybridbc {

// Deterministic random stream. The generator (mt19937_64) and both variate
// algorithms below are pinned bit-for-bit, so a (seed, trial) pair yields the
// same sequence on every run and every thread assignment.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    // Independent stream for one Monte Carlo trial: the trial index is mixed
    // into the seed with splitmix64 so neighboring trials get well-separated
    // generator states.
    static RngStream for_trial(std::uint64_t seed, std::uint64_t trial) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return RngStream(z);
    }

    // Uniform on [0, 1), 53-bit mantissa.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [-half_width, half_width).
    double uniform_symmetric(double half_width) {
        return (2.0 * uniform01() - 1.0) * half_width;
    }

    // Standard normal via the Marsaglia polar method; the spare deviate of
    // each accepted pair is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    double gaussian(double stddev) { return stddev * gaussian(); }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace hybridbc
