#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace segrescope::rng {

// splitmix64; used to derive independent sub-streams from one user seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Deterministic sub-seed for stream `stream` of a base seed. Restarts and
// trials each get their own stream so serial and parallel runs agree.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream + 1));
}

// Gaussian sampler with a pinned algorithm (Box-Muller over mt19937_64),
// so identical seeds give bit-identical draws on every platform.
class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : eng_(seed) {}

    // One draw from the standard complex Gaussian: re and im i.i.d. N(0,1).
    std::complex<double> next_complex() {
        const double u1 = uniform_open_closed();
        const double u2 = uniform_half_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * pi_ * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    double next() { return next_complex().real(); }

    // Uniform in [0,1).
    double uniform_half_open() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0,1]; safe as a log() argument.
    double uniform_open_closed() { return 1.0 - uniform_half_open(); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free modulo is biased; n here is tiny (row/pair picks),
        // so draw 64 bits and reject the tail to keep exact uniformity.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % n;
    }

private:
    static constexpr double pi_ = 3.141592653589793238462643383279502884;
    std::mt19937_64 eng_;
};

} // namespace segrescope::rng
