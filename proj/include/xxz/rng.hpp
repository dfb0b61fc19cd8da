// rng.hpp - counter-based random streams with portable output.
//
// Every Monte-Carlo consumer derives an independent stream from
// (seed, stream_index), so results do not depend on how samples are
// distributed over workers. All floating-point output is built from
// integer arithmetic plus IEEE doubles only; std::*_distribution is
// avoided because its output is implementation-defined.
#pragma once

#include <cmath>
#include <cstdint>

namespace xxz {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    Rng() : state_(0x853c49e6748fea9bULL) {}
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Stream derived from a root seed and a task index; distinct indices
    // give statistically independent streams.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        s = index ^ 0xda3e39cb94b95bdbULL;
        std::uint64_t b = splitmix64(s);
        s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
        return Rng(splitmix64(s));
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0,1], safe as a log() argument.
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    // Box-Muller; one value per call, the twin is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform_pos();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // rejection-free modulo is fine here; n is tiny compared to 2^64
        return next_u64() % n;
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace xxz
