#pragma once

#include <cstdint>
#include <cstddef>
#include <cmath>
#include <vector>

namespace atomforge {

// SplitMix64 generator (Steele, Lea, Flood 2014). All stochastic choices in
// the library go through this class so that a seed fully determines the
// output, independent of platform and standard-library version.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n) without modulo bias.
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t threshold = -n % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Standard normal via Box-Muller on fixed draws.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    // Fisher-Yates shuffle with this generator.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Deterministic per-sample seed derivation: mix the master seed with the
// sample index through one SplitMix64 step. Recorded in outputs so a failing
// sample can be replayed in isolation.
inline std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t index) {
    Rng rng(master_seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
    return rng.next_u64();
}

} // namespace atomforge
