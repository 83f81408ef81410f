#pragma once

#include <cmath>
#include <cstdint>

namespace iesim {

// splitmix64 (Steele/Lea/Flood). Used for seed derivation only.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ (Blackman/Vigna 2019), seeded through splitmix64 as the
// authors recommend. Fully specified here so runs reproduce across
// compilers and platforms, unlike std::normal_distribution.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1) with 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Standard normal deviates via Box-Muller; the second member of each pair
// is cached so consecutive calls consume uniforms at a fixed rate.
class NormalSampler {
public:
    explicit NormalSampler(Xoshiro256pp& rng) : rng_(rng) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - rng_.uniform01();  // (0,1], keeps log finite
        const double u2 = rng_.uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

private:
    Xoshiro256pp& rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace iesim
