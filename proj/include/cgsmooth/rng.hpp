#ifndef CGSMOOTH_RNG_HPP
#define CGSMOOTH_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

// Deterministic random number generation. Standard-library distributions are
// implementation-defined, so everything here is pinned: xoshiro256++ for the
// uniform stream (seeded through splitmix64) and the basic Box-Muller
// transform for Gaussians. Identical seeds give identical streams on every
// build of this repository.

namespace cgsmooth {

inline constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

/// splitmix64 finalizer; also used as the seed-mixing primitive.
inline constexpr std::uint64_t splitmix64_scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}
    constexpr std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_scramble(state_);
    }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and two coordinates
/// (e.g. sweep-cell indices). mix_seed(s,a,b) == mix_seed(s,a',b') only when
/// (a,b) == (a',b') for practical purposes.
inline constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = base;
    z = splitmix64_scramble(z + 0x9E3779B97F4A7C15ULL * (a + 1));
    z = splitmix64_scramble(z + 0x9E3779B97F4A7C15ULL * (b + 1));
    return z;
}

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : state_) word = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl64(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl64(state_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1]: top 53 bits, shifted away from zero so that
    /// log() in the Gaussian transform is always finite.
    double uniform_unit() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

private:
    std::array<std::uint64_t, 4> state_{};
};

/// Standard-normal sampler: Box-Muller on xoshiro256++ uniforms. The pair
/// (cos, sin) is consumed in order, so draws are reproducible one by one.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = rng_.uniform_unit();
        const double u2 = rng_.uniform_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    Xoshiro256pp rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace cgsmooth

#endif
