// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstdint>

namespace taut {

/// Identifies one reproducible random stream: the pair (master seed,
/// replicate index) maps to a generator state that does not depend on
/// thread scheduling or call order.
struct SeedSpec {
    std::uint64_t master = 0;
    std::uint64_t replicate = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace detail

/// xoshiro256++ with state derived from a SeedSpec via splitmix64.
/// Distinct (master, replicate) pairs land in distinct splitmix64
/// sequences, so streams are independent for all practical purposes.
class Rng256 {
public:
    explicit Rng256(SeedSpec seed) {
        std::uint64_t sm = seed.master;
        // fold the replicate index into the seeding sequence
        sm ^= detail::rotl(seed.replicate + 0x510E527FADE682D1ULL, 23);
        sm += seed.replicate * 0x9E3779B97F4A7C15ULL;
        s_[0] = detail::splitmix64(sm);
        s_[1] = detail::splitmix64(sm);
        s_[2] = detail::splitmix64(sm);
        s_[3] = detail::splitmix64(sm);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    /// Uniform in (0,1); never returns 0 or 1.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t s_[4];
};

/// Standard normal draws via Box-Muller on a Rng256 stream.
/// Identical seeds give identical sequences in a given build.
class GaussianStream {
public:
    explicit GaussianStream(SeedSpec seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = rng_.next_uniform();
        const double u2 = rng_.next_uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

private:
    Rng256 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace taut
