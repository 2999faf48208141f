#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace levylab {

// SplitMix64 finalizer. Used for seeding and for deriving substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

// Pure 64-bit hash of a (master, stream, replica) triple. Every parallel
// substream in the project is derived through this function, so results are
// reproducible bit-exact regardless of worker count or scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t replica) {
    std::uint64_t h = mix64(master + kGolden64);
    h = mix64(h ^ (stream * kGolden64 + 0x7F4A7C15ULL));
    h = mix64(h ^ (replica * kGolden64 + 0x4A7C159EULL));
    return h;
}

// xoshiro256++ seeded through SplitMix64 (all-zero state impossible).
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) {
        std::uint64_t x = seed;
        for (auto& w : state_) {
            x += kGolden64;
            w = mix64(x);
        }
    }

    static Rng substream(std::uint64_t master, std::uint64_t stream, std::uint64_t replica) {
        return Rng(derive_seed(master, stream, replica));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // 53-bit uniform in [0,1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0,1]; safe as a log/pow argument
    double uniform_pos() { return 1.0 - uniform01(); }

    // Exp(1)
    double exponential() { return -std::log(uniform_pos()); }

    // N(0,1), Box-Muller without caching: exactly two uniforms per draw, so the
    // stream position is a pure function of the number of calls.
    double normal() {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double theta = 6.283185307179586476925286766559 * uniform01();
        return r * std::cos(theta);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace levylab
