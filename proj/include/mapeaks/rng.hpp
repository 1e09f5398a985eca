#pragma once

#include <array>
#include <cstdint>

namespace mapeaks {

// splitmix64 mixing step (Steele/Lea/Flood; public domain reference code).
// Used only to expand seeds into engine state.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ (Blackman/Vigna; public domain reference code). Small, fast,
// and fully defined by this header, so the same seed reproduces the same
// sequence on every platform this library builds on.
class Xoshiro256pp {
public:
    Xoshiro256pp() : Xoshiro256pp(0, 0) {}

    // Stream derivation is a pure function of (seed, stream_id): the engine
    // state is four successive splitmix64 outputs of the stream started at
    //   seed XOR (stream_id + 1) * 0x9e3779b97f4a7c15.
    // Distinct stream ids (and distinct seeds) give unrelated sequences.
    Xoshiro256pp(std::uint64_t seed, std::uint64_t stream_id) {
        SplitMix64 sm{seed ^ ((stream_id + 1) * 0x9e3779b97f4a7c15ull)};
        for (auto& word : state_) word = sm.next();
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = 0x9e3779b97f4a7c15ull;  // all-zero state is invalid
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

    // Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // UniformRandomBitGenerator interface.
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return next_u64(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace mapeaks
