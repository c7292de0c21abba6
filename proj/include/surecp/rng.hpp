#pragma once

#include <array>
#include <cstdint>

namespace surecp {

/// Seed for every random stream in the library. Identical seed and identical
/// call sequence give a bit-identical stream on every platform.
struct RngSeed {
    std::uint64_t value = 0;

    friend bool operator==(RngSeed, RngSeed) = default;
};

/// SplitMix64 step (Steele, Lea & Flood). Used to expand seeds and to derive
/// independent child seeds.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Child seed for (parent, stream, index). Distinct streams keep e.g. the
/// noise draw of sample i independent from its Hutchinson probes.
RngSeed derive_seed(RngSeed parent, std::uint64_t stream, std::uint64_t index);

/// xoshiro256** 1.0 (Blackman & Vigna), state expanded from the seed with
/// SplitMix64. Normal deviates use the Box-Muller transform; both outputs of
/// each transform are consumed, in order.
class Rng {
public:
    explicit Rng(RngSeed seed);

    /// Constructs directly from a raw xoshiro state (reference test vectors).
    static Rng from_state(const std::array<std::uint64_t, 4>& state);

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    double normal();

    /// +1 or -1 with equal probability.
    double rademacher();

private:
    Rng() = default;

    std::array<std::uint64_t, 4> s_{};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace surecp
