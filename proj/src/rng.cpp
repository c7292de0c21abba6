#include "surecp/rng.hpp"

#include <cmath>
#include <numbers>

namespace surecp {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RngSeed derive_seed(RngSeed parent, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t state = parent.value;
    std::uint64_t a = splitmix64_next(state);
    state = a ^ (stream * 0xD1B54A32D192ED03ULL);
    std::uint64_t b = splitmix64_next(state);
    state = b ^ (index * 0xAEF17502108EF2D9ULL);
    return RngSeed{splitmix64_next(state)};
}

Rng::Rng(RngSeed seed) {
    std::uint64_t state = seed.value;
    for (auto& word : s_) {
        word = splitmix64_next(state);
    }
}

Rng Rng::from_state(const std::array<std::uint64_t, 4>& state) {
    Rng rng;
    rng.s_ = state;
    return rng;
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // 1 - u lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

double Rng::rademacher() {
    return (next_u64() >> 63) != 0 ? 1.0 : -1.0;
}

}  // namespace surecp
