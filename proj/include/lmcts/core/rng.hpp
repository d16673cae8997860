#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace lmcts {

// Deterministic random stream keyed by (seed, stream id).
//
// Bits come from std::mt19937_64, whose output sequence is fixed by the
// standard. Every transform on top of the bits (uniform reals, bounded
// integers, normals) is implemented here instead of through the
// <random> distributions, whose algorithms are implementation-defined, so a
// given key yields the same draws on every conforming platform.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }
    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform integer on [0, n); n must be positive.
    std::uint64_t uniform_index(std::uint64_t n);
    bool bernoulli(double p) { return uniform() < p; }
    // Standard normal via the Marsaglia polar method.
    double normal();
    void fill_normal(std::span<double> out);

    // Independent child stream; children of equal keys are equal.
    RngStream child(std::uint64_t sub_id) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stream ids used across one run; fixed so that agents and environments
// never share draws.
namespace streams {
inline constexpr std::uint64_t env_setup = 1;
inline constexpr std::uint64_t env_arms = 2;
inline constexpr std::uint64_t env_noise = 3;
inline constexpr std::uint64_t agent = 4;
inline constexpr std::uint64_t dataset_order = 5;
inline constexpr std::uint64_t model_init = 6;
} // namespace streams

} // namespace lmcts
