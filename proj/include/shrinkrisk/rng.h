#pragma once

#include <cstdint>
#include <limits>

namespace shrinkrisk {

/// Counter-based 64-bit generator.
///
/// The i-th output of a stream with key k is `mix(k + i * kGamma)`, where
/// `mix` is the SplitMix64 finalizer. A stream is fully determined by its key,
/// so replicate r of an experiment seeded with `master` uses
/// `CounterRng::stream(master, r)`, whose key is `mix(master ^ mix(r + kSalt))`.
/// Results therefore depend only on (master, replicate index) and never on the
/// order in which worker threads pick up replicates.
///
/// Satisfies UniformRandomBitGenerator, so it plugs into <random> distributions.
class CounterRng {
public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kSalt = 0xD1B54A32D192ED03ULL;

    explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

    static constexpr CounterRng stream(std::uint64_t master, std::uint64_t index) noexcept {
        return CounterRng(mix(master ^ mix(index + kSalt)));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() noexcept {
        ++counter_;
        return mix(key_ + counter_ * kGamma);
    }

    constexpr std::uint64_t key() const noexcept { return key_; }
    constexpr std::uint64_t counter() const noexcept { return counter_; }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace shrinkrisk
