#pragma once

#include <cstdint>
#include <limits>

namespace relspin {

/// Counter-based random stream: draw i is a pure function of (key, i), so
/// draws can be produced in any order or on any thread with identical results.
/// The mixing function is the SplitMix64 finalizer applied to key + i * golden.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    /// Independent child stream, e.g. one per restart index.
    CounterRng split(std::uint64_t stream) const;

    std::uint64_t bits(std::uint64_t counter) const;
    /// Uniform in [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const;

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
};

/// Sequential adapter satisfying UniformRandomBitGenerator.
class CounterEngine {
public:
    using result_type = std::uint64_t;

    explicit CounterEngine(CounterRng rng) : rng_(rng) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return rng_.bits(counter_++); }
    double uniform() { return rng_.uniform(counter_++); }

private:
    CounterRng rng_;
    std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace relspin
