#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>

namespace armoga {

// Seeded generator with distribution code of our own, so that a seed yields
// the same stream with every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    auto uniform() -> double { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); n must be positive.
    auto below(std::size_t n) -> std::size_t
    {
        auto const bound = static_cast<std::uint64_t>(n);
        std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = engine_();
        while (x >= limit) { x = engine_(); }
        return static_cast<std::size_t>(x % bound);
    }

    auto bernoulli(double p) -> bool { return uniform() < p; }

    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i) { std::swap(items[i - 1], items[below(i)]); }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace armoga
