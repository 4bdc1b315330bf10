#include "armoga/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace armoga {

void EvolverConfig::validate() const
{
    require(population_size >= 2, "population size must be at least 2");
    require(archive_capacity >= 1, "archive capacity must be positive");
    require(reinit_period >= 1, "reinitialization period must be positive");
    require(elites_on_reinit <= population_size, "elites on reinitialization exceed the population size");
    require(std::isfinite(delta) && delta >= 0.0, "adaptation factor must be non-negative");
    require(std::isfinite(sigma_min) && sigma_min > 0.0, "sigma_min must be positive");
    require(recombination_probability >= 0.0 && recombination_probability <= 1.0,
            "recombination probability must lie in [0, 1]");
}

auto lhs_sample(std::span<double const> lower, std::span<double const> upper, std::size_t count, Rng& rng)
    -> std::vector<std::vector<double>>
{
    require(lower.size() == upper.size(), "lhs_sample: bound dimension mismatch");
    std::size_t const n = lower.size();
    std::vector<std::vector<double>> points(count, std::vector<double>(n));
    if (count == 0) { return points; }

    std::vector<std::size_t> strata(count);
    for (std::size_t i = 0; i < n; ++i) {
        require(lower[i] <= upper[i], "lhs_sample: lower bound above upper bound");
        std::iota(strata.begin(), strata.end(), std::size_t { 0 });
        rng.shuffle(std::span<std::size_t>(strata));
        double const width = upper[i] - lower[i];
        for (std::size_t p = 0; p < count; ++p) {
            double const u = (static_cast<double>(strata[p]) + rng.uniform()) / static_cast<double>(count);
            points[p][i] = std::min(lower[i] + u * width, upper[i]);
        }
    }
    return points;
}

auto lhs_init(Box const& bounds, std::size_t pop_size, Rng& rng) -> Population
{
    require(pop_size >= 1, "lhs_init: population size must be positive");
    Population pop;
    for (auto& x : lhs_sample(bounds.lower, bounds.upper, pop_size, rng)) {
        pop.members.push_back(Member { std::move(x), {}, std::nullopt });
    }
    return pop;
}

void update_stats(PopulationStats& stats, Population const& pop, double sigma_min)
{
    require(pop.size() > 0, "update_stats: empty population");
    std::size_t const n = pop.members.front().design.size();
    auto const count = static_cast<double>(pop.size());
    stats.mu.assign(n, 0.0);
    stats.sigma.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (auto const& m : pop.members) { sum += m.design[i]; }
        double const mean = sum / count;
        double ss = 0.0;
        for (auto const& m : pop.members) { ss += (m.design[i] - mean) * (m.design[i] - mean); }
        stats.mu[i] = mean;
        stats.sigma[i] = std::max(std::sqrt(ss / count), sigma_min);
    }
}

auto update_stats(Population const& pop, double sigma_min) -> PopulationStats
{
    PopulationStats stats;
    update_stats(stats, pop, sigma_min);
    stats.mu_old = stats.mu;
    stats.sigma_old = stats.sigma;
    return stats;
}

auto maybe_adapt_range(PopulationStats& stats, double delta) -> std::vector<bool>
{
    std::size_t const n = stats.sigma.size();
    std::vector<bool> flagged(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(stats.sigma[i] - stats.sigma_old[i]) > delta * stats.sigma_old[i]) {
            flagged[i] = true;
            stats.mu_old[i] = stats.mu[i];
            stats.sigma_old[i] = stats.sigma[i];
        }
    }
    return flagged;
}

void encode_member(Member& member, PopulationStats const& stats)
{
    member.encoded.resize(member.design.size());
    for (std::size_t i = 0; i < member.design.size(); ++i) {
        member.encoded[i] = gaussian_encode(member.design[i], stats.mu_old[i], stats.sigma_old[i]);
    }
}

auto sample_in_range(Box const& bounds, PopulationStats const& stats, std::size_t count, Rng& rng) -> std::vector<Member>
{
    std::size_t const n = bounds.size();
    std::vector<double> lower(n);
    std::vector<double> upper(n);
    for (std::size_t i = 0; i < n; ++i) {
        lower[i] = std::clamp(stats.mu[i] - 3.0 * stats.sigma[i], bounds.lower[i], bounds.upper[i]);
        upper[i] = std::clamp(stats.mu[i] + 3.0 * stats.sigma[i], bounds.lower[i], bounds.upper[i]);
    }
    std::vector<Member> members;
    members.reserve(count);
    for (auto& x : lhs_sample(lower, upper, count, rng)) {
        Member m { std::move(x), {}, std::nullopt };
        encode_member(m, stats);
        members.push_back(std::move(m));
    }
    return members;
}

auto one_point_crossover(std::span<encoded_t const> a, std::span<encoded_t const> b, std::size_t cut)
    -> std::pair<std::vector<encoded_t>, std::vector<encoded_t>>
{
    require(a.size() == b.size(), "one_point_crossover: parent length mismatch");
    require(cut >= 1 && cut < a.size(), "one_point_crossover: cut must lie in 1..n-1");
    std::vector<encoded_t> ca(a.begin(), a.end());
    std::vector<encoded_t> cb(b.begin(), b.end());
    std::swap_ranges(ca.begin() + static_cast<std::ptrdiff_t>(cut), ca.end(), cb.begin() + static_cast<std::ptrdiff_t>(cut));
    return { std::move(ca), std::move(cb) };
}

} // namespace armoga
