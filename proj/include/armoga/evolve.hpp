#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "armoga/archive.hpp"
#include "armoga/error.hpp"
#include "armoga/gaussian.hpp"
#include "armoga/objectives.hpp"
#include "armoga/problems.hpp"
#include "armoga/random.hpp"

namespace armoga {

struct EvolverConfig {
    std::size_t population_size = 4;
    std::size_t archive_capacity = 100;
    std::size_t reinit_period = 1;     // generations between reinitializations
    std::size_t elites_on_reinit = 2;  // archive members injected at reinitialization
    double delta = 1.4;                // adaptation factor
    double sigma_min = 0.005;          // floor on every per-variable standard deviation
    double recombination_probability = 1.0;
    std::uint64_t seed = 1;

    void validate() const;
};

// Whole-population statistics. mu/sigma are refreshed at every
// reinitialization; mu_old/sigma_old are the values in force since the last
// range adaptation and define the Gaussian encoding and the sampling range.
struct PopulationStats {
    std::vector<double> mu;
    std::vector<double> sigma;
    std::vector<double> mu_old;
    std::vector<double> sigma_old;
};

struct Member {
    std::vector<double> design;
    std::vector<encoded_t> encoded;
    std::optional<ObjectiveVector> objectives; // empty for freshly sampled members
};

struct Population {
    std::vector<Member> members;
    std::size_t generation = 0;

    [[nodiscard]] auto size() const noexcept -> std::size_t { return members.size(); }
};

struct RunTrace {
    std::size_t evaluations = 0;
    std::size_t generations = 0;
    std::size_t reinitializations = 0;
    std::size_t range_adaptations = 0; // flagged variables, summed over reinitializations
    std::uint64_t update_counter = 0;
    std::uint64_t insert_counter = 0;

    friend auto operator==(RunTrace const&, RunTrace const&) -> bool = default;
};

// Latin hypercube sample of count points in [lower, upper]: per variable, one
// uniform point in each of count equal-width strata, strata order shuffled
// independently per variable.
[[nodiscard]] auto lhs_sample(std::span<double const> lower, std::span<double const> upper, std::size_t count, Rng& rng)
    -> std::vector<std::vector<double>>;

// Unevaluated population sampled by LHS over the whole box.
[[nodiscard]] auto lhs_init(Box const& bounds, std::size_t pop_size, Rng& rng) -> Population;

// Mean and population standard deviation of every variable over all members,
// sigma floored at sigma_min. The returned mu_old/sigma_old equal mu/sigma.
[[nodiscard]] auto update_stats(Population const& pop, double sigma_min) -> PopulationStats;

// Refreshes mu/sigma in place and keeps the adapted range.
void update_stats(PopulationStats& stats, Population const& pop, double sigma_min);

// Flags variable i when |sigma_i - sigma_old_i| > delta * sigma_old_i and moves
// the adapted range (mu_old, sigma_old) of flagged variables to (mu, sigma).
auto maybe_adapt_range(PopulationStats& stats, double delta) -> std::vector<bool>;

// Recomputes the encoded coordinates of a member under the adapted range.
void encode_member(Member& member, PopulationStats const& stats);

// Fresh members drawn by LHS over mu +- 3 sigma of the current statistics,
// intersected with the box.
[[nodiscard]] auto sample_in_range(Box const& bounds, PopulationStats const& stats, std::size_t count, Rng& rng)
    -> std::vector<Member>;

// One-point crossover of encoded coordinates. Returns the two children's
// encodings; with no crossover they are the parents' encodings.
[[nodiscard]] auto one_point_crossover(std::span<encoded_t const> a, std::span<encoded_t const> b, std::size_t cut)
    -> std::pair<std::vector<encoded_t>, std::vector<encoded_t>>;

// Counts every call to the wrapped problem.
class CountingEvaluator {
public:
    explicit CountingEvaluator(Problem const& problem) : problem_(&problem) {}

    auto operator()(std::span<double const> design) -> ObjectiveVector
    {
        ++count_;
        return problem_->evaluate(design);
    }
    [[nodiscard]] auto count() const noexcept -> std::size_t { return count_; }
    [[nodiscard]] auto problem() const noexcept -> Problem const& { return *problem_; }

private:
    Problem const* problem_;
    std::size_t count_ = 0;
};

// The archive member minimizing objective j (lowest index on ties).
template <typename Archive>
[[nodiscard]] auto archive_minimizer(Archive const& archive, std::size_t objective) -> std::size_t
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < archive.size(); ++i) {
        if (archive.objectives(i)[objective] < archive.objectives(best)[objective]) { best = i; }
    }
    return best;
}

// Knowledge-based reinitialization: the first `elites` slots take the archive
// minimizers of randomly chosen objectives (distinct while elites <= k), the
// rest is sampled afresh over the adapted range.
template <typename Archive>
[[nodiscard]] auto reinitialize(Population const& pop, Archive const& archive, std::size_t elites, Box const& bounds,
                                PopulationStats const& stats, Rng& rng) -> Population
{
    std::size_t const size = pop.size();
    require(elites <= size, "reinitialize: more elites than population slots");
    Population next;
    next.generation = pop.generation;
    next.members.reserve(size);

    if (!archive.empty() && elites > 0) {
        std::size_t const k = archive.objectives(0).size();
        std::vector<std::size_t> order(k);
        std::size_t used = k;
        for (std::size_t e = 0; e < elites; ++e) {
            if (used == k) {
                for (std::size_t j = 0; j < k; ++j) { order[j] = j; }
                rng.shuffle(std::span<std::size_t>(order));
                used = 0;
            }
            auto const& elite = archive.individual(archive_minimizer(archive, order[used++]));
            Member m { elite.design, {}, elite.objectives };
            encode_member(m, stats);
            next.members.push_back(std::move(m));
        }
    }
    auto fresh = sample_in_range(bounds, stats, size - next.members.size(), rng);
    for (auto& m : fresh) { next.members.push_back(std::move(m)); }
    return next;
}

// One generation: random mating with replacement, one-point crossover in
// encoded space with the configured probability, decoding and clamping,
// exactly one evaluation per offspring, each offered to the archive.
template <typename Archive>
[[nodiscard]] auto step_generation(Population const& pop, PopulationStats const& stats, Archive& archive,
                                   EvolverConfig const& cfg, CountingEvaluator& evaluate, Rng& rng) -> Population
{
    std::size_t const size = pop.size();
    require(size >= 2, "step_generation: population needs at least two members");
    Box const& bounds = evaluate.problem().bounds();
    std::size_t const n = bounds.size();

    Population next;
    next.generation = pop.generation + 1;
    next.members.reserve(size);

    auto make_child = [&](std::vector<encoded_t> encoded) {
        Member child;
        child.design.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            child.design[i] = gaussian_decode(encoded[i], stats.mu_old[i], stats.sigma_old[i], bounds.lower[i], bounds.upper[i]);
        }
        child.encoded = std::move(encoded);
        child.objectives = evaluate(child.design);
        archive.try_insert(Individual { child.design, *child.objectives });
        next.members.push_back(std::move(child));
    };

    while (next.members.size() < size) {
        auto const& a = pop.members[rng.below(size)];
        auto const& b = pop.members[rng.below(size)];
        std::vector<encoded_t> ca = a.encoded;
        std::vector<encoded_t> cb = b.encoded;
        if (n >= 2 && rng.bernoulli(cfg.recombination_probability)) {
            std::size_t const cut = 1 + rng.below(n - 1);
            std::tie(ca, cb) = one_point_crossover(a.encoded, b.encoded, cut);
        }
        make_child(std::move(ca));
        if (next.members.size() < size) { make_child(std::move(cb)); }
    }
    return next;
}

// The complete micro-genetic loop for one seed.
template <typename Archive>
class Evolver {
public:
    Evolver(EvolverConfig cfg, Problem const& problem, Archive archive)
        : cfg_(std::move(cfg))
        , evaluate_(problem)
        , archive_(std::move(archive))
        , rng_(cfg_.seed)
    {
        cfg_.validate();
        auto const& bounds = problem.bounds();
        population_ = lhs_init(bounds, cfg_.population_size, rng_);
        for (auto& m : population_.members) {
            m.objectives = evaluate_(m.design);
            archive_.try_insert(Individual { m.design, *m.objectives });
        }
        stats_ = update_stats(population_, cfg_.sigma_min);
        for (auto& m : population_.members) { encode_member(m, stats_); }
    }

    // Runs whole generations while they fit into the evaluation budget.
    void advance_to(std::size_t budget)
    {
        while (evaluate_.count() + cfg_.population_size <= budget) {
            population_ = step_generation(population_, stats_, archive_, cfg_, evaluate_, rng_);
            ++generations_;
            if (generations_ % cfg_.reinit_period == 0) { reinitialize_now(); }
        }
    }

    [[nodiscard]] auto archive() const noexcept -> Archive const& { return archive_; }
    [[nodiscard]] auto population() const noexcept -> Population const& { return population_; }
    [[nodiscard]] auto stats() const noexcept -> PopulationStats const& { return stats_; }
    [[nodiscard]] auto config() const noexcept -> EvolverConfig const& { return cfg_; }
    [[nodiscard]] auto trace() const -> RunTrace
    {
        return { evaluate_.count(), generations_, reinitializations_, range_adaptations_,
                 archive_.update_counter(), archive_.insert_counter() };
    }

private:
    void reinitialize_now()
    {
        update_stats(stats_, population_, cfg_.sigma_min);
        auto const flagged = maybe_adapt_range(stats_, cfg_.delta);
        for (bool f : flagged) { range_adaptations_ += f ? 1 : 0; }
        population_ = reinitialize(population_, archive_, cfg_.elites_on_reinit, evaluate_.problem().bounds(), stats_, rng_);
        ++reinitializations_;
    }

    EvolverConfig cfg_;
    CountingEvaluator evaluate_;
    Archive archive_;
    Rng rng_;
    Population population_;
    PopulationStats stats_;
    std::size_t generations_ = 0;
    std::size_t reinitializations_ = 0;
    std::size_t range_adaptations_ = 0;
};

template <typename Archive>
struct RunResult {
    Archive archive;
    RunTrace trace;
};

// Runs until the next generation would exceed the budget.
template <typename Archive>
[[nodiscard]] auto run(EvolverConfig const& cfg, Problem const& problem, Archive archive, std::size_t budget) -> RunResult<Archive>
{
    require(budget >= cfg.population_size, "run: budget smaller than the population");
    Evolver<Archive> evolver(cfg, problem, std::move(archive));
    evolver.advance_to(budget);
    return { evolver.archive(), evolver.trace() };
}

[[nodiscard]] inline auto run(EvolverConfig const& cfg, Problem const& problem, std::size_t budget) -> RunResult<ParetoArchive>
{
    return run(cfg, problem, ParetoArchive(cfg.archive_capacity), budget);
}

// One run with snapshots: on_checkpoint(budget, evolver) is called once the
// run has advanced to each budget, in increasing order.
template <typename Archive, typename Callback>
void run_with_checkpoints(EvolverConfig const& cfg, Problem const& problem, Archive archive,
                          std::span<std::size_t const> budgets, Callback&& on_checkpoint)
{
    Evolver<Archive> evolver(cfg, problem, std::move(archive));
    for (std::size_t b : budgets) {
        require(b >= cfg.population_size, "run: budget smaller than the population");
        evolver.advance_to(b);
        on_checkpoint(b, std::as_const(evolver));
    }
}

} // namespace armoga
