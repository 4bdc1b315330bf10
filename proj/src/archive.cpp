#include "armoga/archive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "armoga/error.hpp"

namespace armoga {

namespace {

void validate_candidate(Individual const& candidate, std::size_t& dimension)
{
    auto const& h = candidate.objectives;
    if (!h.all_finite()) { throw contract_error("archive: candidate has non-finite objective values"); }
    if (dimension == 0) {
        require(h.size() >= 2, "archive: at least two objectives are required");
        dimension = h.size();
    } else {
        require(h.size() == dimension, "archive: candidate objective dimension does not match the archive");
    }
}

} // namespace

auto to_string(InsertOutcome const& outcome) -> std::string
{
    switch (outcome.kind) {
    case InsertKind::DiscardedDominated: return "DiscardedDominated";
    case InsertKind::AddedDominating: return "AddedDominating(" + std::to_string(outcome.value) + ")";
    case InsertKind::AddedFreeSlot: return "AddedFreeSlot";
    case InsertKind::ReplacedGlobal: return "ReplacedGlobal(" + std::to_string(outcome.value) + ")";
    case InsertKind::ReplacedLocal: return "ReplacedLocal(" + std::to_string(outcome.value) + ")";
    case InsertKind::DiscardedByDiversity: return "DiscardedByDiversity";
    case InsertKind::ReplacedCrowding: return "ReplacedCrowding(" + std::to_string(outcome.value) + ")";
    }
    return "?";
}

ParetoArchive::ParetoArchive(std::size_t capacity, std::vector<double> objective_scale)
    : capacity_(capacity)
    , scale_(std::move(objective_scale))
{
    require(capacity_ >= 1, "ParetoArchive: capacity must be positive");
    for (double s : scale_) { require(std::isfinite(s) && s > 0.0, "ParetoArchive: objective scale must be positive"); }
    entries_.reserve(capacity_ + 1);
}

auto ParetoArchive::distance(ObjectiveVector const& a, ObjectiveVector const& b) const -> double
{
    if (scale_.empty()) { return objective_distance(a, b); }
    require(a.size() == b.size() && a.size() == scale_.size(), "ParetoArchive: objective dimension mismatch");
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double const d = scale_[j] * (a[j] - b[j]);
        sum += d * d;
    }
    return std::sqrt(sum);
}

auto ParetoArchive::try_insert(Individual candidate) -> InsertOutcome
{
    validate_candidate(candidate, dimension_);
    require(scale_.empty() || scale_.size() == dimension_, "ParetoArchive: objective scale has wrong dimension");

    auto const& h = candidate.objectives;
    std::size_t const n = entries_.size();
    std::vector<bool> dominated(n, false);
    std::vector<double> dist(n, 0.0);
    std::size_t removed = 0;
    decision_distances_ = 0;

    for (std::size_t i = 0; i < n; ++i) {
        auto const& f = entries_[i].individual.objectives;
        if (f == h || dominates(f, h)) { return { InsertKind::DiscardedDominated, 0 }; }
        if (dominates(h, f)) {
            dominated[i] = true;
            ++removed;
        }
        dist[i] = distance(f, h);
        ++decision_distances_;
    }

    if (removed > 0) {
        add_entry(std::move(candidate), dominated, dist);
        ++insert_counter_;
        return { InsertKind::AddedDominating, removed };
    }
    if (n < capacity_) {
        add_entry(std::move(candidate), dominated, dist);
        ++insert_counter_;
        return { InsertKind::AddedFreeSlot, 0 };
    }
    // A single-slot archive has no pairwise distance to improve.
    if (n < 2) { return { InsertKind::DiscardedByDiversity, 0 }; }

    auto const pair = min_pair();

    // two smallest candidate distances; lowest index wins ties
    std::size_t best = 0;
    std::size_t runner = no_neighbour;
    for (std::size_t i = 1; i < n; ++i) {
        if (dist[i] < dist[best]) {
            runner = best;
            best = i;
        } else if (runner == no_neighbour || dist[i] < dist[runner]) {
            runner = i;
        }
    }
    auto min_excluding = [&](std::size_t skip) { return best != skip ? dist[best] : dist[runner]; };

    if (min_excluding(pair.first) > pair.distance) {
        replace_entry(pair.first, std::move(candidate), dist);
        ++insert_counter_;
        return { InsertKind::ReplacedGlobal, pair.first };
    }
    if (min_excluding(pair.second) > pair.distance) {
        replace_entry(pair.second, std::move(candidate), dist);
        ++insert_counter_;
        return { InsertKind::ReplacedGlobal, pair.second };
    }
    std::size_t const closest = best;
    if (dist[runner] > entries_[closest].nn_dist) {
        replace_entry(closest, std::move(candidate), dist);
        ++insert_counter_;
        return { InsertKind::ReplacedLocal, closest };
    }
    return { InsertKind::DiscardedByDiversity, 0 };
}

auto ParetoArchive::min_pair() const -> MinPair
{
    require(entries_.size() >= 2, "min_pair: archive holds fewer than two entries");
    std::size_t first = 0;
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        if (entries_[i].nn_dist < entries_[first].nn_dist) { first = i; }
    }
    return { first, entries_[first].nn_index, entries_[first].nn_dist };
}

void ParetoArchive::add_entry(Individual candidate, std::vector<bool> const& dominated,
                              std::vector<double> const& dist_to_candidate)
{
    std::size_t const n = entries_.size();
    std::vector<std::size_t> old_to_new(n, no_neighbour);
    std::vector<double> dist_new;
    dist_new.reserve(n + 1);

    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominated[i]) { continue; }
        old_to_new[i] = next;
        if (next != i) { entries_[next] = std::move(entries_[i]); }
        dist_new.push_back(dist_to_candidate[i]);
        ++next;
    }
    entries_.resize(next);
    entries_.push_back(ArchiveEntry { std::move(candidate), no_neighbour, std::numeric_limits<double>::infinity() });
    dist_new.push_back(0.0);

    repair_links(old_to_new, entries_.size() - 1, dist_new);
}

void ParetoArchive::replace_entry(std::size_t victim, Individual candidate, std::vector<double> const& dist_to_candidate)
{
    std::vector<std::size_t> old_to_new(entries_.size());
    std::iota(old_to_new.begin(), old_to_new.end(), std::size_t { 0 });
    old_to_new[victim] = no_neighbour;

    entries_[victim].individual = std::move(candidate);
    repair_links(old_to_new, victim, dist_to_candidate);
}

void ParetoArchive::repair_links(std::vector<std::size_t> const& old_to_new, std::size_t added,
                                 std::vector<double> const& dist_to_added)
{
    for (std::size_t j = 0; j < entries_.size(); ++j) {
        if (j == added) { continue; }
        auto& entry = entries_[j];
        if (entry.nn_index == no_neighbour) {
            // was the only entry
            entry.nn_index = added;
            entry.nn_dist = dist_to_added[j];
            continue;
        }
        std::size_t const target = old_to_new[entry.nn_index];
        if (target == no_neighbour) {
            relink_from_scratch(j);
            ++update_counter_;
            continue;
        }
        entry.nn_index = target;
        if (dist_to_added[j] < entry.nn_dist) {
            entry.nn_index = added;
            entry.nn_dist = dist_to_added[j];
        }
    }

    auto& newcomer = entries_[added];
    newcomer.nn_index = no_neighbour;
    newcomer.nn_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < entries_.size(); ++j) {
        if (j != added && dist_to_added[j] < newcomer.nn_dist) {
            newcomer.nn_index = j;
            newcomer.nn_dist = dist_to_added[j];
        }
    }
}

void ParetoArchive::relink_from_scratch(std::size_t i)
{
    auto& entry = entries_[i];
    entry.nn_index = no_neighbour;
    entry.nn_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < entries_.size(); ++j) {
        if (j == i) { continue; }
        double const d = distance(entry.individual.objectives, entries_[j].individual.objectives);
        if (d < entry.nn_dist) {
            entry.nn_index = j;
            entry.nn_dist = d;
        }
    }
}

auto crowding_distances(std::span<Individual const> entries) -> std::vector<double>
{
    std::size_t const n = entries.size();
    std::vector<double> crowding(n, 0.0);
    if (n == 0) { return crowding; }
    std::size_t const k = entries.front().objectives.size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < k; ++m) {
        std::iota(order.begin(), order.end(), std::size_t { 0 });
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return entries[a].objectives[m] < entries[b].objectives[m];
        });
        crowding[order.front()] = inf;
        crowding[order.back()] = inf;
        double const range = entries[order.back()].objectives[m] - entries[order.front()].objectives[m];
        if (range <= 0.0) { continue; }
        for (std::size_t t = 1; t + 1 < n; ++t) {
            crowding[order[t]] += (entries[order[t + 1]].objectives[m] - entries[order[t - 1]].objectives[m]) / range;
        }
    }
    return crowding;
}

namespace {

auto least_crowded(std::span<Individual const> entries) -> std::size_t
{
    auto const crowding = crowding_distances(entries);
    return static_cast<std::size_t>(std::min_element(crowding.begin(), crowding.end()) - crowding.begin());
}

} // namespace

auto crowding_prune(std::vector<Individual> entries, std::size_t capacity) -> std::vector<Individual>
{
    require(capacity >= 2, "crowding_prune: capacity must be at least 2");
    while (entries.size() > capacity) {
        entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(least_crowded(entries)));
    }
    return entries;
}

CrowdingArchive::CrowdingArchive(std::size_t capacity)
    : capacity_(capacity)
{
    require(capacity_ >= 2, "CrowdingArchive: capacity must be at least 2");
    entries_.reserve(capacity_ + 1);
}

auto CrowdingArchive::try_insert(Individual candidate) -> InsertOutcome
{
    validate_candidate(candidate, dimension_);
    auto const& h = candidate.objectives;

    std::vector<bool> dominated(entries_.size(), false);
    std::size_t removed = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        auto const& f = entries_[i].objectives;
        if (f == h || dominates(f, h)) { return { InsertKind::DiscardedDominated, 0 }; }
        if (dominates(h, f)) {
            dominated[i] = true;
            ++removed;
        }
    }

    if (removed > 0) {
        std::size_t next = 0;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (dominated[i]) { continue; }
            if (next != i) { entries_[next] = std::move(entries_[i]); }
            ++next;
        }
        entries_.resize(next);
        entries_.push_back(std::move(candidate));
        ++insert_counter_;
        return { InsertKind::AddedDominating, removed };
    }

    entries_.push_back(std::move(candidate));
    if (entries_.size() <= capacity_) {
        ++insert_counter_;
        return { InsertKind::AddedFreeSlot, 0 };
    }
    std::size_t const victim = least_crowded(entries_);
    if (victim + 1 == entries_.size()) {
        entries_.pop_back();
        return { InsertKind::DiscardedByDiversity, 0 };
    }
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
    ++insert_counter_;
    return { InsertKind::ReplacedCrowding, victim };
}

} // namespace armoga
