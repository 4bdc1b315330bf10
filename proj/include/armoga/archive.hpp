#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "armoga/objectives.hpp"

namespace armoga {

inline constexpr std::size_t no_neighbour = std::numeric_limits<std::size_t>::max();

enum class InsertKind : std::uint8_t {
    DiscardedDominated,   // dominated by, or identical to, an archived entry
    AddedDominating,      // value = number of removed (dominated) entries
    AddedFreeSlot,
    ReplacedGlobal,       // value = victim index
    ReplacedLocal,        // value = victim index
    DiscardedByDiversity,
    ReplacedCrowding,     // crowding policy only; value = victim index (pre-removal)
};

struct InsertOutcome {
    InsertKind kind = InsertKind::DiscardedDominated;
    std::size_t value = 0;

    [[nodiscard]] auto accepted() const noexcept -> bool
    {
        return kind != InsertKind::DiscardedDominated && kind != InsertKind::DiscardedByDiversity;
    }
    friend auto operator==(InsertOutcome const&, InsertOutcome const&) -> bool = default;
};

[[nodiscard]] auto to_string(InsertOutcome const& outcome) -> std::string;

struct ArchiveEntry {
    Individual individual;
    std::size_t nn_index = no_neighbour;
    double nn_dist = std::numeric_limits<double>::infinity();
};

struct MinPair {
    std::size_t first = 0;
    std::size_t second = 0;
    double distance = 0.0;
};

// Bounded archive of mutually non-dominated individuals. Candidates are offered
// one at a time; once the archive is full, a non-dominated newcomer may only
// enter by enlarging the smallest pairwise objective-space distance (global
// improvement) or, failing that, the nearest-neighbour distance of the entry
// it would replace (local improvement).
//
// Every entry keeps a link to one of its nearest neighbours, so deciding an
// insertion costs one distance evaluation per entry. Links whose target is
// removed are rebuilt from scratch and counted in update_counter().
//
// Index semantics: dominated entries are removed with a stable erase and the
// newcomer is appended; a diversity replacement puts the newcomer into the
// victim's slot.
class ParetoArchive {
public:
    // objective_scale multiplies each objective before distances are taken;
    // empty means identity.
    explicit ParetoArchive(std::size_t capacity, std::vector<double> objective_scale = {});

    auto try_insert(Individual candidate) -> InsertOutcome;

    // Pair attaining the minimum pairwise distance, read from the stored links.
    // The first index is the lowest one taking part in a minimal pair.
    [[nodiscard]] auto min_pair() const -> MinPair;

    [[nodiscard]] auto capacity() const noexcept -> std::size_t { return capacity_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return entries_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return entries_.empty(); }
    [[nodiscard]] auto entries() const noexcept -> std::span<ArchiveEntry const> { return entries_; }
    [[nodiscard]] auto individual(std::size_t i) const -> Individual const& { return entries_[i].individual; }
    [[nodiscard]] auto objectives(std::size_t i) const -> ObjectiveVector const& { return entries_[i].individual.objectives; }

    [[nodiscard]] auto update_counter() const noexcept -> std::uint64_t { return update_counter_; }
    [[nodiscard]] auto insert_counter() const noexcept -> std::uint64_t { return insert_counter_; }
    // Distances evaluated while deciding the most recent try_insert (before any repair).
    [[nodiscard]] auto last_decision_distance_count() const noexcept -> std::size_t { return decision_distances_; }

    [[nodiscard]] auto distance(ObjectiveVector const& a, ObjectiveVector const& b) const -> double;

private:
    void replace_entry(std::size_t victim, Individual candidate, std::vector<double> const& dist_to_candidate);
    void add_entry(Individual candidate, std::vector<bool> const& dominated, std::vector<double> const& dist_to_candidate);
    void repair_links(std::vector<std::size_t> const& old_to_new, std::size_t added,
                      std::vector<double> const& dist_to_added);
    void relink_from_scratch(std::size_t i);

    std::size_t capacity_;
    std::vector<double> scale_;
    std::size_t dimension_ = 0;
    std::vector<ArchiveEntry> entries_;
    std::uint64_t update_counter_ = 0;
    std::uint64_t insert_counter_ = 0;
    std::size_t decision_distances_ = 0;
};

// Crowding distance (NSGA-II) of each individual: per objective, the gap
// between sorted neighbours divided by that objective's range; the extremes of
// every objective get +inf.
[[nodiscard]] auto crowding_distances(std::span<Individual const> entries) -> std::vector<double>;

// Repeatedly drops the entry with the smallest crowding distance (lowest index
// on ties), recomputing after each drop, until capacity entries remain.
[[nodiscard]] auto crowding_prune(std::vector<Individual> entries, std::size_t capacity) -> std::vector<Individual>;

// Bounded non-dominated archive truncated by crowding distance. Used as the
// baseline policy against ParetoArchive.
class CrowdingArchive {
public:
    explicit CrowdingArchive(std::size_t capacity);

    auto try_insert(Individual candidate) -> InsertOutcome;

    [[nodiscard]] auto capacity() const noexcept -> std::size_t { return capacity_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return entries_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return entries_.empty(); }
    [[nodiscard]] auto members() const noexcept -> std::span<Individual const> { return entries_; }
    [[nodiscard]] auto individual(std::size_t i) const -> Individual const& { return entries_[i]; }
    [[nodiscard]] auto objectives(std::size_t i) const -> ObjectiveVector const& { return entries_[i].objectives; }

    [[nodiscard]] auto update_counter() const noexcept -> std::uint64_t { return 0; }
    [[nodiscard]] auto insert_counter() const noexcept -> std::uint64_t { return insert_counter_; }

private:
    std::size_t capacity_;
    std::size_t dimension_ = 0;
    std::vector<Individual> entries_;
    std::uint64_t insert_counter_ = 0;
};

// Objective vectors of any archive, in archive order.
template <typename Archive>
[[nodiscard]] auto archive_objectives(Archive const& archive) -> std::vector<ObjectiveVector>
{
    std::vector<ObjectiveVector> out;
    out.reserve(archive.size());
    for (std::size_t i = 0; i < archive.size(); ++i) { out.push_back(archive.objectives(i)); }
    return out;
}

} // namespace armoga
