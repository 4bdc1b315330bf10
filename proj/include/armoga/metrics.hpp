#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "armoga/archive.hpp"
#include "armoga/objectives.hpp"
#include "armoga/problems.hpp"

namespace armoga {

struct FrontAssessment {
    double gd = 0.0;
    double tol5 = 0.0;
    double spacing = 0.0;
    bool degenerated = false;
    std::size_t n = 0;
};

inline constexpr double default_degeneracy_tau = 0.01;

// Distance of every point to the exact front of the problem.
[[nodiscard]] auto front_distances(std::span<ObjectiveVector const> front, Problem const& problem) -> std::vector<double>;

// Root mean square of the distances.
[[nodiscard]] auto generational_distance(std::span<double const> distances) -> double;
[[nodiscard]] auto generational_distance(std::span<ObjectiveVector const> front, Problem const& problem) -> double;

// ceil(0.95 n)-th smallest distance: at most 5 % of the points lie farther away.
[[nodiscard]] auto tol5(std::span<double const> distances) -> double;
[[nodiscard]] auto tol5(std::span<ObjectiveVector const> front, Problem const& problem) -> double;

// Nearest-neighbour distance of every point, by full pairwise scan.
[[nodiscard]] auto nearest_neighbour_distances(std::span<ObjectiveVector const> front) -> std::vector<double>;

// Sample standard deviation over the mean of the nearest-neighbour distances.
[[nodiscard]] auto spacing_from_nn(std::span<double const> nn) -> double;
[[nodiscard]] auto spacing(std::span<ObjectiveVector const> front) -> double;
// Reads the maintained links of the archive.
[[nodiscard]] auto spacing(ParetoArchive const& archive) -> double;

// True when the range of some objective is below tau times the largest range
// (or exactly zero).
[[nodiscard]] auto detect_degenerated(std::span<ObjectiveVector const> front, double tau = default_degeneracy_tau) -> bool;

// All metrics of one archive. A single-point archive counts as degenerated
// and has spacing 0.
[[nodiscard]] auto assess_front(std::span<ObjectiveVector const> front, Problem const& problem,
                                double tau = default_degeneracy_tau) -> FrontAssessment;

} // namespace armoga
