#include "armoga/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "armoga/error.hpp"

namespace armoga {

auto front_distances(std::span<ObjectiveVector const> front, Problem const& problem) -> std::vector<double>
{
    std::vector<double> d;
    d.reserve(front.size());
    for (auto const& f : front) { d.push_back(problem.project_to_front(f).distance); }
    return d;
}

auto generational_distance(std::span<double const> distances) -> double
{
    require(!distances.empty(), "generational_distance: empty archive");
    double sum = 0.0;
    for (double d : distances) { sum += d * d; }
    return std::sqrt(sum / static_cast<double>(distances.size()));
}

auto generational_distance(std::span<ObjectiveVector const> front, Problem const& problem) -> double
{
    require(!front.empty(), "generational_distance: empty archive");
    return generational_distance(front_distances(front, problem));
}

auto tol5(std::span<double const> distances) -> double
{
    require(!distances.empty(), "tol5: empty archive");
    std::vector<double> sorted(distances.begin(), distances.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t const n = sorted.size();
    std::size_t const rank = (95 * n + 99) / 100; // ceil(0.95 n), 1-based
    return sorted[rank - 1];
}

auto tol5(std::span<ObjectiveVector const> front, Problem const& problem) -> double
{
    require(!front.empty(), "tol5: empty archive");
    return tol5(front_distances(front, problem));
}

auto nearest_neighbour_distances(std::span<ObjectiveVector const> front) -> std::vector<double>
{
    std::vector<double> nn(front.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < front.size(); ++i) {
        for (std::size_t j = 0; j < front.size(); ++j) {
            if (i != j) { nn[i] = std::min(nn[i], objective_distance(front[i], front[j])); }
        }
    }
    return nn;
}

auto spacing_from_nn(std::span<double const> nn) -> double
{
    require(nn.size() >= 2, "spacing: needs at least two archive members");
    double mean = 0.0;
    for (double d : nn) { mean += d; }
    mean /= static_cast<double>(nn.size());
    require(mean > 0.0, "spacing: mean nearest-neighbour distance is zero");
    double ss = 0.0;
    for (double d : nn) { ss += (d - mean) * (d - mean); }
    return std::sqrt(ss / static_cast<double>(nn.size() - 1)) / mean;
}

auto spacing(std::span<ObjectiveVector const> front) -> double
{
    require(front.size() >= 2, "spacing: needs at least two archive members");
    return spacing_from_nn(nearest_neighbour_distances(front));
}

auto spacing(ParetoArchive const& archive) -> double
{
    require(archive.size() >= 2, "spacing: needs at least two archive members");
    std::vector<double> nn;
    nn.reserve(archive.size());
    for (auto const& e : archive.entries()) { nn.push_back(e.nn_dist); }
    return spacing_from_nn(nn);
}

auto detect_degenerated(std::span<ObjectiveVector const> front, double tau) -> bool
{
    require(front.size() >= 2, "detect_degenerated: needs at least two archive members");
    std::size_t const k = front.front().size();
    std::vector<double> range(k);
    for (std::size_t j = 0; j < k; ++j) {
        double lo = front.front()[j];
        double hi = lo;
        for (auto const& f : front) {
            lo = std::min(lo, f[j]);
            hi = std::max(hi, f[j]);
        }
        range[j] = hi - lo;
    }
    double const widest = *std::max_element(range.begin(), range.end());
    return std::any_of(range.begin(), range.end(), [&](double r) { return r == 0.0 || r < tau * widest; });
}

auto assess_front(std::span<ObjectiveVector const> front, Problem const& problem, double tau) -> FrontAssessment
{
    require(!front.empty(), "assess_front: empty archive");
    auto const d = front_distances(front, problem);
    FrontAssessment out;
    out.n = front.size();
    out.gd = generational_distance(d);
    out.tol5 = tol5(d);
    out.degenerated = true;
    if (front.size() >= 2) {
        out.spacing = spacing(front);
        out.degenerated = detect_degenerated(front, tau);
    }
    return out;
}

} // namespace armoga
