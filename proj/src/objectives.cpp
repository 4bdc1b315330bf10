#include "armoga/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "armoga/error.hpp"

namespace armoga {

auto ObjectiveVector::all_finite() const noexcept -> bool
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

auto dominates(ObjectiveVector const& a, ObjectiveVector const& b) -> bool
{
    require(a.size() == b.size(), "dominates: objective dimension mismatch");
    bool strictly_better = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) { return false; }
        if (a[j] < b[j]) { strictly_better = true; }
    }
    return strictly_better;
}

auto objective_distance(ObjectiveVector const& a, ObjectiveVector const& b) -> double
{
    require(a.size() == b.size(), "objective_distance: objective dimension mismatch");
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double const d = a[j] - b[j];
        sum += d * d;
    }
    return std::sqrt(sum);
}

} // namespace armoga
