#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace armoga {

// A point in objective space. All objectives are minimized.
class ObjectiveVector {
public:
    ObjectiveVector() = default;
    explicit ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {}
    ObjectiveVector(std::initializer_list<double> values) : values_(values) {}

    [[nodiscard]] auto size() const noexcept -> std::size_t { return values_.size(); }
    [[nodiscard]] auto operator[](std::size_t i) const noexcept -> double { return values_[i]; }
    [[nodiscard]] auto operator[](std::size_t i) noexcept -> double& { return values_[i]; }
    [[nodiscard]] auto values() const noexcept -> std::span<double const> { return values_; }
    [[nodiscard]] auto begin() const noexcept { return values_.begin(); }
    [[nodiscard]] auto end() const noexcept { return values_.end(); }

    [[nodiscard]] auto all_finite() const noexcept -> bool;

    friend auto operator==(ObjectiveVector const&, ObjectiveVector const&) -> bool = default;

private:
    std::vector<double> values_;
};

// A design vector together with its evaluated objectives.
struct Individual {
    std::vector<double> design;
    ObjectiveVector objectives;
};

// Pareto dominance under minimization: a is no worse everywhere and strictly
// better somewhere. Throws contract_error on dimension mismatch.
[[nodiscard]] auto dominates(ObjectiveVector const& a, ObjectiveVector const& b) -> bool;

// Euclidean distance in objective space.
[[nodiscard]] auto objective_distance(ObjectiveVector const& a, ObjectiveVector const& b) -> double;

} // namespace armoga
