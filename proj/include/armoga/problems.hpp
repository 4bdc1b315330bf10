#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "armoga/objectives.hpp"

namespace armoga {

// Axis-aligned box of design-variable bounds.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    [[nodiscard]] auto size() const noexcept -> std::size_t { return lower.size(); }
    [[nodiscard]] auto contains(std::span<double const> x) const -> bool;
    [[nodiscard]] auto clamp(std::size_t i, double v) const -> double;
};

struct FrontProjection {
    ObjectiveVector point;
    double distance = 0.0;
};

// A benchmark problem together with an analytic description of its Pareto
// front. Implementations are stateless and safe to share between threads.
class Problem {
public:
    virtual ~Problem() = default;

    [[nodiscard]] virtual auto name() const -> std::string = 0;
    [[nodiscard]] virtual auto objective_dim() const -> std::size_t = 0;
    [[nodiscard]] virtual auto bounds() const -> Box const& = 0;
    [[nodiscard]] auto design_dim() const -> std::size_t { return bounds().size(); }

    // Throws contract_error when x has the wrong length or leaves the box.
    [[nodiscard]] virtual auto evaluate(std::span<double const> x) const -> ObjectiveVector = 0;

    // Closest point of the exact front and the Euclidean distance to it.
    [[nodiscard]] virtual auto project_to_front(ObjectiveVector const& f) const -> FrontProjection = 0;
};

// "dtlz1", "dtlz2", "dtlz4" or "wfg1" (case-insensitive); config_error otherwise.
[[nodiscard]] auto make_problem(std::string_view name) -> std::unique_ptr<Problem>;

// Raw problem formulas; the box is checked.
[[nodiscard]] auto dtlz1_eval(std::span<double const> x) -> ObjectiveVector;
[[nodiscard]] auto dtlz2_eval(std::span<double const> x) -> ObjectiveVector;
[[nodiscard]] auto dtlz4_eval(std::span<double const> x) -> ObjectiveVector;
// x has 24 variables with 0 <= x_i <= 2i; b_poly uses exponent 0.2.
[[nodiscard]] auto wfg1_eval(std::span<double const> x) -> ObjectiveVector;

// Point of the WFG1 front for shape parameters (z1, z2) in [0,1]^2.
[[nodiscard]] auto wfg1_front_point(double z1, double z2) -> ObjectiveVector;

// Closest point on {f >= 0, sum f = 0.5}.
[[nodiscard]] auto project_dtlz1_front(ObjectiveVector const& f) -> FrontProjection;
// Closest point on the non-negative octant of the unit sphere.
[[nodiscard]] auto project_sphere_front(ObjectiveVector const& f) -> FrontProjection;
// Grid scan over (z1, z2), then bounded Levenberg-Marquardt refinement and a
// compass-search polish.
[[nodiscard]] auto project_wfg1_front(ObjectiveVector const& f) -> FrontProjection;

} // namespace armoga
