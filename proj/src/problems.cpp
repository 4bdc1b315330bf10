#include "armoga/problems.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>

#include "armoga/error.hpp"

namespace armoga {

using std::numbers::pi;

auto Box::contains(std::span<double const> x) const -> bool
{
    if (x.size() != size()) { return false; }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lower[i] && x[i] <= upper[i])) { return false; }
    }
    return true;
}

auto Box::clamp(std::size_t i, double v) const -> double
{
    return std::clamp(v, lower[i], upper[i]);
}

namespace {

auto unit_box(std::size_t n) -> Box
{
    return Box { std::vector<double>(n, 0.0), std::vector<double>(n, 1.0) };
}

auto wfg1_box() -> Box
{
    Box box { std::vector<double>(24, 0.0), std::vector<double>(24, 0.0) };
    for (std::size_t i = 0; i < 24; ++i) { box.upper[i] = 2.0 * static_cast<double>(i + 1); }
    return box;
}

void check_design(Box const& box, std::span<double const> x, char const* who)
{
    if (x.size() != box.size()) {
        throw contract_error(std::string(who) + ": expected " + std::to_string(box.size()) + " design variables, got "
                             + std::to_string(x.size()));
    }
    if (!box.contains(x)) { throw contract_error(std::string(who) + ": design vector outside the box"); }
}

auto dtlz_sphere(std::span<double const> x, double exponent) -> ObjectiveVector
{
    double g = 0.0;
    for (std::size_t i = 2; i < x.size(); ++i) { g += (x[i] - 0.5) * (x[i] - 0.5); }
    double const a = std::pow(x[0], exponent) * pi / 2.0;
    double const b = std::pow(x[1], exponent) * pi / 2.0;
    return { (1.0 + g) * std::cos(a) * std::cos(b), (1.0 + g) * std::cos(a) * std::sin(b), (1.0 + g) * std::sin(a) };
}

// WFG transformation primitives
auto correct_to_01(double a) -> double
{
    return std::clamp(a, 0.0, 1.0);
}

auto s_linear(double y, double a) -> double
{
    return correct_to_01(std::abs(y - a) / std::abs(std::floor(a - y) + a));
}

auto b_flat(double y, double a, double b, double c) -> double
{
    double const lo = std::min(0.0, std::floor(y - b)) * a * (b - y) / b;
    double const hi = std::min(0.0, std::floor(c - y)) * (1.0 - a) * (y - c) / (1.0 - c);
    return correct_to_01(a + lo - hi);
}

auto b_poly(double y, double alpha) -> double
{
    return correct_to_01(std::pow(y, alpha));
}

constexpr std::size_t wfg1_position_params = 4;
constexpr double wfg1_poly_exponent = 0.2;

auto wfg1_shape(double z1, double z2, double distance) -> ObjectiveVector
{
    double const c1 = 1.0 - std::cos(z1 * pi / 2.0);
    double const f1 = c1 * (1.0 - std::cos(z2 * pi / 2.0));
    double const f2 = c1 * (1.0 - std::sin(z2 * pi / 2.0));
    double const f3 = 1.0 - z1 - std::cos(10.0 * pi * z1 + pi / 2.0) / (10.0 * pi);
    return { distance + 2.0 * f1, distance + 4.0 * f2, distance + 6.0 * f3 };
}

class Dtlz1 final : public Problem {
public:
    auto name() const -> std::string override { return "dtlz1"; }
    auto objective_dim() const -> std::size_t override { return 3; }
    auto bounds() const -> Box const& override { return box_; }
    auto evaluate(std::span<double const> x) const -> ObjectiveVector override { return dtlz1_eval(x); }
    auto project_to_front(ObjectiveVector const& f) const -> FrontProjection override { return project_dtlz1_front(f); }

private:
    Box box_ = unit_box(7);
};

class Dtlz2 final : public Problem {
public:
    auto name() const -> std::string override { return "dtlz2"; }
    auto objective_dim() const -> std::size_t override { return 3; }
    auto bounds() const -> Box const& override { return box_; }
    auto evaluate(std::span<double const> x) const -> ObjectiveVector override { return dtlz2_eval(x); }
    auto project_to_front(ObjectiveVector const& f) const -> FrontProjection override { return project_sphere_front(f); }

private:
    Box box_ = unit_box(12);
};

class Dtlz4 final : public Problem {
public:
    auto name() const -> std::string override { return "dtlz4"; }
    auto objective_dim() const -> std::size_t override { return 3; }
    auto bounds() const -> Box const& override { return box_; }
    auto evaluate(std::span<double const> x) const -> ObjectiveVector override { return dtlz4_eval(x); }
    auto project_to_front(ObjectiveVector const& f) const -> FrontProjection override { return project_sphere_front(f); }

private:
    Box box_ = unit_box(12);
};

class Wfg1 final : public Problem {
public:
    auto name() const -> std::string override { return "wfg1"; }
    auto objective_dim() const -> std::size_t override { return 3; }
    auto bounds() const -> Box const& override { return box_; }
    auto evaluate(std::span<double const> x) const -> ObjectiveVector override { return wfg1_eval(x); }
    auto project_to_front(ObjectiveVector const& f) const -> FrontProjection override { return project_wfg1_front(f); }

private:
    Box box_ = wfg1_box();
};

} // namespace

auto make_problem(std::string_view name) -> std::unique_ptr<Problem>
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "dtlz1") { return std::make_unique<Dtlz1>(); }
    if (lower == "dtlz2") { return std::make_unique<Dtlz2>(); }
    if (lower == "dtlz4") { return std::make_unique<Dtlz4>(); }
    if (lower == "wfg1") { return std::make_unique<Wfg1>(); }
    throw config_error("unknown problem '" + std::string(name) + "' (expected dtlz1, dtlz2, dtlz4 or wfg1)");
}

auto dtlz1_eval(std::span<double const> x) -> ObjectiveVector
{
    static Box const box = unit_box(7);
    check_design(box, x, "dtlz1");
    double sum = 0.0;
    for (std::size_t i = 2; i < x.size(); ++i) {
        double const d = x[i] - 0.5;
        sum += d * d - std::cos(20.0 * pi * d);
    }
    double const g = 100.0 * (5.0 + sum);
    return { 0.5 * x[0] * x[1] * (1.0 + g), 0.5 * x[0] * (1.0 - x[1]) * (1.0 + g), 0.5 * (1.0 - x[0]) * (1.0 + g) };
}

auto dtlz2_eval(std::span<double const> x) -> ObjectiveVector
{
    static Box const box = unit_box(12);
    check_design(box, x, "dtlz2");
    return dtlz_sphere(x, 1.0);
}

auto dtlz4_eval(std::span<double const> x) -> ObjectiveVector
{
    static Box const box = unit_box(12);
    check_design(box, x, "dtlz4");
    return dtlz_sphere(x, 100.0);
}

auto wfg1_eval(std::span<double const> x) -> ObjectiveVector
{
    static Box const box = wfg1_box();
    check_design(box, x, "wfg1");
    std::size_t const n = x.size();
    constexpr std::size_t k = wfg1_position_params;

    std::array<double, 24> y {};
    for (std::size_t i = 0; i < n; ++i) { y[i] = x[i] / (2.0 * static_cast<double>(i + 1)); }
    for (std::size_t i = k; i < n; ++i) { y[i] = s_linear(y[i], 0.35); }
    for (std::size_t i = k; i < n; ++i) { y[i] = b_flat(y[i], 0.8, 0.75, 0.85); }
    for (std::size_t i = 0; i < n; ++i) { y[i] = b_poly(y[i], wfg1_poly_exponent); }

    // weighted-sum reduction with weights 2i (1-based)
    auto r_sum = [&](std::size_t from, std::size_t to) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = from; i < to; ++i) {
            double const w = 2.0 * static_cast<double>(i + 1);
            num += w * y[i];
            den += w;
        }
        return correct_to_01(num / den);
    };
    double const z1 = r_sum(0, k / 2);
    double const z2 = r_sum(k / 2, k);
    double const distance = r_sum(k, n);
    // degeneracy constants are all 1, so the position parameters pass through unchanged
    return wfg1_shape(z1, z2, distance);
}

auto wfg1_front_point(double z1, double z2) -> ObjectiveVector
{
    return wfg1_shape(z1, z2, 0.0);
}

auto project_dtlz1_front(ObjectiveVector const& f) -> FrontProjection
{
    constexpr double total = 0.5;
    std::vector<double> sorted(f.begin(), f.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<> {});
    double prefix = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        prefix += sorted[j];
        double const t = (prefix - total) / static_cast<double>(j + 1);
        if (sorted[j] - t > 0.0) { theta = t; }
    }
    std::vector<double> point(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) { point[j] = std::max(f[j] - theta, 0.0); }
    ObjectiveVector p(std::move(point));
    double const d = objective_distance(f, p);
    return { std::move(p), d };
}

auto project_sphere_front(ObjectiveVector const& f) -> FrontProjection
{
    std::vector<double> point(f.size(), 0.0);
    double norm = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        double const v = std::max(f[j], 0.0);
        point[j] = v;
        norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm > 0.0) {
        for (double& v : point) { v /= norm; }
    } else {
        // no positive component: the nearest front point is the axis of the largest objective
        auto const best = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
        point[best] = 1.0;
    }
    ObjectiveVector p(std::move(point));
    double const d = objective_distance(f, p);
    return { std::move(p), d };
}

namespace {

struct WfgFit {
    double z1;
    double z2;
    double cost; // squared distance
};

auto wfg1_residual_cost(ObjectiveVector const& f, double z1, double z2) -> double
{
    auto const p = wfg1_front_point(z1, z2);
    double s = 0.0;
    for (std::size_t j = 0; j < 3; ++j) { s += (p[j] - f[j]) * (p[j] - f[j]); }
    return s;
}

auto refine_wfg1(ObjectiveVector const& f, double z1, double z2) -> WfgFit
{
    constexpr double tolerance = 1e-8;
    constexpr int max_iterations = 200;
    double cost = wfg1_residual_cost(f, z1, z2);
    double lambda = 1e-3;

    for (int it = 0; it < max_iterations; ++it) {
        double const a = z1 * pi / 2.0;
        double const b = z2 * pi / 2.0;
        double const c1 = 1.0 - std::cos(a);
        auto const p = wfg1_front_point(z1, z2);
        std::array<double, 3> const r { p[0] - f[0], p[1] - f[1], p[2] - f[2] };
        // Jacobian rows d f_j / d(z1, z2)
        std::array<std::array<double, 2>, 3> const jac { {
            { pi * std::sin(a) * (1.0 - std::cos(b)), pi * c1 * std::sin(b) },
            { 2.0 * pi * std::sin(a) * (1.0 - std::sin(b)), -2.0 * pi * c1 * std::cos(b) },
            { 6.0 * (std::cos(10.0 * pi * z1) - 1.0), 0.0 },
        } };
        double h11 = 0.0, h12 = 0.0, h22 = 0.0, g1 = 0.0, g2 = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            h11 += jac[j][0] * jac[j][0];
            h12 += jac[j][0] * jac[j][1];
            h22 += jac[j][1] * jac[j][1];
            g1 += jac[j][0] * r[j];
            g2 += jac[j][1] * r[j];
        }

        bool improved = false;
        double step = 0.0;
        for (int attempt = 0; attempt < 30 && !improved; ++attempt) {
            double const a11 = h11 + lambda * (h11 + 1e-12);
            double const a22 = h22 + lambda * (h22 + 1e-12);
            double const det = a11 * a22 - h12 * h12;
            if (!(std::abs(det) > 0.0)) {
                lambda *= 4.0;
                continue;
            }
            double const d1 = (-g1 * a22 + g2 * h12) / det;
            double const d2 = (-g2 * a11 + g1 * h12) / det;
            double const n1 = std::clamp(z1 + d1, 0.0, 1.0);
            double const n2 = std::clamp(z2 + d2, 0.0, 1.0);
            double const trial = wfg1_residual_cost(f, n1, n2);
            if (trial < cost) {
                step = std::max(std::abs(n1 - z1), std::abs(n2 - z2));
                z1 = n1;
                z2 = n2;
                cost = trial;
                lambda = std::max(lambda / 3.0, 1e-12);
                improved = true;
            } else {
                lambda *= 4.0;
            }
        }
        if (!improved || step < tolerance) { break; }
    }
    return { z1, z2, cost };
}

// Compass search; the Jacobian vanishes along z1 = 0, where the
// gradient-based step cannot leave the edge.
auto polish_wfg1(ObjectiveVector const& f, WfgFit fit, double step) -> WfgFit
{
    constexpr double tolerance = 1e-10;
    while (step > tolerance) {
        bool improved = false;
        for (int axis = 0; axis < 2; ++axis) {
            for (double sign : { -1.0, 1.0 }) {
                double const n1 = axis == 0 ? std::clamp(fit.z1 + sign * step, 0.0, 1.0) : fit.z1;
                double const n2 = axis == 1 ? std::clamp(fit.z2 + sign * step, 0.0, 1.0) : fit.z2;
                double const trial = wfg1_residual_cost(f, n1, n2);
                if (trial < fit.cost) {
                    fit = { n1, n2, trial };
                    improved = true;
                }
            }
        }
        if (!improved) { step /= 2.0; }
    }
    return fit;
}

} // namespace

auto project_wfg1_front(ObjectiveVector const& f) -> FrontProjection
{
    require(f.size() == 3, "project_wfg1_front: expected three objectives");
    constexpr std::size_t grid = 101;
    constexpr std::size_t max_starts = 6;

    std::vector<double> cost(grid * grid);
    for (std::size_t i = 0; i < grid; ++i) {
        double const z1 = static_cast<double>(i) / (grid - 1);
        for (std::size_t j = 0; j < grid; ++j) {
            double const z2 = static_cast<double>(j) / (grid - 1);
            cost[i * grid + j] = wfg1_residual_cost(f, z1, z2);
        }
    }

    // local minima of the grid (8-neighbourhood) seed the refinement
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < grid; ++i) {
        for (std::size_t j = 0; j < grid; ++j) {
            double const c = cost[i * grid + j];
            bool minimum = true;
            for (int di = -1; di <= 1 && minimum; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) { continue; }
                    auto const ni = static_cast<std::ptrdiff_t>(i) + di;
                    auto const nj = static_cast<std::ptrdiff_t>(j) + dj;
                    if (ni < 0 || nj < 0 || ni >= static_cast<std::ptrdiff_t>(grid) || nj >= static_cast<std::ptrdiff_t>(grid)) {
                        continue;
                    }
                    if (cost[static_cast<std::size_t>(ni) * grid + static_cast<std::size_t>(nj)] < c) {
                        minimum = false;
                        break;
                    }
                }
            }
            if (minimum) { starts.push_back(i * grid + j); }
        }
    }
    std::stable_sort(starts.begin(), starts.end(), [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });
    if (starts.size() > max_starts) { starts.resize(max_starts); }

    WfgFit best { 0.0, 0.0, std::numeric_limits<double>::infinity() };
    for (std::size_t s : starts) {
        double const z1 = static_cast<double>(s / grid) / (grid - 1);
        double const z2 = static_cast<double>(s % grid) / (grid - 1);
        auto fit = polish_wfg1(f, refine_wfg1(f, z1, z2), 1.0 / (grid - 1));
        fit = refine_wfg1(f, fit.z1, fit.z2);
        if (fit.cost < best.cost) { best = fit; }
    }
    auto point = wfg1_front_point(best.z1, best.z2);
    double const d = objective_distance(f, point);
    return { std::move(point), d };
}

} // namespace armoga
