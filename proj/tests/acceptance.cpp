// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails. Runs for several minutes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "armoga/archive.hpp"
#include "armoga/bench.hpp"
#include "armoga/metrics.hpp"
#include "armoga/problems.hpp"
#include "support/archive_oracle.hpp"
#include "support/wfg1_golden.hpp"

using namespace armoga;
using namespace armoga::bench;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

auto fmt(char const* pattern, auto... args) -> std::string
{
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

auto settings_run(Settings const& s) -> RunReport
{
    auto cfg = resolve_config(s);
    cfg.dump_fronts = false;
    return run_experiment(cfg);
}

auto at_budget(RunReport const& r, std::size_t budget) -> BudgetSummary const&
{
    return *std::find_if(r.summary.begin(), r.summary.end(), [&](BudgetSummary const& s) { return s.budget == budget; });
}

// Criteria 1 and 2 share the random sequences.
struct OracleStats {
    std::size_t sequences = 0;
    std::size_t insertions = 0;
    std::size_t outcome_mismatches = 0;
    std::size_t link_mismatches = 0;
};

auto oracle_sequences() -> OracleStats const&
{
    static OracleStats const stats = [] {
        OracleStats s;
        std::mt19937_64 gen(20240611);
        for (std::size_t rep = 0; rep < 12000; ++rep) {
            std::size_t const k = 2 + rep % 2;
            std::size_t const capacity = 3 + (rep / 2) % 8;
            std::size_t const length = capacity + gen() % (4 * capacity + 1);
            ParetoArchive archive(capacity);
            std::vector<ObjectiveVector> mirror;
            bool outcome_ok = true;
            bool links_ok = true;
            for (std::size_t step = 0; step < length; ++step) {
                auto const h = oracle::sphere_point(gen, k);
                auto const got = archive.try_insert(Individual { {}, h });
                auto const want = oracle::insert(mirror, capacity, h);
                ++s.insertions;
                outcome_ok = outcome_ok && got.kind == want.kind && got.value == want.value
                             && archive_objectives(archive) == mirror;
                auto const links = oracle::links(mirror);
                for (std::size_t i = 0; i < archive.size() && i < links.size(); ++i) {
                    auto const& e = archive.entries()[i];
                    links_ok = links_ok && e.nn_index == links[i].index && e.nn_dist == links[i].distance;
                }
            }
            ++s.sequences;
            s.outcome_mismatches += outcome_ok ? 0 : 1;
            s.link_mismatches += links_ok ? 0 : 1;
        }
        return s;
    }();
    return stats;
}

auto criterion_oracle() -> Verdict
{
    auto const& s = oracle_sequences();
    return { s.sequences >= 10000 && s.outcome_mismatches == 0,
             fmt("%zu sequences, %zu insertions, %zu mismatching sequences", s.sequences, s.insertions, s.outcome_mismatches) };
}

auto criterion_links() -> Verdict
{
    auto const& s = oracle_sequences();
    return { s.sequences >= 10000 && s.link_mismatches == 0,
             fmt("%zu sequences, %zu with a link differing from the rebuild", s.sequences, s.link_mismatches) };
}

auto criterion_dtlz2() -> Verdict
{
    auto const r = settings_run({ { "profile", "dtlz2-pop4" }, { "archive-size", "100" }, { "seeds", "20" }, { "budgets", "20000" } });
    auto const& s = at_budget(r, 20000);
    return { s.gd <= 1e-2 && s.spacing <= 0.2, fmt("mean GD %.3e (<= 1e-2), mean spacing %.3e (<= 0.2)", s.gd, s.spacing) };
}

auto criterion_dtlz1() -> Verdict
{
    auto const r = settings_run({ { "profile", "dtlz1-pop4" }, { "sigma-min", "0.8" }, { "seeds", "20" }, { "budgets", "200000" } });
    auto const& s = at_budget(r, 200000);
    return { s.gd <= 5e-2 && s.degenerated == 0, fmt("mean GD %.3e (<= 5e-2), %zu degenerated (0)", s.gd, s.degenerated) };
}

auto dtlz4_distance() -> RunReport const&
{
    static RunReport const r = settings_run({ { "profile", "dtlz4-pop4" }, { "seeds", "20" }, { "budgets", "4000,20000,40000" } });
    return r;
}

auto criterion_crowding() -> Verdict
{
    auto const crowd = settings_run({ { "profile", "dtlz4-pop4" }, { "policy", "crowding" }, { "seeds", "20" }, { "budgets", "40000" } });
    double const ours = at_budget(dtlz4_distance(), 40000).spacing;
    double const theirs = at_budget(crowd, 40000).spacing;
    return { theirs >= 5.0 * ours,
             fmt("spacing %.3e (distance) vs %.3e (crowding), ratio %.2f (>= 5)", ours, theirs, theirs / ours) };
}

auto criterion_degenerated() -> Verdict
{
    auto const& r = dtlz4_distance();
    std::size_t const a = at_budget(r, 4000).degenerated;
    std::size_t const b = at_budget(r, 20000).degenerated;
    std::size_t const c = at_budget(r, 40000).degenerated;
    return { a + b + c == 0, fmt("degenerated fronts %zu/%zu/%zu at 4000/20000/40000 (all 0)", a, b, c) };
}

auto criterion_updates() -> Verdict
{
    auto const cfg = resolve_config({ { "profile", "dtlz4-pop4" }, { "seeds", "20" }, { "budgets", "40000" } });
    auto const rows = update_stats_experiment(cfg, default_update_capacities);
    bool ok = rows.size() == default_update_capacities.size();
    std::string detail;
    for (auto const& r : rows) {
        ok = ok && r.update_ratio < 2.0;
        detail += fmt("%s%zu: %.3f", detail.empty() ? "" : ", ", r.capacity, r.update_ratio);
    }
    return { ok, detail + " (each < 2)" };
}

auto criterion_metrics() -> Verdict
{
    std::size_t failures = 0;
    std::size_t checks = 0;
    auto expect = [&](bool c) {
        ++checks;
        failures += c ? 0 : 1;
    };
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // on-front archives
    for (auto const* name : { "dtlz1", "dtlz2", "dtlz4", "wfg1" }) {
        auto const problem = make_problem(name);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<ObjectiveVector> front;
            for (int i = 0; i < 25; ++i) {
                double const a = u(gen);
                double const b = u(gen);
                if (std::string(name) == "wfg1") {
                    front.push_back(wfg1_front_point(a, b));
                    continue;
                }
                std::vector<double> x(problem->design_dim(), 0.5);
                x[0] = a;
                x[1] = b;
                front.push_back(problem->evaluate(x));
            }
            double const tol = std::string(name) == "wfg1" ? 1e-6 : 1e-12;
            expect(generational_distance(front, *problem) <= tol);
            expect(tol5(front, *problem) <= tol);
        }
    }
    // uniform gaps along a 3-4-5 direction, so every gap is exactly 5 * step
    for (std::size_t n = 2; n <= 40; ++n) {
        double const step = 0.25 * static_cast<double>(1 + gen() % 8);
        std::vector<ObjectiveVector> line;
        for (std::size_t i = 0; i < n; ++i) {
            double const t = step * static_cast<double>(i);
            line.push_back(ObjectiveVector({ 3.0 * t, 400.0 - 4.0 * t }));
        }
        expect(spacing(line) == 0.0);
    }
    // scale invariance
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<ObjectiveVector> front;
        std::vector<ObjectiveVector> scaled;
        double const lambda = std::exp(8.0 * u(gen) - 4.0);
        for (int i = 0; i < 15; ++i) {
            auto const p = oracle::sphere_point(gen, 3);
            front.push_back(p);
            scaled.push_back(ObjectiveVector({ lambda * p[0], lambda * p[1], lambda * p[2] }));
        }
        double const a = spacing(front);
        double const b = spacing(scaled);
        expect(std::abs(a - b) <= 1e-12 * std::max(1.0, a));
    }
    // order statistic oracle
    for (int rep = 0; rep < 2000; ++rep) {
        std::vector<double> d(1 + gen() % 150);
        for (auto& x : d) { x = std::floor(10.0 * u(gen)) / 4.0; }
        double best = std::numeric_limits<double>::infinity();
        for (double c : d) {
            auto const above = std::count_if(d.begin(), d.end(), [&](double x) { return x > c; });
            if (static_cast<double>(above) <= 0.05 * static_cast<double>(d.size())) { best = std::min(best, c); }
        }
        expect(tol5(d) == best);
    }
    return { failures == 0, fmt("%zu identity checks, %zu failed", checks, failures) };
}

auto criterion_wfg1() -> Verdict
{
    std::size_t golden_bad = 0;
    double worst = 0.0;
    for (auto const& c : golden::wfg1_cases) {
        auto const f = wfg1_eval(c.x);
        for (std::size_t j = 0; j < 3; ++j) {
            worst = std::max(worst, std::abs(f[j] - c.f[j]));
            golden_bad += std::abs(f[j] - c.f[j]) <= 1e-10 ? 0 : 1;
        }
    }
    auto const r = settings_run({ { "profile", "wfg1-pop4" }, { "sigma-min", "0.8" }, { "reinit-period", "4" }, { "seeds", "3" },
                                  { "budgets", "200000" } });
    auto const& s = at_budget(r, 200000);
    return { s.gd <= 0.5 && s.spacing <= 0.5 && golden_bad == 0,
             fmt("mean GD %.3e (<= 0.5), mean spacing %.3e (<= 0.5), golden max error %.1e over %zu vectors", s.gd,
                 s.spacing, worst, golden::wfg1_cases.size()) };
}

auto slurp(fs::path const& p) -> std::string
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

auto criterion_determinism() -> Verdict
{
    auto const root = fs::temp_directory_path() / ("armoga_acceptance_" + std::to_string(std::random_device {}()));
    std::size_t files = 0;
    std::size_t differing = 0;
    for (auto const* policy : { "distance", "crowding" }) {
        std::vector<std::vector<fs::path>> written;
        for (auto const* tag : { "a", "b" }) {
            auto cfg = resolve_config({ { "profile", "dtlz4-pop4" }, { "policy", policy }, { "seeds", "3" }, { "budgets", "4000,20000" },
                                        { "out", (root / tag).string() } });
            written.push_back(write_report(run_experiment(cfg), cfg));
        }
        for (std::size_t i = 0; i < written[0].size(); ++i) {
            ++files;
            differing += slurp(written[0][i]) == slurp(written[1][i]) ? 0 : 1;
        }
    }
    auto const cfg = resolve_config({ { "profile", "dtlz2-pop4" }, { "seeds", "3" }, { "budgets", "4000" } });
    std::vector<std::size_t> const caps { 20, 100 };
    auto const u1 = format_updates_csv(update_stats_experiment(cfg, caps));
    auto const u2 = format_updates_csv(update_stats_experiment(cfg, caps));
    ++files;
    differing += u1 == u2 ? 0 : 1;
    fs::remove_all(root);
    return { differing == 0 && files > 1, fmt("%zu file pairs compared, %zu differ", files, differing) };
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        char const* name;
        std::function<Verdict()> check;
    };
    std::vector<Criterion> const criteria {
        { 1, "archive matches the brute-force oracle", criterion_oracle },
        { 2, "maintained links match an O(N^2) rebuild", criterion_links },
        { 3, "DTLZ2, 20 seeds, 20000 evaluations", criterion_dtlz2 },
        { 4, "DTLZ1, 20 seeds, 200000 evaluations", criterion_dtlz1 },
        { 5, "DTLZ4 spacing, distance vs crowding archive", criterion_crowding },
        { 6, "DTLZ4 degenerated fronts", criterion_degenerated },
        { 7, "DTLZ4 update cost per insertion", criterion_updates },
        { 8, "metric identities", criterion_metrics },
        { 9, "WFG1, 3 seeds, 200000 evaluations", criterion_wfg1 },
        { 10, "byte-identical output on repeat", criterion_determinism },
    };
    int failed = 0;
    for (auto const& c : criteria) {
        auto const start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (std::exception const& e) {
            v = { false, std::string("exception: ") + e.what() };
        }
        double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs);
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
