#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "armoga/bench.hpp"
#include "armoga/error.hpp"

using namespace armoga;
using namespace armoga::bench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    explicit TempDir(std::string const& tag)
        : path(fs::temp_directory_path() / ("armoga_test_" + tag + "_" + std::to_string(std::random_device {}())))
    {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
    TempDir(TempDir const&) = delete;
    auto operator=(TempDir const&) -> TempDir& = delete;
};

auto slurp(fs::path const& p) -> std::string
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

auto small_config() -> RunConfig
{
    auto cfg = resolve_config({ { "problem", "dtlz2" }, { "budgets", "200,400" }, { "seeds", "2" }, { "archive-size", "30" } });
    return cfg;
}

auto row(std::size_t budget, double gd, bool degenerated, std::uint64_t updates = 0, std::uint64_t inserts = 0) -> SeedRow
{
    SeedRow r;
    r.budget = budget;
    r.metrics.gd = gd;
    r.metrics.tol5 = 2.0 * gd;
    r.metrics.spacing = 3.0 * gd;
    r.metrics.degenerated = degenerated;
    r.update_counter = updates;
    r.insert_counter = inserts;
    return r;
}

} // namespace

TEST_CASE("settings files")
{
    std::istringstream in("# experiment\nproblem = dtlz4\n\nARCHIVE_SIZE=50  # inline comment\n  seeds = 1..3\n");
    auto const s = parse_settings(in);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == std::pair<std::string, std::string> { "problem", "dtlz4" });
    CHECK(s[1] == std::pair<std::string, std::string> { "archive-size", "50" });
    CHECK(s[2].second == "1..3");

    std::istringstream bad("problem dtlz4\n");
    CHECK_THROWS_AS((void)parse_settings(bad), config_error);
    CHECK_THROWS_AS((void)load_settings("/nonexistent/armoga.cfg"), io_error);
}

TEST_CASE("seed and budget lists")
{
    CHECK(parse_seeds("3") == std::vector<std::uint64_t> { 1, 2, 3 });
    CHECK(parse_seeds("4..6") == std::vector<std::uint64_t> { 4, 5, 6 });
    CHECK(parse_seeds("1, 5,9") == std::vector<std::uint64_t> { 1, 5, 9 });
    CHECK(parse_seeds("0").empty());
    CHECK_THROWS_AS((void)parse_seeds("6..4"), config_error);
    CHECK_THROWS_AS((void)parse_seeds("x"), config_error);
    CHECK(parse_budgets("4000, 20000") == std::vector<std::size_t> { 4000, 20000 });
    CHECK_THROWS_AS((void)parse_budgets("4000,,2"), config_error);
    CHECK_THROWS_AS((void)parse_budgets("-5"), config_error);
}

TEST_CASE("profiles")
{
    CHECK(profile_names().size() == 12);
    auto const d1 = profile("dtlz1-pop4");
    CHECK(d1.evolver.sigma_min == 0.8);
    CHECK(d1.evolver.delta == 1.4);
    CHECK(d1.evolver.reinit_period == 1);
    CHECK(d1.evolver.elites_on_reinit == 2);
    CHECK(d1.evolver.recombination_probability == 1.0);
    CHECK(d1.budgets.back() == 200000);
    CHECK(d1.seeds.size() == 20);

    auto const d2 = profile("DTLZ2-pop10");
    CHECK(d2.evolver.sigma_min == 0.005);
    CHECK(d2.evolver.reinit_period == 3);
    CHECK(d2.evolver.elites_on_reinit == 4);
    CHECK(profile("dtlz4-pop20").evolver.elites_on_reinit == 6);
    CHECK(profile("wfg1-pop4").evolver.reinit_period == 4);
    CHECK(profile("wfg1-pop4").evolver.sigma_min == 0.8);
    CHECK_THROWS_AS((void)profile("dtlz3-pop4"), config_error);
    for (auto const& name : profile_names()) { CHECK_NOTHROW(profile(name).validate()); }
}

TEST_CASE("resolving settings")
{
    auto const cfg = resolve_config({ { "problem", "dtlz1" }, { "pop", "10" }, { "delta", "2" } });
    CHECK(cfg.problem == "dtlz1");
    CHECK(cfg.evolver.population_size == 10);
    CHECK(cfg.evolver.reinit_period == 3);
    CHECK(cfg.evolver.delta == 2.0);
    CHECK(cfg.evolver.sigma_min == 0.8);

    auto const odd = resolve_config({ { "problem", "wfg1" }, { "pop", "6" } });
    CHECK(odd.evolver.population_size == 6);
    CHECK(odd.evolver.reinit_period == 4);

    auto const later = resolve_config({ { "profile", "dtlz4-pop4" }, { "sigma_min", "0.01" }, { "--policy", "crowding" } });
    CHECK(later.problem == "dtlz4");
    CHECK(later.evolver.sigma_min == 0.01);
    CHECK(later.policy == ArchivePolicy::crowding);

    CHECK_THROWS_AS((void)resolve_config({ { "colour", "blue" } }), config_error);
    CHECK_THROWS_AS((void)resolve_config({ { "problem", "zdt1" } }), config_error);
    CHECK_THROWS_AS((void)resolve_config({ { "policy", "random" } }), config_error);
    CHECK_THROWS_AS((void)resolve_config({ { "dump-fronts", "maybe" } }), config_error);
}

TEST_CASE("invalid configurations are rejected before anything runs")
{
    auto expect_bad = [](Settings const& extra) {
        Settings s { { "problem", "dtlz2" } };
        s.insert(s.end(), extra.begin(), extra.end());
        auto const cfg = resolve_config(s);
        CHECK_THROWS_AS(cfg.validate(), config_error);
        CHECK_THROWS_AS((void)run_experiment(cfg), config_error);
    };
    expect_bad({ { "budgets", "400,200" } });
    expect_bad({ { "budgets", "200,200" } });
    expect_bad({ { "budgets", "2" } });
    expect_bad({ { "seeds", "1,1" } });
    expect_bad({ { "seeds", "0" } });
    expect_bad({ { "pop", "1" } });
    expect_bad({ { "elites", "9" } });
    expect_bad({ { "sigma-min", "0" } });
    expect_bad({ { "tau", "2" } });
    expect_bad({ { "policy", "crowding" }, { "archive-size", "1" } });
    CHECK_NOTHROW(resolve_config({ { "archive-size", "1" } }).validate());

    TempDir dir("invalid");
    auto cfg = resolve_config({ { "budgets", "9,3" }, { "out", dir.path.string() } });
    CHECK_THROWS_AS((void)run_experiment(cfg), config_error);
    CHECK_FALSE(fs::exists(dir.path));
}

TEST_CASE("summaries")
{
    std::vector<SeedRow> const rows { row(100, 1.0, false, 3, 4), row(200, 0.5, false, 1, 2), row(100, 3.0, true, 1, 4),
                                      row(200, 0.7, true, 0, 0) };
    std::vector<std::size_t> const budgets { 100, 200 };
    auto const all = summarize(rows, budgets, false);
    REQUIRE(all.size() == 2);
    CHECK(all[0].gd == 2.0);
    CHECK(all[0].tol5 == 4.0);
    CHECK(all[0].spacing == 6.0);
    CHECK(all[0].degenerated == 1);
    CHECK(all[0].averaged == 2);
    CHECK(all[0].update_ratio == 0.5);
    CHECK(all[1].update_ratio == 0.25);

    auto const kept = summarize(rows, budgets, true);
    CHECK(kept[0].gd == 1.0);
    CHECK(kept[0].averaged == 1);
    CHECK(kept[0].update_ratio == 0.5);

    std::vector<SeedRow> const lone { row(100, 1.5, true) };
    auto const none = summarize(lone, std::vector<std::size_t> { 100 }, true);
    CHECK(std::isnan(none[0].gd));
    CHECK(none[0].averaged == 0);
    CHECK(none[0].degenerated == 1);
}

TEST_CASE("summary table round trip at printed precision")
{
    std::vector<BudgetSummary> s { { 4000, 1.23456e-3, 2.5e-2, 0.1875, 1.06, 2, 18 },
                                   { 20000, std::nan(""), std::nan(""), std::nan(""), 0.0, 20, 0 } };
    auto const text = format_summary_csv(s);
    CHECK(text.starts_with("metric,4000,20000\nGD,1.23e-03,-\n"));
    std::istringstream in(text);
    auto const back = parse_summary_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].budget == 4000);
    CHECK(back[0].gd == 1.23e-3);
    CHECK(back[0].spacing == 1.88e-1);
    CHECK(back[0].degenerated == 2);
    CHECK(back[0].averaged == 18);
    CHECK(std::isnan(back[1].gd));
    CHECK(format_summary_csv(back) == text);

    std::istringstream junk("metric,10\nGD,abc\n");
    CHECK_THROWS_AS((void)parse_summary_csv(junk), io_error);
}

TEST_CASE("front dumps")
{
    std::vector<Individual> members {
        { { 0.1, 0.2 }, ObjectiveVector({ 0.5, 0.5, 0.7071067811865476 }) },
        { { 0.3, 1.0 / 3.0 }, ObjectiveVector({ 0.0, 1.0, 0.0 }) },
        { { 0.9, 0.0 }, ObjectiveVector({ 0.5, 0.25, 1e-300 }) },
    };
    auto const text = format_front(members);
    std::istringstream in(text);
    auto const back = parse_front(in, 3);
    REQUIRE(back.size() == 3);
    CHECK(back[0].objectives == members[1].objectives);
    CHECK(back[1].objectives == members[2].objectives);
    CHECK(back[2].objectives == members[0].objectives);
    CHECK(back[0].design == members[1].design);
    CHECK(format_front(back) == text);

    std::mt19937_64 gen(1);
    for (int rep = 0; rep < 10; ++rep) {
        std::shuffle(members.begin(), members.end(), gen);
        CHECK(format_front(members) == text);
    }

    std::istringstream short_line("1 2\n");
    CHECK_THROWS_AS((void)parse_front(short_line, 3), io_error);
    CHECK_THROWS_AS(dump_front(std::vector<Individual> {}, "unused.txt"), contract_error);
}

TEST_CASE("experiments, checkpoints and output files")
{
    auto cfg = small_config();
    auto const report = run_experiment(cfg);
    CHECK(report.problem == "dtlz2");
    REQUIRE(report.rows.size() == 4);
    REQUIRE(report.fronts.size() == 4);
    CHECK(report.rows[0].seed == 1);
    CHECK(report.rows[1].budget == 400);
    CHECK(report.rows[2].seed == 2);

    // a checkpoint at 200 must equal an independent run that stops there
    auto const problem = make_problem("dtlz2");
    for (auto const& r : report.rows) {
        EvolverConfig ecfg = cfg.evolver;
        ecfg.seed = r.seed;
        auto const solo = run(ecfg, *problem, r.budget);
        auto const expected = assess_front(archive_objectives(solo.archive), *problem);
        CHECK(r.metrics.gd == expected.gd);
        CHECK(r.metrics.tol5 == expected.tol5);
        CHECK(r.metrics.spacing == expected.spacing);
        CHECK(r.metrics.n == expected.n);
        CHECK(r.update_counter == solo.trace.update_counter);
        CHECK(r.insert_counter == solo.trace.insert_counter);
    }

    std::vector<SeedRow> first_seed(report.rows.begin(), report.rows.begin() + 2);
    auto const single = summarize(first_seed, cfg.budgets, false);
    CHECK(single[1].gd == first_seed[1].metrics.gd);
    CHECK(single[1].spacing == first_seed[1].metrics.spacing);

    TempDir a("det_a");
    TempDir b("det_b");
    cfg.out_dir = a.path;
    auto const written = write_report(report, cfg);
    CHECK(written.size() == 6);
    cfg.out_dir = b.path;
    auto const again = write_report(run_experiment(cfg), cfg);
    REQUIRE(again.size() == written.size());
    for (std::size_t i = 0; i < written.size(); ++i) {
        CHECK(written[i].filename() == again[i].filename());
        CHECK(slurp(written[i]) == slurp(again[i]));
    }
    CHECK(fs::exists(a.path / "summary_dtlz2_distance.csv"));
    CHECK(fs::exists(a.path / "front_dtlz2_distance_seed2_eval400.txt"));

    std::istringstream front(slurp(a.path / "front_dtlz2_distance_seed1_eval400.txt"));
    auto const members = parse_front(front, 3);
    CHECK(members.size() == report.rows[1].metrics.n);
    CHECK(members.front().design.size() == 12);

    cfg.dump_fronts = false;
    CHECK(run_experiment(cfg).fronts.empty());
}

TEST_CASE("crowding policy experiments")
{
    auto cfg = small_config();
    cfg.policy = ArchivePolicy::crowding;
    auto const report = run_experiment(cfg);
    CHECK(report.policy == ArchivePolicy::crowding);
    for (auto const& r : report.rows) {
        CHECK(r.update_counter == 0);
        CHECK(r.metrics.n <= 30);
    }
    CHECK(summary_file_name("dtlz2", ArchivePolicy::crowding) == "summary_dtlz2_crowding.csv");
}

TEST_CASE("update statistics")
{
    auto cfg = small_config();
    std::vector<std::size_t> const caps { 1, 5, 30 };
    auto const rows = update_stats_experiment(cfg, caps);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].capacity == 1);
    CHECK(rows[0].update_ratio == 0.0);
    for (auto const& r : rows) { CHECK(r.update_ratio >= 0.0); }
    CHECK(format_updates_csv(rows).starts_with("capacity,update_ratio\n1,0.00e+00\n"));
    std::vector<std::size_t> const bad { 5, 0 };
    CHECK_THROWS_AS((void)update_stats_experiment(cfg, bad), config_error);
    CHECK_THROWS_AS((void)update_stats_experiment(cfg, std::vector<std::size_t> {}), config_error);
}

TEST_CASE("unwritable output")
{
    CHECK_THROWS_AS(write_text_file("/nonexistent/dir/file.txt", "x"), io_error);
}

TEST_CASE("summary file equals a recomputation from the rows file")
{
    auto cfg = small_config();
    cfg.evolver.archive_capacity = 10;
    TempDir dir("recompute");
    cfg.out_dir = dir.path;
    (void)write_report(run_experiment(cfg), cfg);

    std::istringstream rows(slurp(dir.path / rows_file_name("dtlz2", ArchivePolicy::distance)));
    std::string line;
    std::getline(rows, line);
    CHECK(line == "seed,budget,n,gd,tol5,spacing,degenerated,update_counter,insert_counter");
    std::vector<SeedRow> parsed;
    while (std::getline(rows, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) { cells.push_back(cell); }
        REQUIRE(cells.size() == 9);
        SeedRow r;
        r.seed = std::stoull(cells[0]);
        r.budget = std::stoull(cells[1]);
        r.metrics.n = std::stoull(cells[2]);
        r.metrics.gd = std::stod(cells[3]);
        r.metrics.tol5 = std::stod(cells[4]);
        r.metrics.spacing = std::stod(cells[5]);
        r.metrics.degenerated = cells[6] == "1";
        r.update_counter = std::stoull(cells[7]);
        r.insert_counter = std::stoull(cells[8]);
        parsed.push_back(r);
    }
    CHECK(parsed.size() == 4);
    CHECK(format_summary_csv(summarize(parsed, cfg.budgets, false))
          == slurp(dir.path / summary_file_name("dtlz2", ArchivePolicy::distance)));
}
