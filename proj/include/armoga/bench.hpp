#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "armoga/evolve.hpp"
#include "armoga/metrics.hpp"
#include "armoga/objectives.hpp"

namespace armoga::bench {

enum class ArchivePolicy { distance, crowding };

[[nodiscard]] auto parse_policy(std::string_view name) -> ArchivePolicy;
[[nodiscard]] auto to_string(ArchivePolicy policy) -> std::string;

struct RunConfig {
    std::string problem = "dtlz2";
    ArchivePolicy policy = ArchivePolicy::distance;
    EvolverConfig evolver;
    std::vector<std::size_t> budgets { 4000, 20000, 40000 };
    std::vector<std::uint64_t> seeds;
    std::filesystem::path out_dir = ".";
    bool exclude_degenerated = false;
    bool dump_fronts = true;
    double degeneracy_tau = default_degeneracy_tau;

    // Throws config_error: unknown problem, empty or unordered budgets,
    // repeated seeds, a crowding archive below capacity 2, or an invalid
    // evolver setting.
    void validate() const;
};

// Preset named "<problem>-pop<size>" for dtlz1, dtlz2, dtlz4 and wfg1 with
// population sizes 4, 10 and 20. Throws config_error for other names.
[[nodiscard]] auto profile(std::string_view name) -> RunConfig;
[[nodiscard]] auto profile_names() -> std::vector<std::string>;

// Ordered key=value settings. Keys use either '-' or '_' as separator.
using Settings = std::vector<std::pair<std::string, std::string>>;

// Parses a flat key=value file body; '#' starts a comment, blank lines are
// ignored.
[[nodiscard]] auto parse_settings(std::istream& in) -> Settings;
[[nodiscard]] auto load_settings(std::filesystem::path const& path) -> Settings;

// Applies one setting (anything but "profile") to cfg.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

// Starts from the named profile, or from "<problem>-pop<size>" when the
// settings name none, then applies the remaining settings in order.
[[nodiscard]] auto resolve_config(Settings const& settings) -> RunConfig;

// "20" means seeds 1..20, "3..7" a range, "1,5,9" an explicit list.
[[nodiscard]] auto parse_seeds(std::string_view text) -> std::vector<std::uint64_t>;
[[nodiscard]] auto parse_budgets(std::string_view text) -> std::vector<std::size_t>;

struct SeedRow {
    std::uint64_t seed = 0;
    std::size_t budget = 0;
    FrontAssessment metrics;
    std::uint64_t update_counter = 0;
    std::uint64_t insert_counter = 0;
    double wall_seconds = 0.0; // reported on the console only

    [[nodiscard]] auto update_ratio() const -> double;
};

struct BudgetSummary {
    std::size_t budget = 0;
    double gd = 0.0;
    double tol5 = 0.0;
    double spacing = 0.0;
    double update_ratio = 0.0;
    std::size_t degenerated = 0;
    std::size_t averaged = 0; // rows entering the metric means

    friend auto operator==(BudgetSummary const&, BudgetSummary const&) -> bool = default;
};

struct FrontSnapshot {
    std::uint64_t seed = 0;
    std::size_t budget = 0;
    std::vector<Individual> members;
};

struct RunReport {
    std::string problem;
    ArchivePolicy policy = ArchivePolicy::distance;
    std::vector<SeedRow> rows; // seed-major, budgets ascending
    std::vector<BudgetSummary> summary;
    std::vector<FrontSnapshot> fronts;
};

// Means over the rows of each budget. Metric means skip degenerated rows when
// exclude_degenerated is set and are NaN when no row is left; the update
// ratio always averages every row.
[[nodiscard]] auto summarize(std::span<SeedRow const> rows, std::span<std::size_t const> budgets, bool exclude_degenerated)
    -> std::vector<BudgetSummary>;

// One checkpointed run per seed. Nothing is written.
[[nodiscard]] auto run_experiment(RunConfig const& cfg) -> RunReport;

// Metric rows of the summary table, three significant digits, "-" for NaN.
[[nodiscard]] auto format_summary_csv(std::span<BudgetSummary const> summary) -> std::string;
[[nodiscard]] auto parse_summary_csv(std::istream& in) -> std::vector<BudgetSummary>;

// Per (seed, budget) rows at full precision.
[[nodiscard]] auto format_rows_csv(std::span<SeedRow const> rows) -> std::string;

// One line per member, objectives then design values, sorted by objectives.
[[nodiscard]] auto format_front(std::span<Individual const> members) -> std::string;
[[nodiscard]] auto parse_front(std::istream& in, std::size_t objective_dim) -> std::vector<Individual>;
void dump_front(std::span<Individual const> members, std::filesystem::path const& path);

[[nodiscard]] auto summary_file_name(std::string_view problem, ArchivePolicy policy) -> std::string;
[[nodiscard]] auto rows_file_name(std::string_view problem, ArchivePolicy policy) -> std::string;
[[nodiscard]] auto front_file_name(std::string_view problem, ArchivePolicy policy, std::uint64_t seed, std::size_t budget)
    -> std::string;
[[nodiscard]] auto updates_file_name(std::string_view problem) -> std::string;

// Writes the summary, the per-seed rows and (if enabled) every front dump.
// Returns the paths written.
auto write_report(RunReport const& report, RunConfig const& cfg) -> std::vector<std::filesystem::path>;

struct UpdateRow {
    std::size_t capacity = 0;
    double update_ratio = 0.0; // mean over seeds of update_counter / insert_counter
};

inline constexpr std::array<std::size_t, 6> default_update_capacities { 20, 50, 100, 200, 500, 1000 };

// Distance-policy runs to the last budget of cfg at each archive capacity.
[[nodiscard]] auto update_stats_experiment(RunConfig const& cfg, std::span<std::size_t const> capacities)
    -> std::vector<UpdateRow>;
[[nodiscard]] auto format_updates_csv(std::span<UpdateRow const> rows) -> std::string;

// Writes text to path, replacing it. Throws io_error with the path on failure.
void write_text_file(std::filesystem::path const& path, std::string_view text);

} // namespace armoga::bench
