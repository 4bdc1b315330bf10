#include "armoga/bench.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>

#include "armoga/error.hpp"
#include "armoga/problems.hpp"

namespace armoga::bench {

namespace {

auto trim(std::string_view s) -> std::string_view
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) { s.remove_prefix(1); }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) { s.remove_suffix(1); }
    return s;
}

auto lower(std::string_view s) -> std::string
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

auto normalize_key(std::string_view key) -> std::string
{
    std::string k = lower(trim(key));
    while (k.starts_with("-")) { k.erase(0, 1); }
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

auto split(std::string_view s, char sep) -> std::vector<std::string_view>
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto const pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) { break; }
        start = pos + 1;
    }
    return parts;
}

template <typename T>
auto parse_number(std::string_view text, std::string_view what) -> T
{
    text = trim(text);
    T value {};
    auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc {} || ptr != text.data() + text.size() || text.empty()) {
        throw config_error(std::string(what) + ": cannot parse '" + std::string(text) + "'");
    }
    return value;
}

auto parse_bool(std::string_view text, std::string_view what) -> bool
{
    auto const v = lower(trim(text));
    if (v == "1" || v == "true" || v == "yes" || v == "on") { return true; }
    if (v == "0" || v == "false" || v == "no" || v == "off") { return false; }
    throw config_error(std::string(what) + ": expected a boolean, got '" + std::string(text) + "'");
}

auto format_sci(double v) -> std::string
{
    if (std::isnan(v)) { return "-"; }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

auto format_full(double v) -> std::string
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

auto parse_cell(std::string_view cell) -> double
{
    cell = trim(cell);
    if (cell == "-") { return std::numeric_limits<double>::quiet_NaN(); }
    double v = 0.0;
    auto const [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc {} || ptr != cell.data() + cell.size()) {
        throw io_error("summary table: bad number '" + std::string(cell) + "'");
    }
    return v;
}

struct ProfileSpec {
    std::string_view problem;
    double sigma_min;
    std::vector<std::size_t> budgets;
    std::size_t reinit_period_small; // population of 4
};

auto profile_specs() -> std::vector<ProfileSpec> const&
{
    static std::vector<ProfileSpec> const specs {
        { "dtlz1", 0.8, { 4000, 20000, 40000, 100000, 200000 }, 1 },
        { "dtlz2", 0.005, { 4000, 20000, 40000 }, 1 },
        { "dtlz4", 0.005, { 4000, 20000, 40000 }, 1 },
        { "wfg1", 0.8, { 4000, 20000, 40000, 100000, 200000, 1000000, 2000000 }, 4 },
    };
    return specs;
}

constexpr std::array<std::size_t, 3> profile_populations { 4, 10, 20 };

template <typename Archive>
void collect_seed(RunConfig const& cfg, Problem const& problem, Archive archive, std::uint64_t seed, RunReport& report)
{
    EvolverConfig ecfg = cfg.evolver;
    ecfg.seed = seed;
    auto const start = std::chrono::steady_clock::now();
    run_with_checkpoints(ecfg, problem, std::move(archive), std::span<std::size_t const>(cfg.budgets),
                         [&](std::size_t budget, Evolver<Archive> const& evolver) {
                             auto const& a = evolver.archive();
                             SeedRow row;
                             row.seed = seed;
                             row.budget = budget;
                             row.metrics = assess_front(archive_objectives(a), problem, cfg.degeneracy_tau);
                             row.update_counter = a.update_counter();
                             row.insert_counter = a.insert_counter();
                             row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                             report.rows.push_back(row);
                             if (cfg.dump_fronts) {
                                 FrontSnapshot snap { seed, budget, {} };
                                 for (std::size_t i = 0; i < a.size(); ++i) { snap.members.push_back(a.individual(i)); }
                                 report.fronts.push_back(std::move(snap));
                             }
                         });
}

} // namespace

auto parse_policy(std::string_view name) -> ArchivePolicy
{
    auto const n = lower(trim(name));
    if (n == "distance") { return ArchivePolicy::distance; }
    if (n == "crowding") { return ArchivePolicy::crowding; }
    throw config_error("unknown archive policy '" + std::string(name) + "' (expected distance or crowding)");
}

auto to_string(ArchivePolicy policy) -> std::string
{
    return policy == ArchivePolicy::distance ? "distance" : "crowding";
}

void RunConfig::validate() const
{
    (void)make_problem(problem);
    if (budgets.empty()) { throw config_error("at least one evaluation budget is required"); }
    for (std::size_t i = 1; i < budgets.size(); ++i) {
        if (budgets[i] <= budgets[i - 1]) { throw config_error("budgets must be strictly increasing"); }
    }
    if (budgets.front() < evolver.population_size) { throw config_error("budgets must be at least the population size"); }
    if (seeds.empty()) { throw config_error("at least one seed is required"); }
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw config_error("seeds must be distinct");
    }
    if (!(degeneracy_tau >= 0.0 && degeneracy_tau <= 1.0)) { throw config_error("degeneracy threshold must lie in [0, 1]"); }
    if (policy == ArchivePolicy::crowding && evolver.archive_capacity < 2) {
        throw config_error("the crowding archive needs a capacity of at least 2");
    }
    try {
        evolver.validate();
    } catch (contract_error const& e) {
        throw config_error(e.what());
    }
}

auto profile_names() -> std::vector<std::string>
{
    std::vector<std::string> names;
    for (auto const& spec : profile_specs()) {
        for (auto pop : profile_populations) { names.push_back(std::string(spec.problem) + "-pop" + std::to_string(pop)); }
    }
    return names;
}

auto profile(std::string_view name) -> RunConfig
{
    auto const wanted = lower(trim(name));
    for (auto const& spec : profile_specs()) {
        for (std::size_t i = 0; i < profile_populations.size(); ++i) {
            std::size_t const pop = profile_populations[i];
            if (wanted != std::string(spec.problem) + "-pop" + std::to_string(pop)) { continue; }
            RunConfig cfg;
            cfg.problem = std::string(spec.problem);
            cfg.budgets = spec.budgets;
            cfg.seeds = parse_seeds("20");
            cfg.evolver.population_size = pop;
            cfg.evolver.archive_capacity = 100;
            cfg.evolver.reinit_period = pop == 4 ? spec.reinit_period_small : 3;
            cfg.evolver.elites_on_reinit = 2 * (i + 1);
            cfg.evolver.delta = 1.4;
            cfg.evolver.sigma_min = spec.sigma_min;
            cfg.evolver.recombination_probability = 1.0;
            return cfg;
        }
    }
    throw config_error("unknown profile '" + std::string(name) + "'");
}

auto parse_seeds(std::string_view text) -> std::vector<std::uint64_t>
{
    text = trim(text);
    std::vector<std::uint64_t> seeds;
    if (auto const dots = text.find(".."); dots != std::string_view::npos) {
        auto const first = parse_number<std::uint64_t>(text.substr(0, dots), "seeds");
        auto const last = parse_number<std::uint64_t>(text.substr(dots + 2), "seeds");
        if (last < first) { throw config_error("seeds: empty range '" + std::string(text) + "'"); }
        for (auto s = first; s <= last; ++s) { seeds.push_back(s); }
        return seeds;
    }
    if (text.find(',') == std::string_view::npos) {
        auto const count = parse_number<std::uint64_t>(text, "seeds");
        for (std::uint64_t s = 1; s <= count; ++s) { seeds.push_back(s); }
        return seeds;
    }
    for (auto part : split(text, ',')) { seeds.push_back(parse_number<std::uint64_t>(part, "seeds")); }
    return seeds;
}

auto parse_budgets(std::string_view text) -> std::vector<std::size_t>
{
    std::vector<std::size_t> budgets;
    for (auto part : split(text, ',')) { budgets.push_back(parse_number<std::size_t>(part, "budgets")); }
    return budgets;
}

auto parse_settings(std::istream& in) -> Settings
{
    Settings settings;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (auto const hash = view.find('#'); hash != std::string_view::npos) { view = view.substr(0, hash); }
        view = trim(view);
        if (view.empty()) { continue; }
        auto const eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw config_error("line " + std::to_string(line_no) + ": expected key = value");
        }
        settings.emplace_back(normalize_key(view.substr(0, eq)), std::string(trim(view.substr(eq + 1))));
    }
    return settings;
}

auto load_settings(std::filesystem::path const& path) -> Settings
{
    std::ifstream in(path);
    if (!in) { throw io_error("cannot open config file " + path.string()); }
    try {
        return parse_settings(in);
    } catch (config_error const& e) {
        throw config_error(path.string() + ": " + e.what());
    }
}

void apply_setting(RunConfig& cfg, std::string_view raw_key, std::string_view value)
{
    auto const key = normalize_key(raw_key);
    auto& ev = cfg.evolver;
    if (key == "problem") {
        cfg.problem = make_problem(value)->name();
    } else if (key == "policy") {
        cfg.policy = parse_policy(value);
    } else if (key == "pop") {
        ev.population_size = parse_number<std::size_t>(value, key);
    } else if (key == "archive-size") {
        ev.archive_capacity = parse_number<std::size_t>(value, key);
    } else if (key == "budgets") {
        cfg.budgets = parse_budgets(value);
    } else if (key == "seeds") {
        cfg.seeds = parse_seeds(value);
    } else if (key == "sigma-min") {
        ev.sigma_min = parse_number<double>(value, key);
    } else if (key == "delta") {
        ev.delta = parse_number<double>(value, key);
    } else if (key == "reinit-period") {
        ev.reinit_period = parse_number<std::size_t>(value, key);
    } else if (key == "elites") {
        ev.elites_on_reinit = parse_number<std::size_t>(value, key);
    } else if (key == "recombination") {
        ev.recombination_probability = parse_number<double>(value, key);
    } else if (key == "out") {
        cfg.out_dir = std::string(trim(value));
    } else if (key == "exclude-degenerated") {
        cfg.exclude_degenerated = parse_bool(value, key);
    } else if (key == "dump-fronts") {
        cfg.dump_fronts = parse_bool(value, key);
    } else if (key == "tau") {
        cfg.degeneracy_tau = parse_number<double>(value, key);
    } else {
        throw config_error("unknown setting '" + std::string(raw_key) + "'");
    }
}

auto resolve_config(Settings const& settings) -> RunConfig
{
    std::string base;
    std::string problem = "dtlz2";
    std::string pop = "4";
    for (auto const& [key, value] : settings) {
        auto const k = normalize_key(key);
        if (k == "profile") { base = value; }
        if (k == "problem") { problem = make_problem(value)->name(); }
        if (k == "pop") { pop = std::string(trim(value)); }
    }
    if (base.empty()) {
        auto const names = profile_names();
        base = problem + "-pop" + pop;
        if (std::find(names.begin(), names.end(), base) == names.end()) { base = problem + "-pop4"; }
    }
    RunConfig cfg = profile(base);
    for (auto const& [key, value] : settings) {
        if (normalize_key(key) != "profile") { apply_setting(cfg, key, value); }
    }
    return cfg;
}

auto SeedRow::update_ratio() const -> double
{
    return insert_counter == 0 ? 0.0 : static_cast<double>(update_counter) / static_cast<double>(insert_counter);
}

auto summarize(std::span<SeedRow const> rows, std::span<std::size_t const> budgets, bool exclude_degenerated)
    -> std::vector<BudgetSummary>
{
    std::vector<BudgetSummary> out;
    for (std::size_t budget : budgets) {
        BudgetSummary s;
        s.budget = budget;
        std::size_t total = 0;
        for (auto const& row : rows) {
            if (row.budget != budget) { continue; }
            ++total;
            s.update_ratio += row.update_ratio();
            if (row.metrics.degenerated) { ++s.degenerated; }
            if (exclude_degenerated && row.metrics.degenerated) { continue; }
            ++s.averaged;
            s.gd += row.metrics.gd;
            s.tol5 += row.metrics.tol5;
            s.spacing += row.metrics.spacing;
        }
        double const nan = std::numeric_limits<double>::quiet_NaN();
        auto const averaged = static_cast<double>(s.averaged);
        s.gd = s.averaged > 0 ? s.gd / averaged : nan;
        s.tol5 = s.averaged > 0 ? s.tol5 / averaged : nan;
        s.spacing = s.averaged > 0 ? s.spacing / averaged : nan;
        s.update_ratio = total > 0 ? s.update_ratio / static_cast<double>(total) : nan;
        out.push_back(s);
    }
    return out;
}

auto run_experiment(RunConfig const& cfg) -> RunReport
{
    cfg.validate();
    auto const problem = make_problem(cfg.problem);
    RunReport report;
    report.problem = problem->name();
    report.policy = cfg.policy;
    for (auto seed : cfg.seeds) {
        if (cfg.policy == ArchivePolicy::distance) {
            collect_seed(cfg, *problem, ParetoArchive(cfg.evolver.archive_capacity), seed, report);
        } else {
            collect_seed(cfg, *problem, CrowdingArchive(cfg.evolver.archive_capacity), seed, report);
        }
    }
    report.summary = summarize(report.rows, cfg.budgets, cfg.exclude_degenerated);
    return report;
}

auto format_summary_csv(std::span<BudgetSummary const> summary) -> std::string
{
    std::string out = "metric";
    for (auto const& s : summary) { out += "," + std::to_string(s.budget); }
    out += '\n';
    auto metric_row = [&](std::string_view name, auto field) {
        out += name;
        for (auto const& s : summary) { out += "," + field(s); }
        out += '\n';
    };
    metric_row("GD", [](BudgetSummary const& s) { return format_sci(s.gd); });
    metric_row("TOL5", [](BudgetSummary const& s) { return format_sci(s.tol5); });
    metric_row("spacing", [](BudgetSummary const& s) { return format_sci(s.spacing); });
    metric_row("degenerated", [](BudgetSummary const& s) { return std::to_string(s.degenerated); });
    metric_row("averaged", [](BudgetSummary const& s) { return std::to_string(s.averaged); });
    metric_row("update_ratio", [](BudgetSummary const& s) { return format_sci(s.update_ratio); });
    return out;
}

auto parse_summary_csv(std::istream& in) -> std::vector<BudgetSummary>
{
    std::string line;
    if (!std::getline(in, line)) { throw io_error("summary table: missing header"); }
    auto header = split(line, ',');
    if (header.empty() || header.front() != "metric") { throw io_error("summary table: bad header"); }
    std::vector<BudgetSummary> out(header.size() - 1);
    for (std::size_t c = 1; c < header.size(); ++c) {
        out[c - 1].budget = static_cast<std::size_t>(parse_cell(header[c]));
    }
    while (std::getline(in, line)) {
        if (trim(line).empty()) { continue; }
        auto cells = split(line, ',');
        if (cells.size() != header.size()) { throw io_error("summary table: ragged row '" + line + "'"); }
        auto const name = cells.front();
        for (std::size_t c = 1; c < cells.size(); ++c) {
            auto& s = out[c - 1];
            double const v = parse_cell(cells[c]);
            if (name == "GD") {
                s.gd = v;
            } else if (name == "TOL5") {
                s.tol5 = v;
            } else if (name == "spacing") {
                s.spacing = v;
            } else if (name == "degenerated") {
                s.degenerated = static_cast<std::size_t>(v);
            } else if (name == "averaged") {
                s.averaged = static_cast<std::size_t>(v);
            } else if (name == "update_ratio") {
                s.update_ratio = v;
            } else {
                throw io_error("summary table: unknown metric '" + std::string(name) + "'");
            }
        }
    }
    return out;
}

auto format_rows_csv(std::span<SeedRow const> rows) -> std::string
{
    std::string out = "seed,budget,n,gd,tol5,spacing,degenerated,update_counter,insert_counter\n";
    for (auto const& r : rows) {
        out += std::to_string(r.seed) + ',' + std::to_string(r.budget) + ',' + std::to_string(r.metrics.n) + ','
             + format_full(r.metrics.gd) + ',' + format_full(r.metrics.tol5) + ',' + format_full(r.metrics.spacing) + ','
             + (r.metrics.degenerated ? "1" : "0") + ',' + std::to_string(r.update_counter) + ','
             + std::to_string(r.insert_counter) + '\n';
    }
    return out;
}

auto format_front(std::span<Individual const> members) -> std::string
{
    std::vector<Individual const*> order;
    order.reserve(members.size());
    for (auto const& m : members) { order.push_back(&m); }
    std::sort(order.begin(), order.end(), [](Individual const* a, Individual const* b) {
        auto const fa = a->objectives.values();
        auto const fb = b->objectives.values();
        if (std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end())) { return true; }
        if (std::lexicographical_compare(fb.begin(), fb.end(), fa.begin(), fa.end())) { return false; }
        return a->design < b->design;
    });
    std::string out;
    for (auto const* m : order) {
        std::string line;
        for (double f : m->objectives) { line += (line.empty() ? "" : " ") + format_full(f); }
        for (double x : m->design) { line += ' ' + format_full(x); }
        out += line + '\n';
    }
    return out;
}

auto parse_front(std::istream& in, std::size_t objective_dim) -> std::vector<Individual>
{
    std::vector<Individual> members;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) { continue; }
        std::istringstream fields(line);
        std::vector<double> values;
        std::string token;
        while (fields >> token) {
            double v = 0.0;
            auto const [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc {} || ptr != token.data() + token.size()) {
                throw io_error("front dump: bad number '" + token + "'");
            }
            values.push_back(v);
        }
        if (values.size() < objective_dim) { throw io_error("front dump: short line '" + line + "'"); }
        Individual ind;
        ind.objectives = ObjectiveVector(std::vector<double>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(objective_dim)));
        ind.design.assign(values.begin() + static_cast<std::ptrdiff_t>(objective_dim), values.end());
        members.push_back(std::move(ind));
    }
    return members;
}

void write_text_file(std::filesystem::path const& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) { throw io_error("cannot open " + path.string() + " for writing"); }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) { throw io_error("failed writing " + path.string()); }
}

void dump_front(std::span<Individual const> members, std::filesystem::path const& path)
{
    require(!members.empty(), "dump_front: empty archive");
    write_text_file(path, format_front(members));
}

auto summary_file_name(std::string_view problem, ArchivePolicy policy) -> std::string
{
    return "summary_" + std::string(problem) + "_" + to_string(policy) + ".csv";
}

auto rows_file_name(std::string_view problem, ArchivePolicy policy) -> std::string
{
    return "rows_" + std::string(problem) + "_" + to_string(policy) + ".csv";
}

auto front_file_name(std::string_view problem, ArchivePolicy policy, std::uint64_t seed, std::size_t budget) -> std::string
{
    return "front_" + std::string(problem) + "_" + to_string(policy) + "_seed" + std::to_string(seed) + "_eval"
         + std::to_string(budget) + ".txt";
}

auto updates_file_name(std::string_view problem) -> std::string
{
    return "updates_" + std::string(problem) + ".csv";
}

auto write_report(RunReport const& report, RunConfig const& cfg) -> std::vector<std::filesystem::path>
{
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) { throw io_error("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message()); }

    std::vector<std::filesystem::path> written;
    auto put = [&](std::string const& name, std::string_view text) {
        auto path = cfg.out_dir / name;
        write_text_file(path, text);
        written.push_back(std::move(path));
    };
    put(summary_file_name(report.problem, report.policy), format_summary_csv(report.summary));
    put(rows_file_name(report.problem, report.policy), format_rows_csv(report.rows));
    for (auto const& snap : report.fronts) {
        put(front_file_name(report.problem, report.policy, snap.seed, snap.budget), format_front(snap.members));
    }
    return written;
}

auto update_stats_experiment(RunConfig const& cfg, std::span<std::size_t const> capacities) -> std::vector<UpdateRow>
{
    cfg.validate();
    if (capacities.empty()) { throw config_error("at least one archive capacity is required"); }
    auto const problem = make_problem(cfg.problem);
    for (std::size_t capacity : capacities) {
        if (capacity == 0) { throw config_error("archive capacity must be positive"); }
    }
    std::vector<UpdateRow> rows;
    for (std::size_t capacity : capacities) {
        EvolverConfig ecfg = cfg.evolver;
        ecfg.archive_capacity = capacity;
        double sum = 0.0;
        for (auto seed : cfg.seeds) {
            ecfg.seed = seed;
            auto const result = run(ecfg, *problem, cfg.budgets.back());
            SeedRow r;
            r.update_counter = result.trace.update_counter;
            r.insert_counter = result.trace.insert_counter;
            sum += r.update_ratio();
        }
        rows.push_back({ capacity, sum / static_cast<double>(cfg.seeds.size()) });
    }
    return rows;
}

auto format_updates_csv(std::span<UpdateRow const> rows) -> std::string
{
    std::string out = "capacity,update_ratio\n";
    for (auto const& r : rows) { out += std::to_string(r.capacity) + ',' + format_sci(r.update_ratio) + '\n'; }
    return out;
}

} // namespace armoga::bench
