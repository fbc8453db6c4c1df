#include "ottoref/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <thread>

namespace ottoref {

RunConfig RunConfig::defaults()
{
    RunConfig cfg;
    cfg.drive = DriveParams{};
    cfg.baths = {default_cold_bath(cfg.drive), default_hot_bath(cfg.drive)};
    // 24 log-spaced frequencies bracketing the studied range
    const double lo = 0.005, hi = 0.15;
    const int n = 24;
    for (int i = 0; i < n; ++i)
        cfg.omega_grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return cfg;
}

const BathParams& RunConfig::cold() const
{
    for (const auto& b : baths)
        if (b.label == BathLabel::Cold) return b;
    throw std::invalid_argument("config: no cold bath");
}

const BathParams& RunConfig::hot() const
{
    for (const auto& b : baths)
        if (b.label == BathLabel::Hot) return b;
    throw std::invalid_argument("config: no hot bath");
}

void RunConfig::validate() const
{
    drive.validate();
    if (baths.size() != 2)
        throw std::invalid_argument("config: exactly two baths (one cold, one hot) required");
    const int n_cold = static_cast<int>(std::count_if(
        baths.begin(), baths.end(), [](const BathParams& b) { return b.label == BathLabel::Cold; }));
    if (n_cold != 1)
        throw std::invalid_argument("config: exactly one cold and one hot bath required");
    for (const auto& b : baths) b.validate();
    if (modes.empty()) throw std::invalid_argument("config: modes must not be empty");
    if (steps_per_cycle < 1) throw std::invalid_argument("config: steps_per_cycle must be >= 1");
    if (!(limit_cycle_tol > 0.0)) throw std::invalid_argument("config: limit_cycle_tol must be > 0");
    if (max_cycles < 1) throw std::invalid_argument("config: max_cycles must be >= 1");
    if (omega_grid.empty()) throw std::invalid_argument("config: omega_grid must not be empty");
    for (double w : omega_grid)
        if (!(w > 0.0)) throw std::invalid_argument("config: omega_grid entries must be > 0");
    if (!std::is_sorted(omega_grid.begin(), omega_grid.end()))
        throw std::invalid_argument("config: omega_grid must be sorted ascending");
}

namespace {

using nlohmann::json;

BathParams bath_from_json(const json& j, const DriveParams& drive)
{
    static const std::vector<std::string> known = {"label", "omega_r", "quality", "coupling",
                                                   "beta"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("config: unknown bath key '" + key + "'");

    const BathLabel label = bath_label_from_string(j.at("label").get<std::string>());
    BathParams b = label == BathLabel::Cold ? default_cold_bath(drive) : default_hot_bath(drive);
    if (j.contains("omega_r")) b.omega_r = j["omega_r"].get<double>();
    if (j.contains("quality")) b.quality = j["quality"].get<double>();
    if (j.contains("coupling")) b.coupling = j["coupling"].get<double>();
    if (j.contains("beta")) b.beta = j["beta"].get<double>();
    return b;
}

}  // namespace

RunConfig load_config(const std::filesystem::path& file)
{
    std::ifstream is(file);
    if (!is) throw std::invalid_argument("config: cannot open " + file.string());
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: " + file.string() + ": " + e.what());
    }

    static const std::vector<std::string> known = {
        "e0",         "delta",           "a",          "omega",      "baths",
        "steps_per_cycle", "limit_cycle_tol", "max_cycles", "omega_grid", "modes"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("config: unknown key '" + key + "'");

    RunConfig cfg = RunConfig::defaults();
    if (j.contains("e0")) cfg.drive.e0 = j["e0"].get<double>();
    if (j.contains("delta")) cfg.drive.delta = j["delta"].get<double>();
    if (j.contains("a")) cfg.drive.a = j["a"].get<double>();
    if (j.contains("omega")) cfg.drive.omega = j["omega"].get<double>();
    // re-tie default resonances to the possibly overridden drive
    cfg.baths = {default_cold_bath(cfg.drive), default_hot_bath(cfg.drive)};
    if (j.contains("baths")) {
        cfg.baths.clear();
        for (const auto& jb : j["baths"]) cfg.baths.push_back(bath_from_json(jb, cfg.drive));
    }
    if (j.contains("steps_per_cycle")) cfg.steps_per_cycle = j["steps_per_cycle"].get<int>();
    if (j.contains("limit_cycle_tol")) cfg.limit_cycle_tol = j["limit_cycle_tol"].get<double>();
    if (j.contains("max_cycles")) cfg.max_cycles = j["max_cycles"].get<int>();
    if (j.contains("omega_grid")) cfg.omega_grid = j["omega_grid"].get<std::vector<double>>();
    if (j.contains("modes")) {
        cfg.modes.clear();
        for (const auto& m : j["modes"]) cfg.modes.push_back(mode_from_string(m.get<std::string>()));
    }
    cfg.validate();
    return cfg;
}

RunResult run_single(const RunConfig& cfg, double omega, Mode mode)
{
    cfg.validate();
    DriveParams drive = cfg.drive;
    drive.omega = omega;

    Trajectory traj = find_limit_cycle(drive, cfg.baths, mode, cfg.steps_per_cycle,
                                       cfg.limit_cycle_tol, cfg.max_cycles);
    CycleSummary summary = summarize_cycle(traj);
    return {std::move(traj), summary};
}

namespace {

int resolve_workers(int workers, std::size_t jobs)
{
    if (workers <= 0) {
        if (const char* env = std::getenv("OTTO_CD_WORKERS")) workers = std::atoi(env);
    }
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
    return static_cast<int>(std::min<std::size_t>(workers, jobs));
}

}  // namespace

std::vector<SweepRow> sweep_omega(const RunConfig& cfg, int workers)
{
    cfg.validate();

    std::vector<SweepRow> rows;
    for (double omega : cfg.omega_grid)
        for (Mode mode : cfg.modes) rows.push_back({omega, mode, std::nullopt, ""});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
            try {
                rows[i].summary = run_single(cfg, rows[i].omega, rows[i].mode).summary;
            } catch (const std::exception& e) {
                rows[i].error = e.what();
            }
        }
    };

    const int n_workers = resolve_workers(workers, rows.size());
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

bool ValidationReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.passed; });
}

}  // namespace ottoref
