#include "cli.hpp"

#include "ottoref/experiment.hpp"
#include "ottoref/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <vector>

namespace fs = std::filesystem;

namespace ottoref::cli {

namespace {

std::string fmt_omega(double omega)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", omega);
    return buf;
}

std::ofstream open_csv(const fs::path& file)
{
    fs::create_directories(file.parent_path().empty() ? "." : file.parent_path());
    std::ofstream os(file);
    if (!os) throw std::runtime_error("cannot open for writing: " + file.string());
    return os;
}

RunConfig load_or_default(const std::string& config_path)
{
    if (config_path.empty()) return RunConfig::defaults();
    return load_config(config_path);
}

int do_simulate(const RunConfig& cfg, double omega, Mode mode, const fs::path& out, bool quiet)
{
    const RunResult result = run_single(cfg, omega, mode);
    const fs::path traj_file =
        out / ("trajectory_" + to_string(mode) + "_omega" + fmt_omega(omega) + ".csv");
    const fs::path summary_file =
        out / ("summary_" + to_string(mode) + "_omega" + fmt_omega(omega) + ".csv");
    write_trajectory_csv(traj_file, result.trajectory);
    write_summary_csv(summary_file, result.summary);
    if (!quiet) {
        const CycleSummary& s = result.summary;
        std::cout << "mode=" << to_string(mode) << " omega=" << fmt_omega(omega)
                  << " q_c=" << s.q_c << " q_h=" << s.q_h << " work=" << s.work
                  << " eta=" << s.eta << " cycles=" << s.cycles_to_converge << "\n"
                  << "wrote " << traj_file.string() << "\n"
                  << "wrote " << summary_file.string() << "\n";
    }
    return 0;
}

int do_sweep(const RunConfig& cfg, const fs::path& out, bool quiet)
{
    const std::vector<SweepRow> rows = sweep_omega(cfg);
    const fs::path file = out / "sweep_summary.csv";
    write_summary_csv(file, rows);

    int failures = 0;
    for (const SweepRow& row : rows) {
        if (row.summary) continue;
        ++failures;
        std::cerr << "sweep point omega=" << fmt_omega(row.omega) << " mode="
                  << to_string(row.mode) << " failed: " << row.error << "\n";
    }
    if (!quiet)
        std::cout << "wrote " << file.string() << " (" << rows.size() << " rows, " << failures
                  << " failed)\n";
    return failures == 0 ? 0 : 1;
}

int do_validate(const RunConfig& cfg)
{
    const ValidationReport report = validate(cfg);
    for (const ValidationCheck& c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": residual=" << c.residual
                  << " threshold=" << c.threshold;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
    }
    std::cout << (report.all_passed() ? "all checks passed" : "validation FAILED") << "\n";
    return report.all_passed() ? 0 : 1;
}

void write_figure2(const RunConfig& cfg, const fs::path& file)
{
    const std::vector<double> omegas = {0.01, 0.05, 0.1};
    std::ofstream os = open_csv(file);
    os << "omega_t,q";
    for (double w : omegas) os << ",thetadot_omega" << fmt_omega(w) << ",delta_omega" << fmt_omega(w);
    os << "\n";

    const int n = 1000;
    for (int k = 0; k <= n; ++k) {
        const double phase = 2.0 * std::numbers::pi * k / n;
        DriveParams p = cfg.drive;
        p.omega = omegas.front();
        os << format_g17(phase) << ',' << format_g17(drive_q(phase / p.omega, p));
        for (double w : omegas) {
            p.omega = w;
            const double t = phase / w;
            os << ',' << format_g17(theta_dot(t, p)) << ',' << format_g17(delta_ratio(t, p));
        }
        os << "\n";
    }
}

void write_figure_timeseries(const RunConfig& cfg, int id, const fs::path& file, bool quiet)
{
    std::map<Mode, Trajectory> trajs;
    for (Mode mode : cfg.modes) {
        if (id == 4 && mode == Mode::Classical) continue;  // no coherence to plot
        if (!quiet)
            std::cout << "figure " << id << ": converging " << to_string(mode) << " cycle at omega="
                      << fmt_omega(cfg.drive.omega) << "\n";
        trajs.emplace(mode, run_single(cfg, cfg.drive.omega, mode).trajectory);
    }
    if (trajs.empty()) throw std::invalid_argument("figure: no applicable modes in config");

    std::ofstream os = open_csv(file);
    os << "t";
    for (const auto& [mode, traj] : trajs) {
        if (id == 3) os << ",p_e_" << to_string(mode);
        if (id == 4) os << ",coherence_" << to_string(mode);
        if (id == 5) os << ",qdot_h_" << to_string(mode) << ",qdot_c_" << to_string(mode);
    }
    os << "\n";
    const std::size_t n = trajs.begin()->second.size();
    for (std::size_t i = 0; i < n; ++i) {
        os << format_g17(trajs.begin()->second.t[i]);
        for (const auto& [mode, traj] : trajs) {
            const FluxRecord& r = traj.flux[i];
            if (id == 3) os << ',' << format_g17(r.p_e_frame);
            if (id == 4) os << ',' << format_g17(r.coherence);
            if (id == 5) os << ',' << format_g17(r.qdot_h) << ',' << format_g17(r.qdot_c);
        }
        os << "\n";
    }
}

void write_figure_sweep(const RunConfig& cfg, int id, const fs::path& file, bool quiet)
{
    if (!quiet)
        std::cout << "figure " << id << ": sweeping " << cfg.omega_grid.size()
                  << " frequencies\n";
    const std::vector<SweepRow> rows = sweep_omega(cfg);

    std::ofstream os = open_csv(file);
    os << "omega";
    for (Mode mode : cfg.modes) {
        if (id == 6) os << ",pi_c_" << to_string(mode) << ",pi_h_" << to_string(mode);
        if (id == 7) os << ",eta_" << to_string(mode);
    }
    os << "\n";
    for (std::size_t i = 0; i < rows.size(); i += cfg.modes.size()) {
        os << format_g17(rows[i].omega);
        for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
            const auto& s = rows[i + m].summary;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            if (id == 6)
                os << ',' << format_g17(s ? s->pi_c : nan) << ',' << format_g17(s ? s->pi_h : nan);
            if (id == 7) os << ',' << format_g17(s ? s->eta : nan);
        }
        os << "\n";
    }
}

int do_figure(const RunConfig& cfg, int id, const fs::path& out, bool quiet)
{
    const fs::path file = out / ("figure" + std::to_string(id) + ".csv");
    switch (id) {
        case 2: write_figure2(cfg, file); break;
        case 3:
        case 4:
        case 5: write_figure_timeseries(cfg, id, file, quiet); break;
        case 6:
        case 7: write_figure_sweep(cfg, id, file, quiet); break;
        default: throw CLI::ValidationError("--id", "figure id must be one of 2..7");
    }
    if (!quiet) std::cout << "wrote " << file.string() << "\n";
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv)
{
    CLI::App app{"Driven two-level Otto refrigerator simulator"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --config after the subcommand name

    std::string config_path;
    std::string out_dir = "out";
    bool quiet = false, verbose = false;
    app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    auto* qopt = app.add_flag("--quiet", quiet, "suppress progress output");
    app.add_flag("--verbose", verbose, "extra progress output")->excludes(qopt);

    auto* sim = app.add_subcommand("simulate", "converge one limit cycle and dump its trajectory");
    double omega = 0.0;
    std::string mode_name = "original";
    sim->add_option("--omega", omega, "driving frequency (default: config value)");
    sim->add_option("--mode", mode_name, "original|cd|classical")->capture_default_str();
    sim->add_option("--out", out_dir, "output directory")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "per-cycle summaries over the frequency grid");
    sweep->add_option("--out", out_dir, "output directory")->capture_default_str();

    auto* val = app.add_subcommand("validate", "run the physics property suite");

    auto* fig = app.add_subcommand("figure", "emit the data behind one figure");
    int fig_id = 7;
    fig->add_option("--id", fig_id, "figure id (2..7)")->check(CLI::Range(2, 7))
        ->capture_default_str();
    fig->add_option("--out", out_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const RunConfig cfg = load_or_default(config_path);
        if (sim->parsed()) {
            const double w = sim->count("--omega") ? omega : cfg.drive.omega;
            return do_simulate(cfg, w, mode_from_string(mode_name), out_dir, quiet);
        }
        if (sweep->parsed()) return do_sweep(cfg, out_dir, quiet);
        if (val->parsed()) return do_validate(cfg);
        if (fig->parsed()) return do_figure(cfg, fig_id, out_dir, quiet);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace ottoref::cli
