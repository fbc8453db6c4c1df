#pragma once

#include "ottoref/dynamics.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ottoref {

/// One full experiment description. Defaults reproduce the reference
/// parameter set: a = 2, e0 = 1, delta = 0.12, T_cold = 0.15, T_hot = 0.3,
/// g = 1 and Q = 30 for both baths, resonances tied to the drive endpoints.
struct RunConfig {
    DriveParams drive;
    std::vector<BathParams> baths;  // exactly one Cold and one Hot
    std::vector<Mode> modes = {Mode::Original, Mode::CounterDiabatic, Mode::Classical};
    int steps_per_cycle = 20000;
    double limit_cycle_tol = 1e-9;
    int max_cycles = 200;
    std::vector<double> omega_grid;  // strictly positive, sorted ascending

    static RunConfig defaults();

    const BathParams& cold() const;
    const BathParams& hot() const;

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// Parse a JSON config; absent keys keep their defaults, unknown keys are
/// rejected. Recognized keys: e0, delta, a, omega, baths (array of
/// {label, omega_r, quality, coupling, beta}), steps_per_cycle,
/// limit_cycle_tol, max_cycles, omega_grid, modes.
RunConfig load_config(const std::filesystem::path& file);

struct RunResult {
    Trajectory trajectory;
    CycleSummary summary;
};

/// Find the limit cycle at the given frequency and mode and summarize it.
RunResult run_single(const RunConfig& cfg, double omega, Mode mode);

/// One sweep grid point. A failed point carries the error text and no summary.
struct SweepRow {
    double omega = 0.0;
    Mode mode = Mode::Original;
    std::optional<CycleSummary> summary;
    std::string error;
};

/// All (omega, mode) pairs of the config, in grid-major then config-mode
/// order. Points run in parallel (capped by `workers`, or by the
/// OTTO_CD_WORKERS environment variable when workers == 0); failures are
/// recorded per row and never abort the sweep. Row order is deterministic.
std::vector<SweepRow> sweep_omega(const RunConfig& cfg, int workers = 0);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    double residual = 0.0;   // measured worst-case value
    double threshold = 0.0;  // residual must stay below this
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
};

/// Full property suite: detailed balance, Gibbs stationarity, state-space
/// invariants along trajectories, first law at default resolution and its
/// fourth-order improvement under step halving, closed-system transport
/// fidelity, jump-amplitude prefactor equality, and resonance selectivity.
ValidationReport validate(const RunConfig& cfg);

/// Worst relative detailed-balance violation of `spectrum` over
/// omega in [0.1, 2]: |S(-w)/S(w) - exp(-beta w)| / exp(-beta w).
/// Exposed so a deliberately corrupted spectrum can be shown to fail.
double kms_max_residual(const std::function<double(double)>& spectrum, double beta);

}  // namespace ottoref
