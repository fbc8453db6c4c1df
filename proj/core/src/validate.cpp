#include "ottoref/experiment.hpp"

#include <cmath>
#include <sstream>

namespace ottoref {

namespace {

ValidationCheck make_check(std::string name, double residual, double threshold,
                           std::string detail = "")
{
    return {std::move(name), residual < threshold, residual, threshold, std::move(detail)};
}

double gibbs_stationarity_residual(const RunConfig& cfg)
{
    double worst = 0.0;
    const double half = 0.5 * cfg.drive.period();
    for (const BathParams& b : cfg.baths) {
        const std::vector<BathParams> single{b};
        for (Mode mode : {Mode::Original, Mode::CounterDiabatic}) {
            for (double t : {0.0, half}) {
                const InstantaneousFrame f = eigenframe(t, cfg.drive, mode);
                const Mat2 rho = gibbs_state(b.beta, f);
                const Mat2 rhs = lindblad_rhs(rho, t, cfg.drive, single, mode);
                worst = std::max(worst, frobenius_norm(rhs));
            }
        }
    }
    return worst;
}

struct TrajectoryChecks {
    double state_defect = 0.0;      // worst hermiticity / trace / probability defect
    double positivity_excess = 0.0; // how far the smallest eigenvalue dips below 0
    double first_law_rel = 0.0;     // per-cycle residual relative to the heat scale
};

TrajectoryChecks check_trajectory(const Trajectory& traj)
{
    TrajectoryChecks out;
    for (const auto& rho : traj.rho) {
        out.state_defect = std::max(out.state_defect, hermiticity_defect(rho));
        out.state_defect = std::max(out.state_defect, std::abs(std::real(trace(rho)) - 1.0));
        out.positivity_excess = std::max(out.positivity_excess, -eigvals_hermitian(rho)[0]);
    }
    for (const auto& s : traj.probs) {
        out.state_defect = std::max(out.state_defect, std::abs(s.p_g + s.p_e - 1.0));
        for (double pr : {s.p_g, s.p_e})
            out.state_defect = std::max({out.state_defect, -pr, pr - 1.0});
    }
    const CycleSummary s = summarize_cycle(traj);
    const double scale = std::max(std::abs(s.q_h), std::abs(s.q_c));
    out.first_law_rel = scale > 0.0 ? s.first_law_residual / scale : s.first_law_residual;
    return out;
}

double rate_prefactor_residual(const DriveParams& p, int samples)
{
    double worst = 0.0;
    const double h = p.period() / samples;
    for (int k = 0; k <= samples; ++k) {
        const InstantaneousFrame f = eigenframe(k * h, p, Mode::CounterDiabatic);
        const double algebraic = (f.gap / f.gap_cd) * (f.gap / f.gap_cd);
        worst = std::max(worst, std::abs(std::norm(f.jump_amp) - algebraic));
    }
    return worst;
}

double resonance_selectivity_residual(const RunConfig& cfg)
{
    const double gap0 = gap_of_q(0.0, cfg.drive);
    const double gap1 = gap_of_q(0.5, cfg.drive);
    const double cold = noise_power(gap1, cfg.cold()) / noise_power(gap0, cfg.cold());
    const double hot = noise_power(gap0, cfg.hot()) / noise_power(gap1, cfg.hot());
    return std::max(cold, hot);
}

}  // namespace

double kms_max_residual(const std::function<double(double)>& spectrum, double beta)
{
    double worst = 0.0;
    for (int i = 0; i <= 190; ++i) {
        const double w = 0.1 + 0.01 * i;
        const double expected = std::exp(-beta * w);
        worst = std::max(worst, std::abs(spectrum(-w) / spectrum(w) - expected) / expected);
    }
    return worst;
}

ValidationReport validate(const RunConfig& cfg)
{
    cfg.validate();
    ValidationReport report;

    for (const BathParams& b : cfg.baths) {
        const double res =
            kms_max_residual([&](double w) { return noise_power(w, b); }, b.beta);
        report.checks.push_back(
            make_check("kms_detailed_balance_" + to_string(b.label), res, 1e-12));
    }

    report.checks.push_back(
        make_check("gibbs_stationarity", gibbs_stationarity_residual(cfg), 1e-12));

    for (Mode mode : cfg.modes) {
        const Trajectory traj =
            find_limit_cycle(cfg.drive, cfg.baths, mode, cfg.steps_per_cycle,
                             cfg.limit_cycle_tol, cfg.max_cycles);
        const TrajectoryChecks tc = check_trajectory(traj);
        report.checks.push_back(
            make_check("state_invariants_" + to_string(mode), tc.state_defect, 1e-10));
        if (mode != Mode::Classical)
            report.checks.push_back(
                make_check("positivity_" + to_string(mode), tc.positivity_excess, 1e-8));
        report.checks.push_back(
            make_check("first_law_" + to_string(mode), tc.first_law_rel, 1e-6));
    }

    {
        // Fourth-order convergence is visible at coarse resolution, where the
        // integrator error still dominates the limit-cycle closure floor.
        double residuals[3];
        int i = 0;
        for (int steps : {1250, 2500, 5000}) {
            const Trajectory traj = find_limit_cycle(cfg.drive, cfg.baths, Mode::Original,
                                                     steps, 1e-12, 4 * cfg.max_cycles);
            residuals[i++] = summarize_cycle(traj).first_law_residual;
        }
        const double r1 = residuals[0] / residuals[1];
        const double r2 = residuals[1] / residuals[2];
        const double dev =
            std::max(std::abs(std::log2(r1) - 4.0), std::abs(std::log2(r2) - 4.0));
        std::ostringstream detail;
        detail << "halving ratios " << r1 << ", " << r2;
        report.checks.push_back(
            make_check("first_law_step_halving", dev, 1.0, detail.str()));
    }

    {
        const FidelityPair fid = cd_fidelity_check(cfg.drive, Mode::CounterDiabatic,
                                                   cfg.drive.period(), cfg.steps_per_cycle);
        const double res = 1.0 - std::min(fid.ground, fid.excited);
        report.checks.push_back(make_check("cd_transport_fidelity", res, 1e-8));
    }

    report.checks.push_back(
        make_check("cd_rate_prefactor", rate_prefactor_residual(cfg.drive, 20000), 1e-10));

    report.checks.push_back(
        make_check("resonance_selectivity", resonance_selectivity_residual(cfg), 1e-2));

    return report;
}

}  // namespace ottoref
