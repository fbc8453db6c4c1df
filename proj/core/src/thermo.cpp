#include "ottoref/thermo.hpp"

#include "ottoref/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ottoref {

namespace {

double xlnx(double x)
{
    return x > 0.0 ? x * std::log(x) : 0.0;
}

double entropy_of_pair(double p0, double p1)
{
    return -(xlnx(std::clamp(p0, 0.0, 1.0)) + xlnx(std::clamp(p1, 0.0, 1.0)));
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& f)
{
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        acc += 0.5 * (f[i] + f[i + 1]) * (t[i + 1] - t[i]);
    return acc;
}

}  // namespace

std::vector<double> heat_flux(const Mat2& rho, const InstantaneousFrame& frame,
                              std::span<const BathParams> baths)
{
    const bool cd = frame.mode == Mode::CounterDiabatic;
    const double gap_eval = cd ? frame.gap_cd : frame.gap;
    const double pg = std::real(sandwich(frame.eigvec_g, rho, frame.eigvec_g));
    const double pe = std::real(sandwich(frame.eigvec_e, rho, frame.eigvec_e));

    std::vector<double> out;
    out.reserve(baths.size());
    for (const auto& b : baths) {
        const RatePair r = cd ? rates_cd(frame, b) : rates_original(frame, b);
        out.push_back(gap_eval * (r.down * pe - r.up * pg));
    }
    return out;
}

std::vector<double> heat_flux(const ClassicalState& s, const InstantaneousFrame& frame,
                              std::span<const BathParams> baths)
{
    if (frame.mode != Mode::Original)
        throw std::invalid_argument("heat_flux: classical populations pair with an Original frame");
    std::vector<double> out;
    out.reserve(baths.size());
    for (const auto& b : baths) {
        const RatePair r = rates_original(frame, b);
        out.push_back(frame.gap * (r.down * s.p_e - r.up * s.p_g));
    }
    return out;
}

double work_flux(const Mat2& rho, double t, const DriveParams& p, Mode mode)
{
    if (mode == Mode::Classical)
        throw std::invalid_argument("work_flux: use classical_work_flux for the classical mode");
    Mat2 dh = (-p.e0 * drive_qdot(t, p)) * pauli_z();
    if (mode == Mode::CounterDiabatic) dh += theta_ddot(t, p) * pauli_y();
    return std::real(trace(dh * rho));
}

double classical_work_flux(const ClassicalState& s, double t, const DriveParams& p)
{
    return 0.5 * (s.p_e - s.p_g) * gap_dot(t, p);
}

double von_neumann_entropy(const Mat2& rho)
{
    const auto ev = eigvals_hermitian(rho);
    return entropy_of_pair(ev[0], ev[1]);
}

double coherence(const Mat2& rho, const InstantaneousFrame& basis)
{
    const double dg = std::real(sandwich(basis.eigvec_g, rho, basis.eigvec_g));
    const double de = std::real(sandwich(basis.eigvec_e, rho, basis.eigvec_e));
    const double c = entropy_of_pair(dg, de) - von_neumann_entropy(rho);
    // mathematically >= 0; clip the rounding fuzz of diagonal states
    return std::max(c, 0.0);
}

double internal_energy(const Mat2& rho, const InstantaneousFrame& frame)
{
    const double gap_eval = frame.mode == Mode::CounterDiabatic ? frame.gap_cd : frame.gap;
    const double pg = std::real(sandwich(frame.eigvec_g, rho, frame.eigvec_g));
    const double pe = std::real(sandwich(frame.eigvec_e, rho, frame.eigvec_e));
    return 0.5 * gap_eval * (pe - pg);
}

double internal_energy(const ClassicalState& s, const InstantaneousFrame& frame)
{
    return 0.5 * frame.gap * (s.p_e - s.p_g);
}

FluxRecord make_flux_record(double t, const Mat2& rho, const DriveParams& p,
                            std::span<const BathParams> baths, Mode mode)
{
    const InstantaneousFrame fm = eigenframe(t, p, mode);
    const InstantaneousFrame fo =
        (mode == Mode::Original) ? fm : eigenframe(t, p, Mode::Original);

    FluxRecord rec;
    rec.t = t;
    rec.q = fm.q;
    rec.thetadot = fm.thetadot;
    rec.delta = fm.delta;
    rec.p_e_frame = std::real(sandwich(fo.eigvec_e, rho, fo.eigvec_e));
    rec.coherence = coherence(rho, fo);
    const auto flux = heat_flux(rho, fm, baths);
    for (std::size_t i = 0; i < baths.size(); ++i) {
        if (baths[i].label == BathLabel::Cold) rec.qdot_c += flux[i];
        else rec.qdot_h += flux[i];
    }
    rec.wdot = work_flux(rho, t, p, mode);
    rec.energy = internal_energy(rho, fm);
    return rec;
}

FluxRecord make_flux_record(double t, const ClassicalState& s, const DriveParams& p,
                            std::span<const BathParams> baths)
{
    const InstantaneousFrame fo = eigenframe(t, p, Mode::Original);

    FluxRecord rec;
    rec.t = t;
    rec.q = fo.q;
    rec.thetadot = fo.thetadot;
    rec.delta = fo.delta;
    rec.p_e_frame = s.p_e;
    rec.coherence = 0.0;
    const auto flux = heat_flux(s, fo, baths);
    for (std::size_t i = 0; i < baths.size(); ++i) {
        if (baths[i].label == BathLabel::Cold) rec.qdot_c += flux[i];
        else rec.qdot_h += flux[i];
    }
    rec.wdot = classical_work_flux(s, t, p);
    rec.energy = internal_energy(s, fo);
    return rec;
}

CycleSummary summarize_cycle(const Trajectory& traj)
{
    if (traj.size() < 2) throw std::invalid_argument("summarize_cycle: trajectory too short");

    std::vector<double> qc(traj.size()), qh(traj.size()), wd(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        qc[i] = traj.flux[i].qdot_c;
        qh[i] = traj.flux[i].qdot_h;
        wd[i] = traj.flux[i].wdot;
    }

    CycleSummary s;
    s.omega = traj.drive.omega;
    s.mode = traj.mode;
    s.q_c = trapezoid(traj.t, qc);
    s.q_h = trapezoid(traj.t, qh);
    s.work = trapezoid(traj.t, wd);
    const double total = s.q_h + s.q_c;
    s.eta = std::abs(total) < 1e-12 ? std::numeric_limits<double>::quiet_NaN() : -s.q_c / total;
    const double period = traj.drive.period();
    s.pi_c = s.q_c / period;
    s.pi_h = s.q_h / period;
    s.first_law_residual = std::abs(s.work - total);
    s.cycles_to_converge = traj.convergence.cycles;
    return s;
}

double otto_coefficient(const BathParams& cold, const BathParams& hot)
{
    return 1.0 / (hot.omega_r / cold.omega_r - 1.0);
}

double carnot_coefficient(const BathParams& cold, const BathParams& hot)
{
    return 1.0 / (cold.beta / hot.beta - 1.0);
}

}  // namespace ottoref
