#pragma once

#include "ottoref/bath.hpp"
#include "ottoref/model.hpp"

#include <span>
#include <vector>

namespace ottoref {

struct Trajectory;

/// Populations of the two-level rate equation; p_g + p_e = 1.
struct ClassicalState {
    double p_g = 1.0;
    double p_e = 0.0;
};

/// Instantaneous observables along a trajectory. Heat fluxes are positive
/// when energy flows from the system into the bath.
struct FluxRecord {
    double t = 0.0;
    double q = 0.0;
    double thetadot = 0.0;
    double delta = 0.0;      // thetadot / gap
    double p_e_frame = 0.0;  // excited-state population in the bare eigenbasis
    double coherence = 0.0;  // relative entropy of coherence, nats
    double qdot_c = 0.0;     // heat flux to the cold bath
    double qdot_h = 0.0;     // heat flux to the hot bath
    double wdot = 0.0;       // work flux
    double energy = 0.0;     // Tr[H rho]
};

/// Integrated heats, work, powers and efficiency over one converged period.
struct CycleSummary {
    double omega = 0.0;
    Mode mode = Mode::Original;
    double q_c = 0.0;   // heat to the cold bath per period (< 0 when cooling)
    double q_h = 0.0;   // heat to the hot bath per period
    double work = 0.0;  // integral of the work flux
    double eta = 0.0;   // -q_c / (q_h + q_c); NaN when the denominator vanishes
    double pi_c = 0.0;  // q_c * omega / (2 pi)
    double pi_h = 0.0;
    double first_law_residual = 0.0;  // |work - q_h - q_c|
    int cycles_to_converge = 0;

    bool refrigerating() const { return q_c < 0.0 && q_h > 0.0; }
};

/// Per-bath heat flux, aligned with the baths span. Populations are taken in
/// the frame's own eigenbasis and the gap factor is the frame's own gap, so
/// the same call covers the original and control-augmented dynamics.
std::vector<double> heat_flux(const Mat2& rho, const InstantaneousFrame& frame,
                              std::span<const BathParams> baths);

/// Classical variant: populations are the rate-equation state, the frame must
/// be an Original frame.
std::vector<double> heat_flux(const ClassicalState& s, const InstantaneousFrame& frame,
                              std::span<const BathParams> baths);

/// Tr[(dH/dt) rho]. Original: dH/dt = -e0*qdot*sz; CounterDiabatic adds
/// theta_ddot*sy. Throws for Classical.
double work_flux(const Mat2& rho, double t, const DriveParams& p, Mode mode);

/// Rate-equation work flux: the population-weighted level velocity
/// (p_e - p_g) * d(gap)/dt / 2.
double classical_work_flux(const ClassicalState& s, double t, const DriveParams& p);

/// Von Neumann entropy in nats; eigenvalues clamped to [0, 1].
double von_neumann_entropy(const Mat2& rho);

/// Relative entropy of coherence S(dephased) - S(rho), dephasing in the
/// eigenbasis of `basis`. Non-negative, at most ln 2.
double coherence(const Mat2& rho, const InstantaneousFrame& basis);

double internal_energy(const Mat2& rho, const InstantaneousFrame& frame);
double internal_energy(const ClassicalState& s, const InstantaneousFrame& frame);

FluxRecord make_flux_record(double t, const Mat2& rho, const DriveParams& p,
                            std::span<const BathParams> baths, Mode mode);
FluxRecord make_flux_record(double t, const ClassicalState& s, const DriveParams& p,
                            std::span<const BathParams> baths);

/// Trapezoid-rule integration of the flux records over one period.
/// eta is computed from the heats, -q_c/(q_h + q_c), and reported as NaN when
/// |q_h + q_c| < 1e-12; the independently integrated work only enters the
/// first-law residual.
CycleSummary summarize_cycle(const Trajectory& traj);

/// (omega_h/omega_c - 1)^-1 for the configured resonances.
double otto_coefficient(const BathParams& cold, const BathParams& hot);

/// (beta_c/beta_h - 1)^-1.
double carnot_coefficient(const BathParams& cold, const BathParams& hot);

}  // namespace ottoref
