#pragma once

#include "ottoref/mat2.hpp"

#include <numbers>
#include <string>

namespace ottoref {

/// Which equation of motion drives the qubit.
enum class Mode { Original, CounterDiabatic, Classical };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

/// Parameters of the periodic two-level drive: the qubit Hamiltonian is
/// H0(t) = -e0*(delta*sx + q(t)*sz) with q(t) a truncated-trapezoid waveform
/// sweeping between 0 and 1/2 at angular frequency omega.
struct DriveParams {
    double e0 = 1.0;      // overall energy scale (hbar = 1)
    double delta = 0.12;  // minimum-gap parameter, dimensionless
    double a = 2.0;       // waveform shape, dimensionless
    double omega = 0.1;   // driving angular frequency

    double period() const { return 2.0 * std::numbers::pi / omega; }

    /// Throws std::invalid_argument unless all parameters are strictly positive.
    /// delta = 0 is rejected: the gap would close and the control field diverge.
    void validate() const;
};

/// q(t): periodic, range [0, 1/2], q(0) = 1/2.
double drive_q(double t, const DriveParams& p);

/// Analytic dq/dt.
double drive_qdot(double t, const DriveParams& p);

/// theta = (1/2) arccot(q/delta), branch arccot: [0, inf) -> (0, pi/2],
/// so theta in (0, pi/4] for q >= 0.
double mixing_angle(double q, const DriveParams& p);

/// Analytic d(theta)/dt = -(qdot/2) * delta / (delta^2 + q^2).
double theta_dot(double t, const DriveParams& p);

/// Second derivative of theta, central difference of theta_dot with
/// h = period/1e6. Only the control work flux needs it.
double theta_ddot(double t, const DriveParams& p);

/// Instantaneous spectral gap of H0: 2*e0*sqrt(delta^2 + q^2).
double gap_of_q(double q, const DriveParams& p);

/// Analytic d(gap)/dt.
double gap_dot(double t, const DriveParams& p);

/// Gap of the control-augmented Hamiltonian: sqrt(gap^2 + 4*theta_dot^2).
double gap_cd(double t, const DriveParams& p);

/// Relative energy scale of the control field, theta_dot / gap (signed).
double delta_ratio(double t, const DriveParams& p);

/// H0(t) for Original, H0(t) + theta_dot*sy for CounterDiabatic.
/// Throws std::invalid_argument for Classical (no Hamiltonian).
Mat2 hamiltonian(double t, const DriveParams& p, Mode mode);

/// Snapshot of the instantaneous eigenproblem at time t for one mode.
struct InstantaneousFrame {
    double t = 0.0;
    double q = 0.0;
    double qdot = 0.0;
    double gap = 0.0;       // spectral gap of H0
    double gap_cd = 0.0;    // spectral gap of H0 + theta_dot*sy
    double theta = 0.0;
    double thetadot = 0.0;
    double delta = 0.0;     // thetadot / gap
    Vec2 eigvec_g;          // ground state of the mode's Hamiltonian
    Vec2 eigvec_e;          // excited state
    cplx jump_amp{0.0};     // <g| sy |e> in the mode's eigenbasis
    Mode mode = Mode::Original;
};

/// Eigen-decomposition of the mode's Hamiltonian at time t.
///
/// The Original frame uses the real gauge (cos/sin amplitudes); the
/// CounterDiabatic frame fixes each eigenvector's phase so its |up>
/// amplitude is real and non-negative, which reduces to the Original
/// gauge when theta_dot = 0. Throws for Classical.
InstantaneousFrame eigenframe(double t, const DriveParams& p, Mode mode);

/// |<g_cd|g>|^2 = 1/2 + gap/(2*gap_cd), the overlap between the bases the
/// control tracks and the dissipation acts on. In (1/2, 1].
double basis_mismatch(double t, const DriveParams& p);

}  // namespace ottoref
