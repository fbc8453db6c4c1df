#include "ottoref/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ottoref {

std::string to_string(Mode mode)
{
    switch (mode) {
        case Mode::Original: return "original";
        case Mode::CounterDiabatic: return "cd";
        case Mode::Classical: return "classical";
    }
    return "?";
}

Mode mode_from_string(const std::string& name)
{
    if (name == "original") return Mode::Original;
    if (name == "cd") return Mode::CounterDiabatic;
    if (name == "classical") return Mode::Classical;
    throw std::invalid_argument("unknown mode '" + name + "' (expected original|cd|classical)");
}

void DriveParams::validate() const
{
    if (!(e0 > 0.0)) throw std::invalid_argument("drive: e0 must be > 0");
    if (!(delta > 0.0)) throw std::invalid_argument("drive: delta must be > 0");
    if (!(a > 0.0)) throw std::invalid_argument("drive: a must be > 0");
    if (!(omega > 0.0)) throw std::invalid_argument("drive: omega must be > 0");
    if (!std::isfinite(period())) throw std::invalid_argument("drive: period not finite");
}

double drive_q(double t, const DriveParams& p)
{
    return 0.25 * (1.0 + std::tanh(p.a * std::cos(p.omega * t)) / std::tanh(p.a));
}

double drive_qdot(double t, const DriveParams& p)
{
    const double c = std::cosh(p.a * std::cos(p.omega * t));
    return -(p.a * p.omega * std::sin(p.omega * t)) / (4.0 * std::tanh(p.a) * c * c);
}

double mixing_angle(double q, const DriveParams& p)
{
    // arccot(x) = atan2(1, x) maps [0, inf) to (0, pi/2]
    return 0.5 * std::atan2(1.0, q / p.delta);
}

double theta_dot(double t, const DriveParams& p)
{
    const double q = drive_q(t, p);
    return -0.5 * drive_qdot(t, p) * p.delta / (p.delta * p.delta + q * q);
}

double theta_ddot(double t, const DriveParams& p)
{
    const double h = p.period() * 1e-6;
    return (theta_dot(t + h, p) - theta_dot(t - h, p)) / (2.0 * h);
}

double gap_of_q(double q, const DriveParams& p)
{
    return 2.0 * p.e0 * std::hypot(p.delta, q);
}

double gap_dot(double t, const DriveParams& p)
{
    const double q = drive_q(t, p);
    return 2.0 * p.e0 * q * drive_qdot(t, p) / std::hypot(p.delta, q);
}

double gap_cd(double t, const DriveParams& p)
{
    const double g = gap_of_q(drive_q(t, p), p);
    return std::hypot(g, 2.0 * theta_dot(t, p));
}

double delta_ratio(double t, const DriveParams& p)
{
    return theta_dot(t, p) / gap_of_q(drive_q(t, p), p);
}

Mat2 hamiltonian(double t, const DriveParams& p, Mode mode)
{
    if (mode == Mode::Classical)
        throw std::invalid_argument("hamiltonian: classical mode has no Hamiltonian");
    const double q = drive_q(t, p);
    Mat2 h = (-p.e0 * p.delta) * pauli_x() + (-p.e0 * q) * pauli_z();
    if (mode == Mode::CounterDiabatic) h += theta_dot(t, p) * pauli_y();
    return h;
}

namespace {

// Phase-fix v so its first component is real and non-negative; v must be unit norm
// with |v.a| > 0, which holds for both eigenvectors whenever delta > 0.
Vec2 gauge_up_real(Vec2 v)
{
    const double r = std::abs(v.a);
    const cplx phase = std::conj(v.a) / r;
    return phase * v;
}

}  // namespace

InstantaneousFrame eigenframe(double t, const DriveParams& p, Mode mode)
{
    if (mode == Mode::Classical)
        throw std::invalid_argument("eigenframe: classical mode has no eigenframe");

    InstantaneousFrame f;
    f.t = t;
    f.mode = mode;
    f.q = drive_q(t, p);
    f.qdot = drive_qdot(t, p);
    f.theta = mixing_angle(f.q, p);
    f.thetadot = theta_dot(t, p);
    f.gap = gap_of_q(f.q, p);
    f.gap_cd = std::hypot(f.gap, 2.0 * f.thetadot);
    f.delta = f.thetadot / f.gap;

    if (mode == Mode::Original) {
        // Real gauge: g = (cos, sin), e = (sin, -cos); energies -gap/2, +gap/2.
        const double c = std::cos(f.theta), s = std::sin(f.theta);
        f.eigvec_g = {c, s};
        f.eigvec_e = {s, -c};
    } else {
        // H_cd = n . sigma with n = (-e0*delta, thetadot, -e0*q), |n| = gap_cd/2.
        const double nx = -p.e0 * p.delta;
        const double ny = f.thetadot;
        const double nz = -p.e0 * f.q;
        const double n = 0.5 * f.gap_cd;
        Vec2 ve{nz + n, cplx(nx, ny)};
        Vec2 vg{cplx(-nx, ny), nz + n};
        ve = (1.0 / ve.norm()) * ve;
        vg = (1.0 / vg.norm()) * vg;
        f.eigvec_e = gauge_up_real(ve);
        f.eigvec_g = gauge_up_real(vg);
    }
    f.jump_amp = sandwich(f.eigvec_g, pauli_y(), f.eigvec_e);
    return f;
}

double basis_mismatch(double t, const DriveParams& p)
{
    return 0.5 + 0.5 * gap_of_q(drive_q(t, p), p) / gap_cd(t, p);
}

}  // namespace ottoref
