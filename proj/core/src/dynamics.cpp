#include "ottoref/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ottoref {

namespace {

// Everything the quantum right-hand side needs at a fixed time. The jump
// operator is L = amp * |g><e| with amp = <g|sy|e>, identical for both baths,
// so the two dissipators collapse into summed down/up rates with |amp|^2
// folded in.
struct QuantumCtx {
    Mat2 h;
    Mat2 proj_g, proj_e;
    Vec2 g, e;
    double sdown = 0.0, sup = 0.0;
};

QuantumCtx make_quantum_ctx(double t, const DriveParams& p,
                            std::span<const BathParams> baths, Mode mode)
{
    QuantumCtx c;
    const InstantaneousFrame f = eigenframe(t, p, mode);
    c.h = hamiltonian(t, p, mode);
    c.g = f.eigvec_g;
    c.e = f.eigvec_e;
    c.proj_g = outer(f.eigvec_g, f.eigvec_g);
    c.proj_e = outer(f.eigvec_e, f.eigvec_e);
    const double amp2 = std::norm(f.jump_amp);
    const double gap_eval = (mode == Mode::CounterDiabatic) ? f.gap_cd : f.gap;
    for (const auto& b : baths) {
        c.sdown += amp2 * noise_power(gap_eval, b);
        c.sup += amp2 * noise_power(-gap_eval, b);
    }
    return c;
}

Mat2 quantum_rhs(const Mat2& rho, const QuantumCtx& c)
{
    // -i[H, rho]
    Mat2 d = cplx(0.0, -1.0) * commutator(c.h, rho);
    // sd*(L rho Ld - {LdL,rho}/2) + su*(Ld rho L - {LLd,rho}/2) with the
    // jump parts reduced to populations times projectors.
    const double pe = std::real(sandwich(c.e, rho, c.e));
    const double pg = std::real(sandwich(c.g, rho, c.g));
    d += (c.sdown * pe) * c.proj_g + (c.sup * pg) * c.proj_e;
    const Mat2 decay = c.sdown * c.proj_e + c.sup * c.proj_g;
    d -= 0.5 * (decay * rho + rho * decay);
    return d;
}

struct ClassicalCtx {
    double down = 0.0, up = 0.0;
};

ClassicalCtx make_classical_ctx(double t, const DriveParams& p,
                                std::span<const BathParams> baths)
{
    ClassicalCtx c;
    const double gap = gap_of_q(drive_q(t, p), p);
    for (const auto& b : baths) {
        c.down += noise_power(gap, b);
        c.up += noise_power(-gap, b);
    }
    return c;
}

constexpr double kPositivityAbort = -1e-6;

Mat2 rk4_step(const Mat2& rho, const QuantumCtx& c0, const QuantumCtx& cmid,
              const QuantumCtx& c1, double h, double t_diag, int steps_diag)
{
    const Mat2 k1 = quantum_rhs(rho, c0);
    const Mat2 k2 = quantum_rhs(rho + (0.5 * h) * k1, cmid);
    const Mat2 k3 = quantum_rhs(rho + (0.5 * h) * k2, cmid);
    const Mat2 k4 = quantum_rhs(rho + h * k3, c1);
    Mat2 out = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    out = 0.5 * (out + dagger(out));
    out *= 1.0 / std::real(trace(out));

    const double lo = eigvals_hermitian(out)[0];
    if (lo < kPositivityAbort) {
        std::ostringstream msg;
        msg << "integrate: state lost positivity (min eigenvalue " << lo << ") near t = "
            << t_diag << "; the step h = " << h << " (" << steps_diag
            << " steps) is too coarse for this drive";
        throw std::runtime_error(msg.str());
    }
    return out;
}

ClassicalState rk4_step(const ClassicalState& s, const ClassicalCtx& c0,
                        const ClassicalCtx& cmid, const ClassicalCtx& c1, double h)
{
    auto f = [](const ClassicalState& x, const ClassicalCtx& c) {
        const double dpg = c.down * x.p_e - c.up * x.p_g;
        return ClassicalState{dpg, -dpg};
    };
    const ClassicalState k1 = f(s, c0);
    const ClassicalState k2 = f({s.p_g + 0.5 * h * k1.p_g, s.p_e + 0.5 * h * k1.p_e}, cmid);
    const ClassicalState k3 = f({s.p_g + 0.5 * h * k2.p_g, s.p_e + 0.5 * h * k2.p_e}, cmid);
    const ClassicalState k4 = f({s.p_g + h * k3.p_g, s.p_e + h * k3.p_e}, c1);
    ClassicalState out{s.p_g + (h / 6.0) * (k1.p_g + 2.0 * k2.p_g + 2.0 * k3.p_g + k4.p_g),
                       s.p_e + (h / 6.0) * (k1.p_e + 2.0 * k2.p_e + 2.0 * k3.p_e + k4.p_e)};
    const double norm = out.p_g + out.p_e;
    out.p_g /= norm;
    out.p_e /= norm;
    return out;
}

// Contexts at every half step over one period: index 2k is step k's start,
// 2k+1 its midpoint. ctx[2*steps] closes the period.
template <typename Ctx, typename Maker>
std::vector<Ctx> period_contexts(int steps, double period, const Maker& make)
{
    const double h = period / steps;
    std::vector<Ctx> ctx(2 * steps + 1);
    for (int k = 0; k <= 2 * steps; ++k) ctx[k] = make(0.5 * k * h);
    return ctx;
}

void check_integrate_args(double t0, double t1, int steps)
{
    if (!(t1 > t0)) throw std::invalid_argument("integrate: t1 must exceed t0");
    if (steps < 1) throw std::invalid_argument("integrate: steps must be >= 1");
}

const BathParams& cold_or_first(std::span<const BathParams> baths)
{
    for (const auto& b : baths)
        if (b.label == BathLabel::Cold) return b;
    if (baths.empty()) throw std::invalid_argument("find_limit_cycle: needs at least one bath");
    return baths.front();
}

}  // namespace

Mat2 lindblad_rhs(const Mat2& rho, double t, const DriveParams& p,
                  std::span<const BathParams> baths, Mode mode)
{
    if (mode == Mode::Classical)
        throw std::invalid_argument("lindblad_rhs: use classical_rhs for the classical mode");
    return quantum_rhs(rho, make_quantum_ctx(t, p, baths, mode));
}

ClassicalState classical_rhs(const ClassicalState& s, double t, const DriveParams& p,
                             std::span<const BathParams> baths)
{
    const ClassicalCtx c = make_classical_ctx(t, p, baths);
    const double dpg = c.down * s.p_e - c.up * s.p_g;
    return {dpg, -dpg};
}

DensityMatrix gibbs_state(double beta, const InstantaneousFrame& frame)
{
    const double w = std::exp(-beta * frame.gap);
    Mat2 rho = outer(frame.eigvec_g, frame.eigvec_g) + w * outer(frame.eigvec_e, frame.eigvec_e);
    rho *= 1.0 / (1.0 + w);
    return rho;
}

Trajectory integrate(const DensityMatrix& rho0, double t0, double t1, int steps,
                     const DriveParams& p, std::span<const BathParams> baths, Mode mode)
{
    check_integrate_args(t0, t1, steps);
    if (mode == Mode::Classical)
        throw std::invalid_argument("integrate: classical state required for classical mode");
    p.validate();

    Trajectory traj;
    traj.mode = mode;
    traj.drive = p;
    traj.baths.assign(baths.begin(), baths.end());
    traj.t.reserve(steps + 1);
    traj.rho.reserve(steps + 1);
    traj.flux.reserve(steps + 1);

    const double h = (t1 - t0) / steps;
    Mat2 rho = rho0;
    QuantumCtx c0 = make_quantum_ctx(t0, p, baths, mode);
    for (int k = 0; k <= steps; ++k) {
        const double t = t0 + k * h;
        traj.t.push_back(t);
        traj.rho.push_back(rho);
        traj.flux.push_back(make_flux_record(t, rho, p, baths, mode));
        if (k == steps) break;
        const QuantumCtx cmid = make_quantum_ctx(t + 0.5 * h, p, baths, mode);
        const QuantumCtx c1 = make_quantum_ctx(t + h, p, baths, mode);
        rho = rk4_step(rho, c0, cmid, c1, h, t, steps);
        c0 = c1;
    }
    return traj;
}

Trajectory integrate(const ClassicalState& s0, double t0, double t1, int steps,
                     const DriveParams& p, std::span<const BathParams> baths)
{
    check_integrate_args(t0, t1, steps);
    p.validate();

    Trajectory traj;
    traj.mode = Mode::Classical;
    traj.drive = p;
    traj.baths.assign(baths.begin(), baths.end());
    traj.t.reserve(steps + 1);
    traj.probs.reserve(steps + 1);
    traj.flux.reserve(steps + 1);

    const double h = (t1 - t0) / steps;
    ClassicalState s = s0;
    ClassicalCtx c0 = make_classical_ctx(t0, p, baths);
    for (int k = 0; k <= steps; ++k) {
        const double t = t0 + k * h;
        traj.t.push_back(t);
        traj.probs.push_back(s);
        traj.flux.push_back(make_flux_record(t, s, p, baths));
        if (k == steps) break;
        const ClassicalCtx cmid = make_classical_ctx(t + 0.5 * h, p, baths);
        const ClassicalCtx c1 = make_classical_ctx(t + h, p, baths);
        s = rk4_step(s, c0, cmid, c1, h);
        c0 = c1;
    }
    return traj;
}

FidelityPair cd_fidelity_check(const DriveParams& p, Mode mode, double duration, int steps)
{
    if (mode == Mode::Classical)
        throw std::invalid_argument("cd_fidelity_check: quantum modes only");
    check_integrate_args(0.0, duration, steps);
    p.validate();

    const double h = duration / steps;
    const InstantaneousFrame f0 = eigenframe(0.0, p, Mode::Original);
    Vec2 psi[2] = {f0.eigvec_g, f0.eigvec_e};

    auto deriv = [](const Mat2& hm, const Vec2& v) { return cplx(0.0, -1.0) * (hm * v); };
    Mat2 h0 = hamiltonian(0.0, p, mode);
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const Mat2 hm = hamiltonian(t + 0.5 * h, p, mode);
        const Mat2 h1 = hamiltonian(t + h, p, mode);
        for (auto& v : psi) {
            const Vec2 k1 = deriv(h0, v);
            const Vec2 k2 = deriv(hm, {v.a + 0.5 * h * k1.a, v.b + 0.5 * h * k1.b});
            const Vec2 k3 = deriv(hm, {v.a + 0.5 * h * k2.a, v.b + 0.5 * h * k2.b});
            const Vec2 k4 = deriv(h1, {v.a + h * k3.a, v.b + h * k3.b});
            v = {v.a + (h / 6.0) * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a),
                 v.b + (h / 6.0) * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b)};
        }
        h0 = h1;
    }

    const InstantaneousFrame fend = eigenframe(duration, p, Mode::Original);
    return {std::norm(inner(fend.eigvec_g, psi[0])) / psi[0].norm2(),
            std::norm(inner(fend.eigvec_e, psi[1])) / psi[1].norm2()};
}

double classical_distance(const ClassicalState& x, const ClassicalState& y)
{
    return 0.5 * (std::abs(x.p_g - y.p_g) + std::abs(x.p_e - y.p_e));
}

namespace {

template <typename State, typename Ctx, typename Stepper, typename Distance, typename Recorder>
Trajectory limit_cycle_impl(State state, const DriveParams& p, int steps, double tol,
                            int max_cycles, const std::vector<Ctx>& ctx, const Stepper& step,
                            const Distance& distance, const Recorder& record)
{
    if (!(tol > 0.0)) throw std::invalid_argument("find_limit_cycle: tol must be > 0");
    if (max_cycles < 1) throw std::invalid_argument("find_limit_cycle: max_cycles must be >= 1");

    const double h = p.period() / steps;
    ConvergenceInfo info;
    for (int cycle = 1; cycle <= max_cycles; ++cycle) {
        const State start = state;
        for (int k = 0; k < steps; ++k) state = step(state, ctx[2 * k], ctx[2 * k + 1], ctx[2 * k + 2], k * h);
        info.cycles = cycle;
        info.distance = distance(state, start);
        if (info.distance < tol) {
            info.converged = true;
            break;
        }
    }
    if (!info.converged) {
        std::ostringstream msg;
        msg << "find_limit_cycle: no convergence after " << info.cycles
            << " cycles (last cycle-to-cycle distance " << info.distance << ", tol " << tol << ")";
        throw LimitCycleError(msg.str(), info.cycles, info.distance);
    }

    Trajectory traj = record(state, steps, h, ctx);
    traj.convergence = info;
    return traj;
}

}  // namespace

Trajectory find_limit_cycle(const DensityMatrix& initial, const DriveParams& p,
                            std::span<const BathParams> baths, Mode mode,
                            int steps_per_cycle, double tol, int max_cycles)
{
    if (mode == Mode::Classical)
        throw std::invalid_argument("find_limit_cycle: classical overload takes a ClassicalState");
    p.validate();
    for (const auto& b : baths) b.validate();

    const auto ctx = period_contexts<QuantumCtx>(
        steps_per_cycle, p.period(),
        [&](double t) { return make_quantum_ctx(t, p, baths, mode); });

    auto step = [&](const Mat2& rho, const QuantumCtx& c0, const QuantumCtx& cm,
                    const QuantumCtx& c1, double t) {
        return rk4_step(rho, c0, cm, c1, p.period() / steps_per_cycle, t, steps_per_cycle);
    };
    auto record = [&](Mat2 rho, int steps, double h, const std::vector<QuantumCtx>& cs) {
        Trajectory traj;
        traj.mode = mode;
        traj.drive = p;
        traj.baths.assign(baths.begin(), baths.end());
        for (int k = 0; k <= steps; ++k) {
            const double t = k * h;
            traj.t.push_back(t);
            traj.rho.push_back(rho);
            traj.flux.push_back(make_flux_record(t, rho, p, baths, mode));
            if (k < steps) rho = step(rho, cs[2 * k], cs[2 * k + 1], cs[2 * k + 2], t);
        }
        return traj;
    };

    return limit_cycle_impl(initial, p, steps_per_cycle, tol, max_cycles, ctx, step,
                            [](const Mat2& x, const Mat2& y) { return trace_distance(x, y); },
                            record);
}

Trajectory find_limit_cycle(const ClassicalState& initial, const DriveParams& p,
                            std::span<const BathParams> baths,
                            int steps_per_cycle, double tol, int max_cycles)
{
    p.validate();
    for (const auto& b : baths) b.validate();

    const auto ctx = period_contexts<ClassicalCtx>(
        steps_per_cycle, p.period(),
        [&](double t) { return make_classical_ctx(t, p, baths); });

    const double h = p.period() / steps_per_cycle;
    auto step = [&](const ClassicalState& s, const ClassicalCtx& c0, const ClassicalCtx& cm,
                    const ClassicalCtx& c1, double) { return rk4_step(s, c0, cm, c1, h); };
    auto record = [&](ClassicalState s, int steps, double hh, const std::vector<ClassicalCtx>& cs) {
        Trajectory traj;
        traj.mode = Mode::Classical;
        traj.drive = p;
        traj.baths.assign(baths.begin(), baths.end());
        for (int k = 0; k <= steps; ++k) {
            const double t = k * hh;
            traj.t.push_back(t);
            traj.probs.push_back(s);
            traj.flux.push_back(make_flux_record(t, s, p, baths));
            if (k < steps) s = rk4_step(s, cs[2 * k], cs[2 * k + 1], cs[2 * k + 2], hh);
        }
        return traj;
    };

    return limit_cycle_impl(initial, p, steps_per_cycle, tol, max_cycles, ctx, step,
                            classical_distance, record);
}

Trajectory find_limit_cycle(const DriveParams& p, std::span<const BathParams> baths, Mode mode,
                            int steps_per_cycle, double tol, int max_cycles)
{
    const double beta = cold_or_first(baths).beta;
    const InstantaneousFrame f0 = eigenframe(0.0, p, Mode::Original);
    if (mode == Mode::Classical) {
        const double w = std::exp(-beta * f0.gap);
        const ClassicalState s0{1.0 / (1.0 + w), w / (1.0 + w)};
        return find_limit_cycle(s0, p, baths, steps_per_cycle, tol, max_cycles);
    }
    return find_limit_cycle(gibbs_state(beta, f0), p, baths, mode, steps_per_cycle, tol, max_cycles);
}

}  // namespace ottoref
