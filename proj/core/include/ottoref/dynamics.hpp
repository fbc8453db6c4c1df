#pragma once

#include "ottoref/bath.hpp"
#include "ottoref/model.hpp"
#include "ottoref/thermo.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace ottoref {

/// Density matrix of the qubit in the fixed {|up>, |down>} basis.
/// Valid states are Hermitian, unit trace, and positive semidefinite.
using DensityMatrix = Mat2;

/// How a limit-cycle search ended.
struct ConvergenceInfo {
    int cycles = 0;
    double distance = 0.0;  // cycle-to-cycle distance at the last boundary
    bool converged = false;
};

/// Uniformly sampled states and flux records over an integer number of
/// periods. Quantum modes fill `rho`, the classical mode fills `probs`.
struct Trajectory {
    Mode mode = Mode::Original;
    DriveParams drive;
    std::vector<BathParams> baths;
    std::vector<double> t;
    std::vector<DensityMatrix> rho;
    std::vector<ClassicalState> probs;
    std::vector<FluxRecord> flux;
    ConvergenceInfo convergence;

    std::size_t size() const { return t.size(); }
};

struct LimitCycleError : std::runtime_error {
    LimitCycleError(const std::string& what, int cycles_, double distance_)
        : std::runtime_error(what), cycles(cycles_), distance(distance_) {}
    int cycles;
    double distance;
};

/// Full Lindblad right-hand side at time t: -i[H, rho] plus one dissipator
/// per bath, with the jump operator built from the mode's instantaneous
/// eigenframe. Traceless and Hermitian for Hermitian input.
Mat2 lindblad_rhs(const Mat2& rho, double t, const DriveParams& p,
                  std::span<const BathParams> baths, Mode mode);

/// Rate-equation right-hand side: dp_g = sum_i (down_i p_e - up_i p_g),
/// rates evaluated at the instantaneous bare gap. Returns derivatives.
ClassicalState classical_rhs(const ClassicalState& s, double t, const DriveParams& p,
                             std::span<const BathParams> baths);

/// Thermal state of the frame's Hamiltonian at inverse temperature beta.
DensityMatrix gibbs_state(double beta, const InstantaneousFrame& frame);

/// Fixed-step RK4 over [t0, t1]. After each step the state is re-Hermitized
/// and trace-renormalized; a min eigenvalue below -1e-6 aborts with a
/// step-size diagnostic. Flux records are taken at every sample.
Trajectory integrate(const DensityMatrix& rho0, double t0, double t1, int steps,
                     const DriveParams& p, std::span<const BathParams> baths, Mode mode);

Trajectory integrate(const ClassicalState& s0, double t0, double t1, int steps,
                     const DriveParams& p, std::span<const BathParams> baths);

/// Closed-system transport fidelities |<eps_n(t_end)|psi_n(t_end)>|^2 against
/// the bare adiabatic trajectory, starting from each eigenstate of H0(0).
/// mode selects the evolving Hamiltonian (Original or CounterDiabatic).
struct FidelityPair {
    double ground = 0.0;
    double excited = 0.0;
};
FidelityPair cd_fidelity_check(const DriveParams& p, Mode mode, double duration, int steps);

/// Iterate whole periods from `initial` until the cycle-to-cycle trace
/// distance at the period boundary drops below tol, then return one recorded
/// period started from the converged state. Throws LimitCycleError after
/// max_cycles without convergence.
Trajectory find_limit_cycle(const DensityMatrix& initial, const DriveParams& p,
                            std::span<const BathParams> baths, Mode mode,
                            int steps_per_cycle, double tol, int max_cycles);

Trajectory find_limit_cycle(const ClassicalState& initial, const DriveParams& p,
                            std::span<const BathParams> baths,
                            int steps_per_cycle, double tol, int max_cycles);

/// Same, starting from the Gibbs state of H0(0) at the cold bath's beta
/// (the attracting cycle is unique, so the start only affects run length).
Trajectory find_limit_cycle(const DriveParams& p, std::span<const BathParams> baths, Mode mode,
                            int steps_per_cycle, double tol, int max_cycles);

/// Total-variation distance |p_g - p_g'| between classical states.
double classical_distance(const ClassicalState& x, const ClassicalState& y);

}  // namespace ottoref
