#pragma once

#include "ottoref/model.hpp"

#include <string>

namespace ottoref {

enum class BathLabel { Cold, Hot };

std::string to_string(BathLabel label);
BathLabel bath_label_from_string(const std::string& name);

/// One resonator bath: a narrow Lorentzian noise spectrum peaked at omega_r,
/// thermally occupied at inverse temperature beta.
struct BathParams {
    BathLabel label = BathLabel::Cold;
    double omega_r = 0.24;  // bare resonance frequency
    double quality = 30.0;  // dimensionless Q
    double coupling = 1.0;  // dimensionless g
    double beta = 1.0 / 0.15;

    void validate() const;
};

/// Default resonances tied to the drive: the cold bath meets the qubit gap at
/// q = 0 (omega_r = 2*e0*delta), the hot bath at q = 1/2.
BathParams default_cold_bath(const DriveParams& p);
BathParams default_hot_bath(const DriveParams& p);

/// Noise power spectrum at signed frequency omega:
///   S(omega) = (g/2) * [1 + Q^2 (omega/omega_r - omega_r/omega)^2]^-1
///            * omega / (1 - exp(-beta*omega)).
/// Strictly positive for omega != 0; omega = 0 is rejected (the Lorentzian
/// factor is singular there and no caller can reach it: the gap never closes).
double noise_power(double omega, const BathParams& b);

/// Downward (emission) and upward (absorption) golden-rule rates.
/// Detailed balance: up/down = exp(-beta * gap_at_which_evaluated).
struct RatePair {
    double down = 0.0;
    double up = 0.0;
};

/// Rates for the Original frame: down = S(gap), up = S(-gap).
RatePair rates_original(const InstantaneousFrame& frame, const BathParams& b);

/// Rates for the CounterDiabatic frame: (gap/gap_cd)^2 * S(+-gap_cd).
/// The prefactor equals |<g_cd| sy |e_cd>|^2, the jump matrix element of the
/// control-augmented eigenbasis.
RatePair rates_cd(const InstantaneousFrame& frame, const BathParams& b);

}  // namespace ottoref
