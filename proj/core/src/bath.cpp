#include "ottoref/bath.hpp"

#include <cmath>
#include <stdexcept>

namespace ottoref {

std::string to_string(BathLabel label)
{
    return label == BathLabel::Cold ? "cold" : "hot";
}

BathLabel bath_label_from_string(const std::string& name)
{
    if (name == "cold") return BathLabel::Cold;
    if (name == "hot") return BathLabel::Hot;
    throw std::invalid_argument("unknown bath label '" + name + "' (expected cold|hot)");
}

void BathParams::validate() const
{
    if (!(omega_r > 0.0)) throw std::invalid_argument("bath: omega_r must be > 0");
    if (!(quality > 0.0)) throw std::invalid_argument("bath: quality must be > 0");
    if (!(coupling >= 0.0)) throw std::invalid_argument("bath: coupling must be >= 0");
    if (!(beta > 0.0)) throw std::invalid_argument("bath: beta must be > 0");
}

BathParams default_cold_bath(const DriveParams& p)
{
    return {BathLabel::Cold, 2.0 * p.e0 * p.delta, 30.0, 1.0, 1.0 / 0.15};
}

BathParams default_hot_bath(const DriveParams& p)
{
    return {BathLabel::Hot, 2.0 * p.e0 * std::sqrt(p.delta * p.delta + 0.25), 30.0, 1.0, 1.0 / 0.3};
}

double noise_power(double omega, const BathParams& b)
{
    if (omega == 0.0) throw std::invalid_argument("noise_power: omega = 0 is singular");
    const double det = omega / b.omega_r - b.omega_r / omega;
    const double lorentzian = 1.0 / (1.0 + b.quality * b.quality * det * det);
    // omega/(1 - e^{-beta*omega}) written via expm1; valid for either sign.
    const double thermal = -omega / std::expm1(-b.beta * omega);
    return 0.5 * b.coupling * lorentzian * thermal;
}

RatePair rates_original(const InstantaneousFrame& frame, const BathParams& b)
{
    return {noise_power(frame.gap, b), noise_power(-frame.gap, b)};
}

RatePair rates_cd(const InstantaneousFrame& frame, const BathParams& b)
{
    const double pref = (frame.gap / frame.gap_cd) * (frame.gap / frame.gap_cd);
    return {pref * noise_power(frame.gap_cd, b), pref * noise_power(-frame.gap_cd, b)};
}

}  // namespace ottoref
