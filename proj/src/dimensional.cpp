#include "momint/dimensional.hpp"

#include <cmath>

#include "momint/errors.hpp"

namespace momint::dimensional {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void LabContext::validate() const {
    if (!(mass > 0.0)) throw DomainError("lab: mass must be positive");
    if (!(omega > 0.0)) throw DomainError("lab: omega must be positive");
    if (!(t_flight >= 0.0)) throw DomainError("lab: t_flight must be non-negative");
    if (!(delta_s > 0.0)) throw DomainError("lab: delta_s must be positive");
    if (has_laser) {
        if (!(laser.rabi > 0.0)) throw DomainError("lab: Rabi frequency must be positive");
        if (laser.detuning == 0.0) throw DomainError("lab: detuning must be nonzero");
        if (!(laser.t_pulse > 0.0)) throw DomainError("lab: pulse duration must be positive");
    }
}

double imprinted_phase(const LabContext& ctx) {
    ctx.validate();
    if (!ctx.has_laser) throw DomainError("imprinted_phase: no laser parameters given");
    return -(ctx.laser.rabi * ctx.laser.rabi / (4.0 * ctx.laser.detuning)) * ctx.laser.t_pulse;
}

double pulse_duration_for_phase(double phi, const LabContext& ctx) {
    ctx.validate();
    if (!ctx.has_laser) throw DomainError("pulse_duration_for_phase: no laser parameters given");
    const double t = -phi * 4.0 * ctx.laser.detuning / (ctx.laser.rabi * ctx.laser.rabi);
    if (!(t > 0.0))
        throw DomainError("pulse_duration_for_phase: phase sign incompatible with detuning sign");
    return t;
}

double wrap_phase(double phi) {
    double w = std::fmod(phi, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

double notch_velocity(double phi, const LabContext& ctx) {
    ctx.validate();
    return std::sqrt(hbar * ctx.omega / ctx.mass) * std::pow(kPi / 2.0, 1.5) *
           (phi - kPi) / kPi;
}

double notch_displacement(double phi, const LabContext& ctx) {
    return ctx.t_flight * notch_velocity(phi, ctx);
}

double resolvance(const LabContext& ctx) {
    ctx.validate();
    return ctx.t_flight / ctx.delta_s * std::sqrt(hbar * ctx.omega / ctx.mass) *
           std::pow(kPi / 2.0, 1.5);
}

}  // namespace momint::dimensional
