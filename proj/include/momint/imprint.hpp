#pragma once

#include "momint/grid.hpp"

namespace momint::imprint {

enum class ProfileKind { step, sigmoid };

struct PhaseProfile {
    ProfileKind kind = ProfileKind::step;
    double y0 = 0.0;
    double zeta = 0.0;  // sigmoid width; must be > 0 when kind == sigmoid

    void validate() const;
};

// Ramp w(y): step Theta(y - y0) with the convention w(y0) = 1, or the
// sigmoid (1 + tanh((y - y0)/zeta)) / 2.
double profile_value(const PhaseProfile& profile, double y);

// psi(y) -> psi(y) exp(i phi w(y)).  Any finite phi is accepted; values
// outside [0, 2pi] wrap around since only exp(i phi) enters.
ComplexWavefunction apply_imprint(const RealWavefunction& psi, double phi,
                                  const PhaseProfile& profile);
ComplexWavefunction apply_imprint(const ComplexWavefunction& psi, double phi,
                                  const PhaseProfile& profile);

}  // namespace momint::imprint
