#include "momint/imprint.hpp"

#include <cmath>

#include "momint/errors.hpp"

namespace momint::imprint {

void PhaseProfile::validate() const {
    if (!std::isfinite(y0)) throw DomainError("imprint: y0 must be finite");
    if (kind == ProfileKind::sigmoid && !(zeta > 0.0))
        throw DomainError("imprint: sigmoid profile needs zeta > 0");
}

double profile_value(const PhaseProfile& profile, double y) {
    profile.validate();
    if (profile.kind == ProfileKind::step) return (y >= profile.y0) ? 1.0 : 0.0;
    return 0.5 * (1.0 + std::tanh((y - profile.y0) / profile.zeta));
}

namespace {

template <typename WF>
ComplexWavefunction imprint_impl(const WF& psi, double phi, const PhaseProfile& profile) {
    profile.validate();
    if (!std::isfinite(phi)) throw DomainError("imprint: phi must be finite");
    psi.grid.validate();
    ComplexWavefunction out{psi.grid, std::vector<std::complex<double>>(psi.values.size())};
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        const double w = profile_value(profile, psi.grid.point(i));
        out.values[i] = std::complex<double>(psi.values[i]) *
                        std::polar(1.0, phi * w);
    }
    return out;
}

}  // namespace

ComplexWavefunction apply_imprint(const RealWavefunction& psi, double phi,
                                  const PhaseProfile& profile) {
    return imprint_impl(psi, phi, profile);
}

ComplexWavefunction apply_imprint(const ComplexWavefunction& psi, double phi,
                                  const PhaseProfile& profile) {
    return imprint_impl(psi, phi, profile);
}

}  // namespace momint::imprint
