#pragma once

#include "momint/grid.hpp"

namespace momint::basis {

// Normalized harmonic-oscillator eigenstate value at a point, n <= 60,
// evaluated with the normalized three-term recurrence (no factorial
// overflow at any order).
double eigenstate_value(int n, double y);

// d psi_n / dy at y = 0; equals sqrt(2n) psi_{n-1}(0).
double eigenstate_slope_origin(int n);

// psi_n sampled on a grid.  Requires sqrt(2n+1) + 4 <= y_max so the state
// decays below 1e-10 at the edges; the sampled norm must come out within
// 1e-8 of one or the grid is rejected.
RealWavefunction eigenstate(int n, const GridSpec& grid);

// E_n = n + 1/2 in trap units.
double eigenenergy(int n);

struct HalfLineMoments {
    double a;      // int_0^inf H_n(y) exp(-y^2/2) dy
    double b;      // int_0^inf y H_n(y) exp(-y^2/2) dy
    double ratio;  // a / b
};

// Half-line moments of the unnormalized Hermite-Gaussian, n <= 60.
// Endpoint-corrected trapezoid (the h^2/12 f'(0) term is analytic), so the
// result is O(h^4) accurate.
HalfLineMoments half_line_moments(int n);

}  // namespace momint::basis
