#pragma once

#include <cstddef>
#include <functional>

#include "momint/grid.hpp"

namespace momint::notch {

struct NotchMetrics {
    double q0 = 0.0;
    double q_minus = 0.0;
    double q_plus = 0.0;
    double width = 0.0;
    double visibility = 0.0;
    double depth = 0.0;
    bool low_visibility = false;
};

struct SearchWindow {
    double lo = -4.0;
    double hi = 4.0;
    std::size_t scan_points = 2001;
};

// Visibility at the edge of the working phase range (measured at
// phi = pi/2 on the reference curve); metrics below it carry the
// low_visibility flag.
extern const double low_visibility_threshold;

// Locate the dark notch of a momentum density:
//  * uniform scan of the window, interior minima collected;
//  * the minimum nearest q = 0 wins; an equidistant pair is ambiguous;
//  * parabolic estimate then golden-section refinement to 1e-8;
//  * flanking maxima localized on each side, widening the window once
//    if a flank lies outside it.
NotchMetrics find_notch(const std::function<double(double)>& density,
                        const SearchWindow& window = {});
NotchMetrics find_notch(const MomentumDensity& density);

struct ApproxConstants {
    double alpha = 0.0;
    double beta = 0.0;
    // recomputed from erfi on demand, never hard-coded
    static ApproxConstants make();
};

// Linearized notch analytics for the reference state.
struct ApproxReference {
    double q0 = 0.0;
    double q_minus = 0.0;
    double q_plus = 0.0;
    double width = 0.0;
    double visibility = 0.0;
};
ApproxReference approx_reference(double phi);

// Root of erfi(q/sqrt(2)) + cot(phi/2) = 0 bracketed and polished to 1e-10.
double q0_exact_reference(double phi);

// Leading-order notch (even n) / peak (odd n) location for eigenstate n.
double q0_approx_excited(double phi, int n);

}  // namespace momint::notch
