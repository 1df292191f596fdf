#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "momint/errors.hpp"

namespace momint {

// Uniform inclusive grid over [lo, hi], used for both position (y) and
// momentum (q) axes.  An even point count on a symmetric grid straddles 0,
// which keeps a step discontinuity at the origin between nodes (trapezoid
// error stays O(h^2) there); an odd count samples 0 exactly, which output
// momentum grids want.
struct GridSpec {
    double lo = -12.0;
    double hi = 12.0;
    std::size_t n_points = 2048;

    double spacing() const { return (hi - lo) / static_cast<double>(n_points - 1); }
    double point(std::size_t i) const { return lo + static_cast<double>(i) * spacing(); }

    std::vector<double> points() const {
        std::vector<double> y(n_points);
        for (std::size_t i = 0; i < n_points; ++i) y[i] = point(i);
        return y;
    }

    bool symmetric() const {
        return std::abs(lo + hi) <= 1e-12 * std::max(1.0, std::abs(hi));
    }

    void validate() const {
        if (!(lo < hi)) throw GridError("grid: lo must be below hi");
        if (n_points < 64) throw GridError("grid: need at least 64 points");
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw GridError("grid: bounds must be finite");
    }

    bool operator==(const GridSpec&) const = default;
};

struct RealWavefunction {
    GridSpec grid;
    std::vector<double> values;
};

struct ComplexWavefunction {
    GridSpec grid;
    std::vector<std::complex<double>> values;
};

struct MomentumDensity {
    GridSpec q_grid;
    std::vector<double> values;
};

}  // namespace momint
