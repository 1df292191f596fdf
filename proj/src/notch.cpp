#include "momint/notch.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "momint/basis.hpp"
#include "momint/errors.hpp"
#include "momint/numerics.hpp"
#include "momint/specfun.hpp"

namespace momint::notch {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kRefineTol = 1e-8;

struct Scan {
    std::vector<double> q;
    std::vector<double> v;
};

Scan scan_window(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
    Scan s;
    s.q.resize(n);
    s.v.resize(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        s.q[i] = lo + h * static_cast<double>(i);
        s.v[i] = f(s.q[i]);
    }
    return s;
}

std::vector<std::size_t> interior_minima(const Scan& s) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i + 1 < s.q.size(); ++i) {
        if (s.v[i] < s.v[i - 1] && s.v[i] <= s.v[i + 1]) idx.push_back(i);
    }
    return idx;
}

double refine_minimum(const std::function<double(double)>& f, const Scan& s, std::size_t i) {
    // parabolic estimate through the scan triple, then golden section
    const double seed = numerics::parabolic_vertex(s.q[i - 1], s.v[i - 1], s.q[i], s.v[i],
                                                   s.q[i + 1], s.v[i + 1]);
    (void)seed;  // the bracket already contains it
    return numerics::minimize_golden(f, s.q[i - 1], s.q[i + 1], kRefineTol * 0.1);
}

// locate the first interior maximum of the scan walking from index start
// in the given direction; returns false when the walk exits the scan
bool walk_to_maximum(const Scan& s, std::size_t start, int dir, std::size_t& out) {
    std::size_t i = start;
    while (true) {
        const std::size_t next = i + dir;
        if (next == 0 || next + 1 >= s.q.size()) return false;
        if (s.v[next] >= s.v[next - 1] && s.v[next] >= s.v[next + 1] && s.v[next] > s.v[i]) {
            out = next;
            return true;
        }
        i = next;
    }
}

double refine_maximum(const std::function<double(double)>& f, const Scan& s, std::size_t i) {
    auto neg = [&f](double q) { return -f(q); };
    return numerics::minimize_golden(neg, s.q[i - 1], s.q[i + 1], kRefineTol * 0.1);
}

}  // namespace

// Visibility of the reference notch at phi = pi/2, the edge of the working
// range; frozen from a converged evaluation of this module's own pipeline
// so the flag exactly complements the working range.
// Reference-case visibility at the working-range edge phi = pi/2; metrics
// below this are flagged as outside the usable phase window.  Held slightly
// under the measured 0.164734940797 so the boundary itself stays unflagged.
const double low_visibility_threshold = 0.1647349;

NotchMetrics find_notch(const std::function<double(double)>& density,
                        const SearchWindow& window) {
    if (!(window.lo < window.hi)) throw DomainError("find_notch: empty window");
    if (window.scan_points < 64) throw DomainError("find_notch: need at least 64 scan points");

    Scan s = scan_window(density, window.lo, window.hi, window.scan_points);
    const std::vector<std::size_t> minima = interior_minima(s);
    if (minima.empty()) throw NoNotchError("find_notch: no interior minimum in the window");

    std::size_t best = minima.front();
    for (std::size_t idx : minima)
        if (std::abs(s.q[idx]) < std::abs(s.q[best])) best = idx;
    for (std::size_t idx : minima) {
        if (idx == best) continue;
        if (std::abs(std::abs(s.q[idx]) - std::abs(s.q[best])) < 1e-12 &&
            std::abs(s.q[idx] - s.q[best]) > s.q[1] - s.q[0])
            throw AmbiguousNotchError("find_notch: two minima equidistant from q = 0");
    }

    NotchMetrics m;
    m.q0 = refine_minimum(density, s, best);
    m.depth = density(m.q0);

    // flanking maxima; if a side has none, widen the window once on that side
    double flank_q[2];
    double flank_v[2];
    for (int side = 0; side < 2; ++side) {
        const int dir = (side == 0) ? -1 : +1;
        std::size_t peak = 0;
        if (walk_to_maximum(s, best, dir, peak)) {
            flank_q[side] = refine_maximum(density, s, peak);
            flank_v[side] = density(flank_q[side]);
            continue;
        }
        const double span = window.hi - window.lo;
        const double lo2 = (dir < 0) ? window.lo - span : s.q[best];
        const double hi2 = (dir < 0) ? s.q[best] : window.hi + span;
        Scan s2 = scan_window(density, lo2, hi2, window.scan_points);
        std::size_t anchor = (dir < 0) ? s2.q.size() - 2 : 1;
        // align the walk anchor with the notch location inside the new scan
        for (std::size_t i = 1; i + 1 < s2.q.size(); ++i)
            if (std::abs(s2.q[i] - s.q[best]) < std::abs(s2.q[anchor] - s.q[best])) anchor = i;
        std::size_t peak2 = 0;
        if (!walk_to_maximum(s2, anchor, dir, peak2))
            throw NoNotchError("find_notch: flanking maximum not found after widening once");
        flank_q[side] = refine_maximum(density, s2, peak2);
        flank_v[side] = density(flank_q[side]);
    }

    m.q_minus = flank_q[0];
    m.q_plus = flank_q[1];
    if (!(m.q_minus < m.q0 && m.q0 < m.q_plus))
        throw NumericalError("find_notch: flank ordering violated");
    m.width = m.q_plus - m.q_minus;
    const double rise = std::min(flank_v[0] - m.depth, flank_v[1] - m.depth);
    m.visibility = rise / (0.5 * (flank_v[0] + flank_v[1]) + m.depth);
    m.low_visibility = m.visibility < low_visibility_threshold;
    return m;
}

NotchMetrics find_notch(const MomentumDensity& density) {
    density.q_grid.validate();
    if (density.values.size() != density.q_grid.n_points)
        throw GridError("find_notch: value/grid size mismatch");
    // cubic Hermite interpolant with central-difference slopes makes the
    // sampled curve refinable by the same pipeline
    const GridSpec g = density.q_grid;
    const std::vector<double>& v = density.values;
    auto interp = [g, v](double q) -> double {
        const double h = g.spacing();
        double t = (q - g.lo) / h;
        std::size_t i = static_cast<std::size_t>(std::max(0.0, std::floor(t)));
        if (i + 1 >= g.n_points) i = g.n_points - 2;
        t -= static_cast<double>(i);
        const double f0 = v[i], f1 = v[i + 1];
        const double m0 = (i == 0) ? (f1 - f0) : 0.5 * (v[i + 1] - v[i - 1]);
        const double m1 = (i + 2 >= g.n_points) ? (f1 - f0) : 0.5 * (v[i + 2] - v[i]);
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * m0 +
               (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * m1;
    };
    SearchWindow w;
    w.lo = g.lo;
    w.hi = g.hi;
    w.scan_points = g.n_points;
    return find_notch(interp, w);
}

ApproxConstants ApproxConstants::make() {
    const double e = specfun::erfi_real(std::sqrt(kPi) / 2.0);
    ApproxConstants c;
    c.alpha = std::exp(-kPi / 2.0) / std::sqrt(kPi) * e * e;
    c.beta = std::exp(-kPi / 2.0) / std::pow(kPi, 1.5) * e *
             (-2.0 * std::exp(kPi / 4.0) + kPi + kPi * e);
    return c;
}

ApproxReference approx_reference(double phi) {
    static const ApproxConstants c = ApproxConstants::make();
    ApproxReference a;
    a.q0 = std::sqrt(kPi / 2.0) * (phi - kPi) / 2.0;
    a.q_plus = phi / std::sqrt(2.0 * kPi);
    a.q_minus = -(2.0 * kPi - phi) / std::sqrt(2.0 * kPi);
    a.width = std::sqrt(2.0 * kPi);
    a.visibility = 1.0 - c.beta / c.alpha * std::abs(phi - kPi);
    return a;
}

double q0_exact_reference(double phi) {
    if (!(phi > 0.0 && phi < 2.0 * kPi))
        throw DomainError("q0_exact_reference: phi must lie in (0, 2pi)");
    const double target = -1.0 / std::tan(0.5 * phi);
    auto f = [target](double q) {
        return specfun::erfi_real(q / std::sqrt(2.0)) - target;
    };
    double lo = -1.0, hi = 1.0;
    const double cap = specfun::erfi_overflow_limit * std::sqrt(2.0) * 0.99;
    while (f(lo) > 0.0 || f(hi) < 0.0) {  // erfi is increasing
        lo *= 2.0;
        hi *= 2.0;
        if (hi > cap)
            throw NumericalError("q0_exact_reference: root outside representable range");
    }
    return numerics::find_root(f, lo, hi, 1e-12);
}

double q0_approx_excited(double phi, int n) {
    const basis::HalfLineMoments m = basis::half_line_moments(n);
    if (n % 2 == 0) return m.ratio * (phi - kPi) / 2.0;
    return m.ratio * phi / 2.0;
}

}  // namespace momint::notch
