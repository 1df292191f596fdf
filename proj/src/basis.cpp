#include "momint/basis.hpp"

#include <cmath>

#include "momint/errors.hpp"
#include "momint/numerics.hpp"
#include "momint/specfun.hpp"

namespace momint::basis {

namespace {

constexpr double kPiQuarterInv = 0.751125544464942483;  // pi^{-1/4}
constexpr int kMaxOrder = 60;

void check_order(int n, const char* who) {
    if (n < 0 || n > kMaxOrder)
        throw DomainError(std::string(who) + ": order must be in [0, 60]");
}

}  // namespace

double eigenstate_value(int n, double y) {
    check_order(n, "eigenstate_value");
    double pm = kPiQuarterInv * std::exp(-0.5 * y * y);
    if (n == 0) return pm;
    double p = std::sqrt(2.0) * y * pm;
    for (int k = 1; k < n; ++k) {
        const double pn =
            std::sqrt(2.0 / (k + 1.0)) * y * p - std::sqrt(k / (k + 1.0)) * pm;
        pm = p;
        p = pn;
    }
    return p;
}

double eigenstate_slope_origin(int n) {
    check_order(n, "eigenstate_slope_origin");
    if (n == 0) return 0.0;
    return std::sqrt(2.0 * n) * eigenstate_value(n - 1, 0.0);
}

RealWavefunction eigenstate(int n, const GridSpec& grid) {
    check_order(n, "eigenstate");
    grid.validate();
    const double reach = std::sqrt(2.0 * n + 1.0) + 4.0;
    if (reach > grid.hi || -reach < grid.lo)
        throw GridError("eigenstate: grid too narrow for requested order");
    RealWavefunction psi{grid, std::vector<double>(grid.n_points)};
    for (std::size_t i = 0; i < grid.n_points; ++i)
        psi.values[i] = eigenstate_value(n, grid.point(i));
    if (std::abs(psi.values.front()) > 1e-10 || std::abs(psi.values.back()) > 1e-10)
        throw GridError("eigenstate: state does not decay below 1e-10 at grid edges");
    std::vector<double> density(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) density[i] = psi.values[i] * psi.values[i];
    const double norm = numerics::trapezoid(density, grid.spacing());
    if (std::abs(norm - 1.0) > 1e-8)
        throw GridError("eigenstate: sampled norm deviates from 1 beyond 1e-8");
    return psi;
}

double eigenenergy(int n) {
    check_order(n, "eigenenergy");
    return n + 0.5;
}

HalfLineMoments half_line_moments(int n) {
    check_order(n, "half_line_moments");
    const double y_max = std::max(8.0, std::sqrt(2.0 * n + 1.0) + 6.0);
    const std::size_t m = 16384;
    const double h = y_max / static_cast<double>(m - 1);
    std::vector<double> fa(m), fb(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double y = h * static_cast<double>(i);
        const double f = specfun::hermite(n, y) * std::exp(-0.5 * y * y);
        fa[i] = f;
        fb[i] = y * f;
    }
    // trapezoid plus the h^2/12 f'(0) endpoint term (f' vanishes at y_max)
    const double fa_prime0 = (n >= 1) ? 2.0 * n * specfun::hermite(n - 1, 0.0) : 0.0;
    const double fb_prime0 = specfun::hermite(n, 0.0);
    HalfLineMoments out;
    out.a = numerics::trapezoid(fa, h) + h * h / 12.0 * fa_prime0;
    out.b = numerics::trapezoid(fb, h) + h * h / 12.0 * fb_prime0;
    if (out.b == 0.0) throw NumericalError("half_line_moments: vanishing b moment");
    out.ratio = out.a / out.b;
    return out;
}

}  // namespace momint::basis
