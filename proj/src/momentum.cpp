#include "momint/momentum.hpp"

#include <fftw3.h>

#include <cmath>

#include "momint/basis.hpp"
#include "momint/errors.hpp"
#include "momint/numerics.hpp"
#include "momint/specfun.hpp"

namespace momint::momentum {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInvSqrt2Pi = 0.398942280401432678;
constexpr double kInvSqrtPi = 0.564189583547756287;

void check_resolved(const ComplexWavefunction& psi) {
    psi.grid.validate();
    if (psi.values.size() != psi.grid.n_points)
        throw GridError("to_momentum: value/grid size mismatch");
    if (std::abs(psi.values.front()) > 1e-10 || std::abs(psi.values.back()) > 1e-10)
        throw GridError("to_momentum: wavefunction does not decay below 1e-10 at grid edges");
}

}  // namespace

std::complex<double> to_momentum_at(const ComplexWavefunction& psi, double q) {
    check_resolved(psi);
    const double h = psi.grid.spacing();
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t m = 0; m < psi.values.size(); ++m) {
        const double w = (m == 0 || m + 1 == psi.values.size()) ? 0.5 : 1.0;
        acc += w * psi.values[m] * std::polar(1.0, -q * psi.grid.point(m));
    }
    return acc * (h * kInvSqrt2Pi);
}

ComplexWavefunction to_momentum(const ComplexWavefunction& psi, const GridSpec& q_grid) {
    check_resolved(psi);
    q_grid.validate();
    ComplexWavefunction out{q_grid, std::vector<std::complex<double>>(q_grid.n_points)};
    for (std::size_t j = 0; j < q_grid.n_points; ++j)
        out.values[j] = to_momentum_at(psi, q_grid.point(j));
    return out;
}

GridSpec conjugate_grid(const GridSpec& y_grid) {
    y_grid.validate();
    const std::size_t n = y_grid.n_points;
    const double dq = 2.0 * kPi / (static_cast<double>(n) * y_grid.spacing());
    GridSpec q;
    q.n_points = n;
    q.lo = -static_cast<double>(n / 2) * dq;
    q.hi = q.lo + static_cast<double>(n - 1) * dq;
    return q;
}

bool is_conjugate(const GridSpec& y_grid, const GridSpec& q_grid) {
    const GridSpec c = conjugate_grid(y_grid);
    const double scale = std::max(std::abs(c.lo), std::abs(c.hi));
    return q_grid.n_points == c.n_points && std::abs(q_grid.lo - c.lo) <= 1e-12 * scale &&
           std::abs(q_grid.hi - c.hi) <= 1e-12 * scale;
}

ComplexWavefunction to_momentum_fft(const ComplexWavefunction& psi) {
    check_resolved(psi);
    const std::size_t n = psi.grid.n_points;
    const GridSpec q_grid = conjugate_grid(psi.grid);
    const double h = psi.grid.spacing();

    std::vector<std::complex<double>> in(n), dft(n);
    for (std::size_t m = 0; m < n; ++m)
        in[m] = (m % 2 == 0) ? psi.values[m] : -psi.values[m];
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
        reinterpret_cast<fftw_complex*>(dft.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    // (-1)^m psi_m turns the DFT bins into the centered grid q_j; finish the
    // trapezoid rule by de-weighting the two edge samples.
    ComplexWavefunction out{q_grid, std::vector<std::complex<double>>(n)};
    const double y_lo = psi.grid.lo;
    const double y_hi = psi.grid.point(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        const double q = q_grid.point(j);
        std::complex<double> s = dft[j] * std::polar(1.0, -q * y_lo);
        s -= 0.5 * (psi.values.front() * std::polar(1.0, -q * y_lo) +
                    psi.values.back() * std::polar(1.0, -q * y_hi));
        out.values[j] = s * (h * kInvSqrt2Pi);
    }
    return out;
}

MomentumDensity density_of(const ComplexWavefunction& amplitudes) {
    MomentumDensity d{amplitudes.grid, std::vector<double>(amplitudes.values.size())};
    for (std::size_t j = 0; j < amplitudes.values.size(); ++j)
        d.values[j] = std::norm(amplitudes.values[j]);
    return d;
}

double integral(const MomentumDensity& density) {
    return numerics::trapezoid(density.values, density.q_grid.spacing());
}

double reference_density(double q, double phi, double y0) {
    if (!(std::abs(q) <= 6.0 + 1e-12))
        throw DomainError("reference_density: |q| must be <= 6");
    if (!(std::abs(y0) <= 3.0 + 1e-12))
        throw DomainError("reference_density: |y0| must be <= 3");
    const double c = std::cos(0.5 * phi);
    const double s = std::sin(0.5 * phi);
    std::complex<double> e;
    if (y0 == 0.0)
        e = {specfun::erfi_real(q / std::sqrt(2.0)), 0.0};
    else
        e = specfun::erfi_complex(std::complex<double>(q, -y0) / std::sqrt(2.0));
    const std::complex<double> z = c + s * e;
    return std::exp(-q * q) * kInvSqrtPi * std::norm(z);
}

ExcitedDensity::ExcitedDensity(int n) : n_(n) {
    if (n < 0 || n > 60) throw DomainError("excited_density: order must be in [0, 60]");
    const double y_max = std::max(12.0, std::sqrt(2.0 * n + 1.0) + 6.0);
    const std::size_t m = 8192;
    h_ = y_max / static_cast<double>(m - 1);
    samples_.resize(m);
    y_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        y_[i] = h_ * static_cast<double>(i);
        samples_[i] = basis::eigenstate_value(n, y_[i]);
    }
    psi0_ = samples_[0];
    dpsi0_ = basis::eigenstate_slope_origin(n);
}

double ExcitedDensity::operator()(double q, double phi) const {
    // I = int_0^inf psi_n(y) [(-1)^n e^{iqy} + e^{i phi} e^{-iqy}] dy,
    // density = |I|^2 / (2 pi).  Endpoint-corrected trapezoid: the h^2/12
    // term uses the analytic derivative of the integrand at y = 0.
    const double par = (n_ % 2 == 0) ? 1.0 : -1.0;
    const std::complex<double> eip = std::polar(1.0, phi);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const std::complex<double> plus = std::polar(1.0, q * y_[i]);
        const double w = (i == 0 || i + 1 == samples_.size()) ? 0.5 : 1.0;
        acc += w * samples_[i] * (par * plus + eip * std::conj(plus));
    }
    std::complex<double> integral_value = acc * h_;
    const std::complex<double> f_prime0 =
        dpsi0_ * (par + eip) + std::complex<double>(0.0, q) * psi0_ * (par - eip);
    integral_value += h_ * h_ / 12.0 * f_prime0;
    return std::norm(integral_value) / (2.0 * kPi);
}

double excited_density(double q, double phi, int n) {
    return ExcitedDensity(n)(q, phi);
}

}  // namespace momint::momentum
