#pragma once

#include <complex>
#include <vector>

#include "momint/grid.hpp"

namespace momint::momentum {

// phi(q) = (2pi)^{-1/2} int psi(y) exp(-i q y) dy, trapezoid on psi's grid.
// Requires |psi| < 1e-10 at the grid edges (the state must fit the grid).
std::complex<double> to_momentum_at(const ComplexWavefunction& psi, double q);
ComplexWavefunction to_momentum(const ComplexWavefunction& psi, const GridSpec& q_grid);

// Conjugate momentum grid of a position grid: n points spaced 2pi/(n dy),
// centered like fftfreq.  Discrete Parseval is exact on this pairing.
GridSpec conjugate_grid(const GridSpec& y_grid);
bool is_conjugate(const GridSpec& y_grid, const GridSpec& q_grid);

// FFT evaluation of to_momentum on the conjugate grid; agrees with the
// direct summation within 1e-10.
ComplexWavefunction to_momentum_fft(const ComplexWavefunction& psi);

MomentumDensity density_of(const ComplexWavefunction& amplitudes);
double integral(const MomentumDensity& density);

// Closed-form |phi_0(q)|^2 for the step-imprinted displaced ground state:
//   exp(-q^2)/sqrt(pi) |cos(phi/2) + sin(phi/2) erfi((q - i y0)/sqrt(2))|^2.
// Preconditions |q| <= 6, |y0| <= 3 keep erfi in its validated box.
double reference_density(double q, double phi, double y0);

// Step-imprinted n-th eigenstate density via half-line quadrature with an
// analytic endpoint correction.  One-off evaluation; for sweeps construct
// ExcitedDensity once and reuse it.
double excited_density(double q, double phi, int n);

class ExcitedDensity {
  public:
    explicit ExcitedDensity(int n);
    double operator()(double q, double phi) const;
    int order() const { return n_; }

  private:
    int n_;
    double h_;
    double psi0_;        // psi_n(0)
    double dpsi0_;       // psi_n'(0)
    std::vector<double> samples_;
    std::vector<double> y_;
};

}  // namespace momint::momentum
