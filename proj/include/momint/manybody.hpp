#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "momint/grid.hpp"
#include "momint/imprint.hpp"

namespace momint::manybody {

enum class Statistics { fermi, tg };

// N orthonormal single-particle orbitals sampled on a shared grid.
struct OrbitalSet {
    GridSpec grid;
    std::vector<int> indices;
    std::vector<std::vector<std::complex<double>>> values;  // one row per orbital

    std::size_t size() const { return values.size(); }
};

// Ground configuration {0, 1, ..., N-1}.
OrbitalSet ground_orbitals(int n_particles, const GridSpec& grid);

// Parity-selected excitation: odd orbitals {1, 3, ..., 2N-1}.
OrbitalSet pse_orbitals(int n_particles, const GridSpec& grid);

// Same phase factor applied to every orbital; Gram matrix is preserved.
OrbitalSet imprint_orbitals(const OrbitalSet& orbitals, double phi,
                            const imprint::PhaseProfile& profile);

struct ReducedDensityMatrix {
    GridSpec grid;
    Statistics statistics = Statistics::fermi;
    Eigen::MatrixXcd values;  // rho(y_i, y_j)
};

// Fermionic one-body density matrix sum_n psi_n*(y) psi_n(y').
ReducedDensityMatrix fermi_rspdm(const OrbitalSet& orbitals);

// Tonks-Girardeau one-body density matrix via the P-matrix representation:
// rho(y,y') = sum_{ln} psi_l*(y) A_{ln}(y,y') psi_n(y') with
// P_{ln} = delta_{ln} - 2 int_y^{y'} psi_l* psi_n dz  (y < y') and
// A = (P^{-1})^T det P, evaluated as the cofactor matrix for small N or
// when P is near singular, by LU otherwise.  N <= 20.
ReducedDensityMatrix tg_rspdm(const OrbitalSet& orbitals);

// n(q) = (2 pi)^{-1} int dy dy' e^{i q (y - y')} rho(y, y').  Checks that
// rho is Hermitian, and clips the O(1e-10) imaginary residue of the double
// transform after verifying it is small.
MomentumDensity momentum_distribution(const ReducedDensityMatrix& rho, const GridSpec& q_grid);
double momentum_distribution_at(const ReducedDensityMatrix& rho, double q);

// Fermi shortcut: n_F(q) = sum_n |psi_n~(q)|^2.
double fermi_momentum_density_at(const OrbitalSet& orbitals, double q);

// Location of the global maximum of n_F(q) near q = 0 for imprinted
// parity-selected orbitals, refined to 1e-6.  Throws NoPeakError when the
// center carries no weight (phi = 0 leaves a node at q = 0).
double peak_shift(const OrbitalSet& orbitals, double phi, const imprint::PhaseProfile& profile);

}  // namespace momint::manybody
