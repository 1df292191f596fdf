#pragma once

#include <cstddef>
#include <vector>

#include "momint/grid.hpp"

namespace momint::gpe {

// Trap units with H = -d^2/dy^2 + y^2 + g |psi|^2 (no 1/2 factors); the
// g = 0 ground state then has u = 1.
struct GpeParams {
    double g = 0.0;
    GridSpec grid;
    double dtau = 1e-3;
    double conv_tol = 1e-10;
    std::size_t max_steps = 400000;
};

struct GroundState {
    RealWavefunction psi;
    double u = 0.0;        // chemical potential <-d2 + y^2 + g|psi|^2>
    double energy = 0.0;   // E[psi], interaction counted with g/2
    double residual = 0.0; // ||(H_GP - u) psi|| at exit
    std::vector<double> energy_history;
    std::size_t steps = 0;
};

// Imaginary-time split-step relaxation with renormalization after every
// step.  The time step anneals after the energy plateaus until the
// eigenvalue residual drops below 1e-5; failure to get there raises
// ConvergenceError.
GroundState solve_ground_state(const GpeParams& params);

double tf_chemical_potential(double g);  // (3g/4)^{2/3}
double tf_half_width(double g);          // sqrt(u_TF)

// Thomas-Fermi profile sqrt((u - y^2)/g) on the grid, zero beyond the half
// width, renormalized so the sampled norm is 1.
RealWavefunction tf_wavefunction(double g, const GridSpec& grid);

// Closed-form momentum density of the step-imprinted Thomas-Fermi profile,
//   (3 pi / (8 d q^2)) [J_1(qd) cos(phi/2) + H_1(qd) sin(phi/2)]^2,
// evaluated by series for |qd| < 1e-3.
double tf_momentum_density(double q, double phi, double d);

struct TfApprox {
    double q0 = 0.0;
    double q_minus = 0.0;
    double q_plus = 0.0;
    double width = 0.0;
    double visibility = 0.0;
};

// Linearized notch analytics in the Thomas-Fermi regime.
TfApprox tf_approximations(double phi, double d);

}  // namespace momint::gpe
