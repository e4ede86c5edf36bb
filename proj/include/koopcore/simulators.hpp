#pragma once

#include <cstdint>

#include "koopcore/snapshots.hpp"
#include "koopcore/types.hpp"

namespace koop {

// x_{t+1} = x_t + theta + xi_t, xi ~ iid Uniform[-h, h).  States are kept on
// the real line (unwrapped); periodic dictionaries absorb the winding.
struct RotationParams {
    double theta = 3.14159265358979323846 / 320.0;
    double noise_halfwidth = 0.7;
    double x0 = 1.0;
};
SnapshotMatrix simulate_rotation(const RotationParams& p, int steps,
                                 std::uint64_t seed);

// Discrete stochastic limit-cycle map in polar coordinates:
//   r'     = r + (mu r - r^3) dt          + sigma_p * dt * xi_r
//   theta' = theta + (gamma - beta r^2) dt + sigma_p * (dt / r) * xi_theta
// with xi iid Uniform[-proc_halfwidth, proc_halfwidth).  Observations are
// y_t = [e^{i n theta_t}]_{n_min..n_max} plus complex uniform noise with
// half-width obs_halfwidth on both the real and imaginary parts.
struct StuartLandauParams {
    double mu = 1.0;
    double gamma = 1.0;
    double beta = 0.0;
    double sigma_p = 1.0;
    double proc_halfwidth = 0.3;
    double obs_halfwidth = 0.1;
    double dt = 0.01;
    double r0 = 1.0;
    double theta0 = -3.14159265358979323846;
    int n_min = -10;
    int n_max = 10;
};
struct StuartLandauResult {
    SnapshotMatrix states;  // rows (r_t, theta_t), t = 0..steps
    Matrix observations;    // (n_max - n_min + 1) x (steps + 1), columns in time
    bool clamped = false;   // r hit the 1e-6 floor at least once
};
StuartLandauResult simulate_stuart_landau(const StuartLandauParams& p, int steps,
                                          std::uint64_t seed);

// Viscous Burgers with additive uniform forcing on [0, 1], Dirichlet ends
// pinned at zero, initial condition sin(2 pi x).  Semi-implicit march:
// Crank-Nicolson diffusion (tridiagonal solve) + explicit central-difference
// advection + dt * sigma_p * Uniform[-1, 1) forcing per interior node per
// step.  The state drops the left boundary node (identically zero), leaving
// 1/dx columns.  Divergence (|u|_inf > 1e6 or non-finite) raises
// NumericalError.
struct BurgersParams {
    double k = 0.01;       // viscosity
    double sigma_p = 0.2;  // forcing scale
    double dx = 0.01;
    double dt = 0.02;
    double t_end = 1.0;
};
SnapshotMatrix simulate_burgers(const BurgersParams& p, std::uint64_t seed);

// Fixed stable linear benchmark system x_{t+1} = Abar x_t + xi,
// xi ~ Uniform[-noise_halfwidth, noise_halfwidth)^dim, x_0 = (1, ..., 1).
// Abar is a deterministic block-diagonal stack of damped planar rotations
// (spectral radius < 1), the same matrix for every seed.
struct LinearSyntheticParams {
    int dim = 21;
    double noise_halfwidth = 0.4;
    double dt = 0.2;
};
RealMatrix linear_synthetic_system(int dim);
SnapshotMatrix simulate_linear_synthetic(const LinearSyntheticParams& p,
                                         int steps, std::uint64_t seed);

}  // namespace koop
