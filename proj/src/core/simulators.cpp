#include "koopcore/simulators.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "koopcore/errors.hpp"
#include "koopcore/rng.hpp"

namespace koop {

SnapshotMatrix simulate_rotation(const RotationParams& p, int steps,
                                 std::uint64_t seed) {
    if (steps < 1) throw ConfigError("simulate_rotation: steps must be >= 1");
    if (p.noise_halfwidth < 0)
        throw ConfigError("simulate_rotation: noise_halfwidth must be >= 0");
    Rng rng(seed, Rng::kStreamProcess);
    SnapshotMatrix out;
    out.states.resize(steps + 1, 1);
    out.meta = "rotation";
    double x = p.x0;
    out.states(0, 0) = x;
    for (int t = 0; t < steps; ++t) {
        x += p.theta + rng.symmetric(p.noise_halfwidth);
        out.states(t + 1, 0) = x;
    }
    return out;
}

StuartLandauResult simulate_stuart_landau(const StuartLandauParams& p, int steps,
                                          std::uint64_t seed) {
    if (steps < 1) throw ConfigError("simulate_stuart_landau: steps must be >= 1");
    if (p.dt <= 0) throw ConfigError("simulate_stuart_landau: dt must be > 0");
    if (p.r0 <= 0) throw ConfigError("simulate_stuart_landau: r0 must be > 0");
    if (p.proc_halfwidth < 0 || p.obs_halfwidth < 0)
        throw ConfigError("simulate_stuart_landau: noise half-widths must be >= 0");
    if (p.n_min > p.n_max)
        throw ConfigError("simulate_stuart_landau: n_min must be <= n_max");

    Rng proc(seed, Rng::kStreamProcess);
    Rng obs(seed, Rng::kStreamObservation);

    StuartLandauResult res;
    res.states.states.resize(steps + 1, 2);
    res.states.dt = p.dt;
    res.states.meta = "stuart_landau";

    double r = p.r0, th = p.theta0;
    res.states.states(0, 0) = r;
    res.states.states(0, 1) = th;
    for (int t = 0; t < steps; ++t) {
        double xi_r = proc.symmetric(p.proc_halfwidth);
        double xi_th = proc.symmetric(p.proc_halfwidth);
        double rn = r + (p.mu * r - r * r * r) * p.dt + p.sigma_p * p.dt * xi_r;
        double thn = th + (p.gamma - p.beta * r * r) * p.dt +
                     p.sigma_p * (p.dt / r) * xi_th;
        if (rn < 1e-6) {
            rn = 1e-6;
            res.clamped = true;
        }
        r = rn;
        th = thn;
        res.states.states(t + 1, 0) = r;
        res.states.states(t + 1, 1) = th;
    }

    const int n_obs = p.n_max - p.n_min + 1;
    res.observations.resize(n_obs, steps + 1);
    for (int t = 0; t <= steps; ++t) {
        double theta_t = res.states.states(t, 1);
        for (int j = 0; j < n_obs; ++j) {
            double n = double(p.n_min + j);
            Complex clean = std::exp(Complex(0.0, n * theta_t));
            double e_re = obs.symmetric(p.obs_halfwidth);
            double e_im = obs.symmetric(p.obs_halfwidth);
            res.observations(j, t) = clean + Complex(e_re, e_im);
        }
    }
    return res;
}

namespace {

// Constant-coefficient tridiagonal solve (Thomas), diag b, off-diag a.
void tridiag_solve(double a, double b, std::vector<double>& rhs) {
    const std::size_t n = rhs.size();
    std::vector<double> cp(n);
    cp[0] = a / b;
    rhs[0] /= b;
    for (std::size_t i = 1; i < n; ++i) {
        double m = b - a * cp[i - 1];
        cp[i] = a / m;
        rhs[i] = (rhs[i] - a * rhs[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cp[i] * rhs[i + 1];
}

}  // namespace

SnapshotMatrix simulate_burgers(const BurgersParams& p, std::uint64_t seed) {
    if (p.k < 0) throw ConfigError("simulate_burgers: viscosity must be >= 0");
    if (p.sigma_p < 0) throw ConfigError("simulate_burgers: sigma_p must be >= 0");
    if (p.dx <= 0 || p.dt <= 0 || p.t_end <= 0)
        throw ConfigError("simulate_burgers: dx, dt, t_end must be > 0");
    const long J = std::lround(1.0 / p.dx);
    if (J < 2 || std::abs(double(J) * p.dx - 1.0) > 1e-9)
        throw ConfigError("simulate_burgers: dx must divide the unit interval");
    const long n_steps = std::lround(p.t_end / p.dt);
    if (n_steps < 1 || std::abs(double(n_steps) * p.dt - p.t_end) > 1e-9 * std::max(1.0, p.t_end))
        throw ConfigError("simulate_burgers: dt must divide t_end");

    Rng forcing(seed, Rng::kStreamForcing);

    // full grid x_j = j dx, j = 0..J; Dirichlet u_0 = u_J = 0
    std::vector<double> u(J + 1);
    for (long j = 0; j <= J; ++j)
        u[j] = std::sin(2.0 * std::numbers::pi * double(j) * p.dx);
    u[0] = 0.0;
    u[J] = 0.0;

    SnapshotMatrix out;
    out.states.resize(n_steps + 1, J);  // nodes 1..J (left boundary dropped)
    out.dt = p.dt;
    out.meta = "burgers";
    for (long j = 1; j <= J; ++j) out.states(0, j - 1) = u[j];

    const double r = p.k * p.dt / (2.0 * p.dx * p.dx);
    std::vector<double> rhs(J - 1);
    for (long step = 0; step < n_steps; ++step) {
        for (long j = 1; j < J; ++j) {
            double lap = u[j - 1] - 2.0 * u[j] + u[j + 1];
            double adv = u[j] * (u[j + 1] - u[j - 1]) / (2.0 * p.dx);
            rhs[j - 1] = u[j] + r * lap - p.dt * adv +
                         p.dt * p.sigma_p * forcing.symmetric(1.0);
        }
        tridiag_solve(-r, 1.0 + 2.0 * r, rhs);
        double umax = 0.0;
        for (long j = 1; j < J; ++j) {
            u[j] = rhs[j - 1];
            umax = std::max(umax, std::abs(u[j]));
        }
        if (!std::isfinite(umax) || umax > 1e6)
            throw NumericalError("simulate_burgers: solution diverged at step " +
                                 std::to_string(step + 1));
        for (long j = 1; j <= J; ++j) out.states(step + 1, j - 1) = u[j];
    }
    return out;
}

RealMatrix linear_synthetic_system(int dim) {
    if (dim < 1) throw ConfigError("linear_synthetic_system: dim must be >= 1");
    RealMatrix A = RealMatrix::Zero(dim, dim);
    const int blocks = dim / 2;
    for (int j = 0; j < blocks; ++j) {
        double rho = 0.90 + 0.009 * j;
        double phi = 0.10 + 0.15 * j;
        double c = rho * std::cos(phi), s = rho * std::sin(phi);
        A(2 * j, 2 * j) = c;
        A(2 * j, 2 * j + 1) = -s;
        A(2 * j + 1, 2 * j) = s;
        A(2 * j + 1, 2 * j + 1) = c;
    }
    if (dim % 2 == 1) A(dim - 1, dim - 1) = 0.95;
    return A;
}

SnapshotMatrix simulate_linear_synthetic(const LinearSyntheticParams& p,
                                         int steps, std::uint64_t seed) {
    if (steps < 1) throw ConfigError("simulate_linear_synthetic: steps must be >= 1");
    if (p.noise_halfwidth < 0)
        throw ConfigError("simulate_linear_synthetic: noise_halfwidth must be >= 0");
    RealMatrix A = linear_synthetic_system(p.dim);
    Rng rng(seed, Rng::kStreamProcess);
    SnapshotMatrix out;
    out.states.resize(steps + 1, p.dim);
    out.dt = p.dt;
    out.meta = "linear_synthetic";
    RealVector x = RealVector::Ones(p.dim);
    out.states.row(0) = x.transpose();
    for (int t = 0; t < steps; ++t) {
        RealVector xi(p.dim);
        for (int j = 0; j < p.dim; ++j) xi(j) = rng.symmetric(p.noise_halfwidth);
        x = A * x + xi;
        out.states.row(t + 1) = x.transpose();
    }
    return out;
}

}  // namespace koop
