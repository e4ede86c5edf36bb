#include "koopcore/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

namespace koop {

Vector sort_dominant(const Vector& eigs) {
    const Eigen::Index n = eigs.size();
    std::vector<Eigen::Index> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(eigs(a)) > std::abs(eigs(b));
    });
    // cluster consecutive near-equal magnitudes and break ties by value
    const double tie_tol = 1e-9;
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i + 1;
        while (j < n &&
               std::abs(std::abs(eigs(idx[j - 1])) - std::abs(eigs(idx[j]))) <= tie_tol)
            ++j;
        std::sort(idx.begin() + i, idx.begin() + j,
                  [&](Eigen::Index a, Eigen::Index b) {
                      if (eigs(a).real() != eigs(b).real())
                          return eigs(a).real() > eigs(b).real();
                      return eigs(a).imag() > eigs(b).imag();
                  });
        i = j;
    }
    Vector out(n);
    for (Eigen::Index m = 0; m < n; ++m) out(m) = eigs(idx[m]);
    return out;
}

SpectrumReport analyze(const OperatorEstimate& est, double dt, double tol,
                       int k_dominant) {
    if (est.K.rows() != est.K.cols())
        throw DimensionError("analyze: operator must be square");
    if (est.K.rows() == 0) throw EmptyDataError("analyze: empty operator");
    if (!est.K.allFinite()) throw NumericalError("analyze: non-finite operator");
    if (dt <= 0) throw ConfigError("analyze: dt must be > 0");
    if (tol < 0) throw ConfigError("analyze: tol must be >= 0");
    if (k_dominant < 0) throw ConfigError("analyze: k_dominant must be >= 0");

    Eigen::ComplexEigenSolver<Matrix> es(est.K, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericalError("analyze: eigendecomposition failed");

    SpectrumReport rep;
    rep.discrete_eigs = sort_dominant(es.eigenvalues());
    const Eigen::Index n = rep.discrete_eigs.size();
    rep.continuous_eigs.resize(n);
    rep.spectral_radius = 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        Complex lam = rep.discrete_eigs(i);
        double mag = std::abs(lam);
        rep.spectral_radius = std::max(rep.spectral_radius, mag);
        if (mag > 1.0 + tol) ++rep.unstable_discrete;
        if (mag == 0.0) {
            rep.continuous_eigs(i) = Complex(-inf, 0.0);
        } else {
            rep.continuous_eigs(i) = std::log(lam) / dt;  // principal branch
            if (rep.continuous_eigs(i).real() > tol / dt) ++rep.unstable_continuous;
        }
    }
    Eigen::Index k = std::min<Eigen::Index>(k_dominant, n);
    rep.dominant = rep.discrete_eigs.head(k);
    return rep;
}

namespace {

// Potential-based Hungarian assignment; returns the minimal total cost of a
// perfect matching on the square cost matrix.
double min_assignment_cost(const RealMatrix& cost) {
    const int n = int(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j) total += cost(p[j] - 1, j - 1);
    return total;
}

}  // namespace

double spectral_distance(const Vector& a, const Vector& b, int k) {
    if (k < 1) throw ConfigError("spectral_distance: k must be >= 1");
    if (a.size() == 0 || b.size() == 0)
        throw EmptyDataError("spectral_distance: empty spectrum");
    if (k > a.size() || k > b.size())
        throw DimensionError("spectral_distance: k exceeds a spectrum size");
    Vector sa = sort_dominant(a);
    Vector sb = sort_dominant(b);
    const Eigen::Index kk = k;
    RealMatrix cost(kk, kk);
    for (Eigen::Index i = 0; i < kk; ++i)
        for (Eigen::Index j = 0; j < kk; ++j)
            cost(i, j) = std::abs(sa(i) - sb(j));
    return min_assignment_cost(cost);
}

}  // namespace koop
