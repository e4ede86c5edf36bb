#pragma once

#include <vector>

#include "koopcore/edmd.hpp"
#include "koopcore/types.hpp"

namespace koop {

struct SpectrumReport {
    Vector discrete_eigs;    // dominance order (see sort_dominant)
    Vector continuous_eigs;  // log(lambda)/dt, same order; lambda = 0 mapped
                             // to -inf + 0i and excluded from counts
    double spectral_radius = 0.0;
    int unstable_discrete = 0;    // |lambda| > 1 + tol
    int unstable_continuous = 0;  // Re > tol / dt (zero eigenvalues excluded)
    Vector dominant;              // leading k_dominant slice
};

// Dominance order: descending magnitude, with near-equal magnitudes treated
// as ties and reordered by descending real part, then descending imaginary
// part.  Ties are detected by clustering consecutive magnitudes closer than
// 1e-9; without the tolerance, spectra on a common circle (all magnitudes
// equal up to roundoff) would be ordered by noise.
Vector sort_dominant(const Vector& eigs);

// Eigendecompose the estimate, map to continuous time via the principal
// branch of log(lambda)/dt, and classify stability at the given tolerance.
SpectrumReport analyze(const OperatorEstimate& est, double dt, double tol = 1e-3,
                       int k_dominant = 0);

// Minimal-cost assignment (Hungarian) between the top-k of each multiset in
// dominance order, Euclidean metric on C.  Symmetric pseudo-metric.
double spectral_distance(const Vector& a, const Vector& b, int k);

}  // namespace koop
