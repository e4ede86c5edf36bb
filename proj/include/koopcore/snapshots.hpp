#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "koopcore/dictionary.hpp"
#include "koopcore/types.hpp"

namespace koop {

// Ordered time series x_0 ... x_M, one snapshot per row.  dt is the sampling
// period in seconds; meta is a free-form source tag that travels with the data.
struct SnapshotMatrix {
    RealMatrix states;  // (M+1) x n
    double dt = 1.0;
    std::string meta;

    int count() const { return static_cast<int>(states.rows()); }
    int state_dim() const { return static_cast<int>(states.cols()); }
    int pair_count() const { return count() - 1; }

    // First `count` snapshots as a new series (shares dt/meta).
    SnapshotMatrix head(int count) const;
};

// The two feature-space matrices every estimator consumes:
//   G = (1/M) sum_m Psi(x_m)^H Psi(x_m)   (Hermitian PSD)
//   A = (1/M) sum_m Psi(x_m)^H Psi(x_{m+1})
struct GramPair {
    Matrix G;
    Matrix A;
    int pair_count = 0;
};

// Consecutive pairs (x_m, x_{m+1}), exactly M of them.
std::vector<std::pair<RealVector, RealVector>> make_pairs(const SnapshotMatrix& snap);

// Assemble G and A under the row-feature convention Psi(x_{m+1}) ~ Psi(x_m) K.
GramPair assemble(const Dictionary& dict, const SnapshotMatrix& snap);

// Empirical Gram over all snapshots in `snap` (forwards to the dictionary).
Matrix gram(const Dictionary& dict, const SnapshotMatrix& snap);

// Feature matrix with one row per snapshot: row m = Psi(x_m).
Matrix feature_matrix(const Dictionary& dict, const SnapshotMatrix& snap);

// Build G/A directly from a feature-row matrix (rows = time-ordered feature
// vectors).  Used when the features themselves are the measured data, e.g.
// noisy spectral observations.
GramPair assemble_from_features(const Matrix& feature_rows);

// Measurement-corruption model: adds iid Uniform[-halfwidth, halfwidth) noise
// to every state entry.  Deterministic in (seed); draws from the corruption
// stream so it never aliases simulator noise.
SnapshotMatrix add_uniform_noise(const SnapshotMatrix& snap, double halfwidth,
                                 std::uint64_t seed);

}  // namespace koop
