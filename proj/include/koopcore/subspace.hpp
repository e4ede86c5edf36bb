#pragma once

#include "koopcore/types.hpp"

namespace koop {

struct SpectralModes {
    Vector eigenvalues;   // nonzero eigenvalues of the reduced operator
    Matrix modes;         // one column per eigenvalue, in observation space
    int truncation_rank = 0;  // rank q used for the projected data matrix
};

// Subspace DMD for time series with observation noise.  Y holds one
// observation per column in time order (needs at least 4 columns).  The four
// shifted blocks Y0..Y3 form past/future stacks Yp = [Y0; Y1], Yf = [Y2; Y3];
// the rows of Yf are orthogonally projected onto the row space of Yp, the
// projected matrix is SVD-compressed to `rank` (rank < 0: full compact rank),
// and the operator is read off the two half-blocks of the compressed basis.
// Eigenvalues at zero are excluded from mode reconstruction.
SpectralModes subspace_dmd(const Matrix& Y, int rank = -1);

// Dense observation-space operator rebuilt from modes, returned in the row
// convention (y_{t+1}^T ~ y_t^T K): K = (W diag(lambda) W^+)^T.
Matrix operator_from_modes(const SpectralModes& modes);

}  // namespace koop
