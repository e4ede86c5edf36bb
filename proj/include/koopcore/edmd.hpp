#pragma once

#include <string>

#include "koopcore/snapshots.hpp"
#include "koopcore/types.hpp"

namespace koop {

enum class Method {
    EDMD,
    DMD,
    RobustTikhonov,
    RobustLasso,
    NSDMD,
    SubspaceDMD,
};

const char* method_name(Method m);

// A fitted K x K Koopman matrix under the row-feature convention
// Psi(x_{m+1}) ~ Psi(x_m) K.  The Perron-Frobenius estimate is K^T.
struct OperatorEstimate {
    Matrix K;
    Method method = Method::EDMD;
    double reg_level = 0.0;   // lambda or c; 0 for unregularized
    std::string dict_id;
    double residual = 0.0;    // value of the fitted objective
    bool converged = true;    // false = iteration budget hit before tolerance
    int iterations = 0;
    double path_alpha = 0.0;  // ridge parameter chosen on the solution path
};

// Least-squares estimate K = G^+ A with rcond-truncated pseudo-inverse.
// residual = |GK - A|_F.
OperatorEstimate edmd(const GramPair& gp, double rcond = 1e-12);

// Exact DMD on raw states: columns X0 = [x_0..x_{M-1}], X1 = [x_1..x_M],
// SVD-truncate X0 to `rank` (rank < 0: full compact rank), project, and store
// the full-state operator in row convention (K = (U Atilde U^H)^T, padded
// eigenvalues are 0).
OperatorEstimate dmd(const SnapshotMatrix& snap, int rank = -1);

// P = K^T.
Matrix pf_from_koopman(const OperatorEstimate& est);

}  // namespace koop
