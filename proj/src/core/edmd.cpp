#include "koopcore/edmd.hpp"

#include <Eigen/SVD>

#include "koopcore/linalg.hpp"

namespace koop {

const char* method_name(Method m) {
    switch (m) {
        case Method::EDMD: return "edmd";
        case Method::DMD: return "dmd";
        case Method::RobustTikhonov: return "robust_tikhonov";
        case Method::RobustLasso: return "robust_lasso";
        case Method::NSDMD: return "nsdmd";
        case Method::SubspaceDMD: return "subspace_dmd";
    }
    return "unknown";
}

OperatorEstimate edmd(const GramPair& gp, double rcond) {
    if (gp.G.rows() != gp.G.cols() || gp.A.rows() != gp.A.cols() ||
        gp.G.rows() != gp.A.rows())
        throw DimensionError("edmd: G and A must be square with matching shape");
    if (!gp.G.allFinite() || !gp.A.allFinite())
        throw NumericalError("edmd: non-finite entry in G or A");
    OperatorEstimate est;
    est.K = pinv(gp.G, rcond) * gp.A;
    est.method = Method::EDMD;
    est.reg_level = 0.0;
    est.residual = (gp.G * est.K - gp.A).norm();
    return est;
}

OperatorEstimate dmd(const SnapshotMatrix& snap, int rank) {
    if (snap.count() < 2) throw EmptyDataError("dmd: need at least 2 snapshots");
    if (!snap.states.allFinite()) throw NumericalError("dmd: non-finite snapshot entry");
    const int M = snap.pair_count();
    // columns are consecutive states
    RealMatrix X0 = snap.states.topRows(M).transpose();
    RealMatrix X1 = snap.states.bottomRows(M).transpose();

    Eigen::JacobiSVD<RealMatrix> svd(X0, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    int compact = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > s(0) * 1e-12) ++compact;
    int r = rank < 0 ? compact : rank;
    if (r <= 0 || r > compact)
        throw NumericalError("dmd: requested rank " + std::to_string(rank) +
                             " exceeds achievable rank " + std::to_string(compact));

    RealMatrix U = svd.matrixU().leftCols(r);
    RealMatrix V = svd.matrixV().leftCols(r);
    RealVector sinv = s.head(r).cwiseInverse();
    // projected operator Atilde = U^T X1 V S^{-1}; stored full-state in the
    // row convention (x_{t+1}^T = x_t^T K), padding eigenvalues with zeros
    RealMatrix Atilde = U.transpose() * X1 * V * sinv.asDiagonal();
    RealMatrix Kfull = U * Atilde * U.transpose();

    OperatorEstimate est;
    est.K = Kfull.transpose().cast<Complex>();
    est.method = Method::DMD;
    est.reg_level = 0.0;
    est.residual = (Kfull * X0 - X1).norm();
    est.iterations = r;  // rank actually used
    return est;
}

Matrix pf_from_koopman(const OperatorEstimate& est) {
    return est.K.transpose();
}

}  // namespace koop
