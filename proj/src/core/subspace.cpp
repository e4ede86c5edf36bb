#include "koopcore/subspace.hpp"

#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "koopcore/errors.hpp"
#include "koopcore/linalg.hpp"

namespace koop {

SpectralModes subspace_dmd(const Matrix& Y, int rank) {
    const Eigen::Index Ko = Y.rows();
    const Eigen::Index N = Y.cols();
    if (Ko == 0 || N == 0) throw EmptyDataError("subspace_dmd: empty observation matrix");
    if (N < 4)
        throw EmptyDataError("subspace_dmd: needs at least 4 observations in time order");
    if (!Y.allFinite()) throw NumericalError("subspace_dmd: non-finite observation");
    if (rank == 0 || rank < -1)
        throw ConfigError("subspace_dmd: rank must be positive (or -1 for automatic)");

    const Eigen::Index m = N - 3;
    Matrix Yp(2 * Ko, m), Yf(2 * Ko, m);
    Yp.topRows(Ko) = Y.middleCols(0, m);
    Yp.bottomRows(Ko) = Y.middleCols(1, m);
    Yf.topRows(Ko) = Y.middleCols(2, m);
    Yf.bottomRows(Ko) = Y.middleCols(3, m);

    // rows of Yf projected onto the row space of Yp
    Matrix O = Yf * Yp.adjoint() * pinv(Matrix(Yp * Yp.adjoint()), 1e-12) * Yp;

    Eigen::JacobiSVD<Matrix> svd_o(O, Eigen::ComputeThinU);
    const RealVector& sv = svd_o.singularValues();
    Eigen::Index compact = 0;
    if (sv.size() > 0 && sv(0) > 0)
        while (compact < sv.size() && sv(compact) > sv(0) * 1e-12) ++compact;
    if (compact == 0) throw NumericalError("subspace_dmd: projected data matrix is zero");

    Eigen::Index q = rank < 0 ? compact : Eigen::Index(rank);
    if (q > compact)
        throw NumericalError("subspace_dmd: requested rank " + std::to_string(q) +
                             " exceeds achievable rank " + std::to_string(compact));
    Matrix Uq = svd_o.matrixU().leftCols(q);
    Matrix Uq1 = Uq.topRows(Ko);
    Matrix Uq2 = Uq.bottomRows(Ko);

    Eigen::JacobiSVD<Matrix> svd1(Uq1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& s1 = svd1.singularValues();
    Eigen::Index r = 0;
    if (s1.size() > 0 && s1(0) > 0)
        while (r < s1.size() && s1(r) > s1(0) * 1e-12) ++r;
    if (r == 0)
        throw NumericalError("subspace_dmd: upper half of the compressed basis is zero");

    Matrix VS = svd1.matrixV().leftCols(r);
    for (Eigen::Index j = 0; j < r; ++j) VS.col(j) /= s1(j);
    Matrix At = svd1.matrixU().leftCols(r).adjoint() * Uq2 * VS;

    Eigen::ComplexEigenSolver<Matrix> es(At);
    if (es.info() != Eigen::Success)
        throw NumericalError("subspace_dmd: eigendecomposition failed");
    const Vector& ew = es.eigenvalues();
    Matrix recon = Uq2 * VS;  // lifts reduced eigenvectors into observation space

    Eigen::Index kept = 0;
    for (Eigen::Index i = 0; i < ew.size(); ++i)
        if (std::abs(ew(i)) > 1e-12) ++kept;

    SpectralModes out;
    out.truncation_rank = int(q);
    out.eigenvalues.resize(kept);
    out.modes.resize(Ko, kept);
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < ew.size(); ++i) {
        if (std::abs(ew(i)) <= 1e-12) continue;
        out.eigenvalues(c) = ew(i);
        out.modes.col(c) = recon * es.eigenvectors().col(i) / ew(i);
        ++c;
    }
    return out;
}

Matrix operator_from_modes(const SpectralModes& sm) {
    if (sm.modes.cols() == 0 || sm.eigenvalues.size() == 0)
        throw EmptyDataError("operator_from_modes: no modes");
    if (sm.modes.cols() != sm.eigenvalues.size())
        throw DimensionError("operator_from_modes: modes/eigenvalues count mismatch");
    Matrix WLam = sm.modes * sm.eigenvalues.asDiagonal();
    return (WLam * pinv(sm.modes)).transpose();
}

}  // namespace koop
