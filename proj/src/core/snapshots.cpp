#include "koopcore/snapshots.hpp"

#include <string>

#include "koopcore/rng.hpp"

namespace koop {

namespace {

void require_series(const SnapshotMatrix& snap) {
    if (snap.count() < 2)
        throw EmptyDataError("snapshot series has " + std::to_string(snap.count()) +
                             " states; need at least 2 to form a pair");
    if (!snap.states.allFinite())
        throw DomainError("snapshot series contains a non-finite entry");
}

}  // namespace

SnapshotMatrix SnapshotMatrix::head(int count) const {
    if (count < 0 || count > this->count())
        throw DimensionError("snapshot head: requested " + std::to_string(count) +
                             " of " + std::to_string(this->count()) + " states");
    SnapshotMatrix out;
    out.states = states.topRows(count);
    out.dt = dt;
    out.meta = meta;
    return out;
}

std::vector<std::pair<RealVector, RealVector>> make_pairs(const SnapshotMatrix& snap) {
    require_series(snap);
    std::vector<std::pair<RealVector, RealVector>> pairs;
    pairs.reserve(snap.pair_count());
    for (int m = 0; m < snap.pair_count(); ++m)
        pairs.emplace_back(snap.states.row(m).transpose(),
                           snap.states.row(m + 1).transpose());
    return pairs;
}

GramPair assemble(const Dictionary& dict, const SnapshotMatrix& snap) {
    require_series(snap);
    if (snap.state_dim() != dict.state_dim())
        throw DimensionError("assemble: snapshots have dimension " +
                             std::to_string(snap.state_dim()) + ", dictionary expects " +
                             std::to_string(dict.state_dim()));
    const int K = dict.feature_dim();
    const int M = snap.pair_count();
    Matrix G = Matrix::Zero(K, K);
    Matrix A = Matrix::Zero(K, K);
    Vector cur = dict.eval(snap.states.row(0).transpose());
    for (int m = 0; m < M; ++m) {
        Vector next = dict.eval(snap.states.row(m + 1).transpose());
        G.noalias() += cur.conjugate() * cur.transpose();
        A.noalias() += cur.conjugate() * next.transpose();
        cur.swap(next);
    }
    G /= static_cast<double>(M);
    A /= static_cast<double>(M);
    G = ((G + G.adjoint()) * 0.5).eval();
    return GramPair{std::move(G), std::move(A), M};
}

Matrix gram(const Dictionary& dict, const SnapshotMatrix& snap) {
    return gram(dict, snap.states);
}

Matrix feature_matrix(const Dictionary& dict, const SnapshotMatrix& snap) {
    if (snap.count() == 0) throw EmptyDataError("feature_matrix: empty snapshot series");
    if (snap.state_dim() != dict.state_dim())
        throw DimensionError("feature_matrix: snapshot/dictionary dimension mismatch");
    Matrix F(snap.count(), dict.feature_dim());
    for (int m = 0; m < snap.count(); ++m)
        F.row(m) = dict.eval(snap.states.row(m).transpose()).transpose();
    return F;
}

GramPair assemble_from_features(const Matrix& feature_rows) {
    const int rows = static_cast<int>(feature_rows.rows());
    if (rows < 2)
        throw EmptyDataError("assemble_from_features: need at least 2 feature rows");
    if (!feature_rows.allFinite())
        throw DomainError("assemble_from_features: non-finite feature entry");
    const int M = rows - 1;
    Matrix F0 = feature_rows.topRows(M);
    Matrix F1 = feature_rows.bottomRows(M);
    Matrix G = (F0.adjoint() * F0) / static_cast<double>(M);
    Matrix A = (F0.adjoint() * F1) / static_cast<double>(M);
    G = ((G + G.adjoint()) * 0.5).eval();
    return GramPair{std::move(G), std::move(A), M};
}

SnapshotMatrix add_uniform_noise(const SnapshotMatrix& snap, double halfwidth,
                                 std::uint64_t seed) {
    if (halfwidth < 0) throw ConfigError("add_uniform_noise: negative halfwidth");
    Rng rng(seed, Rng::kStreamCorruption);
    SnapshotMatrix out = snap;
    for (Eigen::Index i = 0; i < out.states.rows(); ++i)
        for (Eigen::Index j = 0; j < out.states.cols(); ++j)
            out.states(i, j) += rng.symmetric(halfwidth);
    return out;
}

}  // namespace koop
