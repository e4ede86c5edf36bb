#include "koopcore/predictor.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "koopcore/linalg.hpp"

namespace koop {

Matrix fit_output_map(const Dictionary& dict, const SnapshotMatrix& snap,
                      double rcond) {
    if (snap.count() == 0) throw EmptyDataError("fit_output_map: no snapshots");
    if (snap.state_dim() != dict.state_dim())
        throw DimensionError("fit_output_map: snapshot/dictionary dimension mismatch");
    Matrix F = feature_matrix(dict, snap);              // M x K
    Matrix X = snap.states.cast<Complex>();             // M x n
    return (pinv(F, rcond) * X).transpose();            // n x K
}

Predictor make_predictor(OperatorEstimate op, Matrix C, Dictionary dict) {
    const Eigen::Index K = dict.feature_dim();
    if (op.K.rows() != K || op.K.cols() != K)
        throw DimensionError("make_predictor: operator shape does not match dictionary");
    if (C.cols() != K || C.rows() != dict.state_dim())
        throw DimensionError("make_predictor: output map shape mismatch");
    return Predictor{std::move(op), std::move(C), std::move(dict)};
}

Predictor make_predictor(OperatorEstimate op, const Dictionary& dict,
                         const SnapshotMatrix& fit_data, double rcond) {
    Matrix C = fit_output_map(dict, fit_data, rcond);
    return make_predictor(std::move(op), std::move(C), dict);
}

RealMatrix predict(const Predictor& p, const RealVector& x0, int steps,
                   double* max_imag) {
    if (steps < 0) throw ConfigError("predict: steps must be >= 0");
    if (x0.size() != p.dict.state_dim())
        throw DimensionError("predict: initial state dimension mismatch");
    const Eigen::Index n = p.dict.state_dim();
    Matrix Kt = p.op.K.transpose();
    Vector z = p.dict.eval(x0);
    RealMatrix out(steps, n);
    double worst = 0.0;
    for (int s = 0; s < steps; ++s) {
        z = Kt * z;
        Vector xhat = p.C * z;
        out.row(s) = xhat.real().transpose();
        worst = std::max(worst, xhat.imag().cwiseAbs().maxCoeff());
        if (!out.row(s).allFinite())
            throw NumericalError("predict: rollout diverged at step " + std::to_string(s + 1));
    }
    if (max_imag) *max_imag = worst;
    return out;
}

PredictionError prediction_error(const RealMatrix& pred, const RealMatrix& truth,
                                 const std::vector<double>& angle_periods) {
    if (pred.rows() != truth.rows() || pred.cols() != truth.cols())
        throw DimensionError("prediction_error: shape mismatch");
    if (pred.rows() == 0) throw EmptyDataError("prediction_error: no steps");
    if (!angle_periods.empty() &&
        Eigen::Index(angle_periods.size()) != pred.cols())
        throw DimensionError("prediction_error: angle_periods length mismatch");

    PredictionError err;
    err.per_step.resize(pred.rows());
    for (Eigen::Index s = 0; s < pred.rows(); ++s) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < pred.cols(); ++j) {
            double d = pred(s, j) - truth(s, j);
            if (!angle_periods.empty() && angle_periods[j] > 0) {
                // |e^{2 pi i a/p} - e^{2 pi i b/p}| = 2 |sin(pi (a-b)/p)|
                d = 2.0 * std::abs(std::sin(std::numbers::pi * d / angle_periods[j]));
            }
            acc += d * d;
        }
        err.per_step(s) = std::sqrt(acc);
    }
    err.average = err.per_step.mean();
    return err;
}

}  // namespace koop
