#pragma once

#include <vector>

#include "koopcore/dictionary.hpp"
#include "koopcore/edmd.hpp"
#include "koopcore/snapshots.hpp"

namespace koop {

// Lifted linear predictor: z_0 = Psi(x0)^T, z_{n+1} = K^T z_n, xhat_n = C z_n.
struct Predictor {
    OperatorEstimate op;
    Matrix C;         // n x K output map
    Dictionary dict;
};

// Least-squares output map argmin_C sum_i |x_i - C Psi(x_i)^T|^2 over the
// snapshots, via rcond-truncated pseudo-inverse of the stacked feature rows.
// Short or clustered trajectories make that feature matrix nearly singular;
// rcond is the guard and is deliberately a parameter.
Matrix fit_output_map(const Dictionary& dict, const SnapshotMatrix& snap,
                      double rcond = 1e-12);

Predictor make_predictor(OperatorEstimate op, Matrix C, Dictionary dict);

// Convenience: fit C on `fit_data` and wrap.
Predictor make_predictor(OperatorEstimate op, const Dictionary& dict,
                         const SnapshotMatrix& fit_data, double rcond = 1e-12);

// Rollout xhat_1 ... xhat_steps from x0 (real parts; the lifted state is
// propagated by repeated matrix-vector products, never a matrix power).
// max_imag, when given, receives the largest imaginary residue dropped by the
// real projection - a diagnostic for dictionary/operator mismatch.
RealMatrix predict(const Predictor& p, const RealVector& x0, int steps,
                   double* max_imag = nullptr);

struct PredictionError {
    RealVector per_step;
    double average = 0.0;
};

// Rowwise trajectory error.  angle_periods marks angle-valued coordinates:
// entry p > 0 means coordinate errors are measured with the chordal metric
// |e^{2 pi i xhat / p} - e^{2 pi i x / p}| (wrap-around safe); p == 0 means
// plain difference.  Empty vector: all coordinates plain.
PredictionError prediction_error(const RealMatrix& pred, const RealMatrix& truth,
                                 const std::vector<double>& angle_periods = {});

}  // namespace koop
