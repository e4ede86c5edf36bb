#pragma once

#include "koopcore/types.hpp"

namespace koop {

// Moore-Penrose pseudo-inverse via SVD; singular values <= rcond * sigma_max
// are truncated.  rcond <= 0 keeps every nonzero singular value.
Matrix pinv(const Matrix& m, double rcond = 1e-12);
RealMatrix pinv(const RealMatrix& m, double rcond = 1e-12);

// Largest singular value.
double spectral_norm(const Matrix& m);
double spectral_norm(const RealMatrix& m);

bool all_finite(const Matrix& m);
bool all_finite(const RealMatrix& m);

}  // namespace koop
