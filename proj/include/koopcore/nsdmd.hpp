#pragma once

#include "koopcore/edmd.hpp"
#include "koopcore/robust.hpp"

namespace koop {

struct NsdmdResult {
    OperatorEstimate estimate;   // method NSDMD, K real nonnegative
    RealMatrix markov;           // M = Lambda K Lambda^{-1}, rows on the simplex
    // max of (-min K, -min markov, max |rowsum(markov) - 1|)
    double constraint_violation = 0.0;
};

// Structured estimate: minimize |GK - A|_F + lambda |K|_F subject to
//   K >= 0 entrywise,  Lambda K Lambda^{-1} >= 0,  Lambda K Lambda^{-1} 1 = 1.
// Projected proximal gradient with Dykstra alternation between the orthant
// and the similarity-transformed row-simplex set.  Requires a real G/A pair
// (UnsupportedDictionaryError otherwise) and symmetric Lambda with smallest
// eigenvalue > 1e-10 (NumericalError otherwise).
NsdmdResult nsdmd_robust(const GramPair& gp, const RealMatrix& Lambda,
                         double lambda, const RobustConfig& cfg = {});

// P = K^T; inherits entrywise nonnegativity.
RealMatrix pf_estimate(const NsdmdResult& res);

}  // namespace koop
