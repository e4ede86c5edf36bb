#pragma once

#include "koopcore/dictionary.hpp"
#include "koopcore/edmd.hpp"
#include "koopcore/snapshots.hpp"

namespace koop {

struct RobustConfig {
    double solver_tol = 1e-9;      // 1-D search tolerance on the ridge path
    double alpha_max_factor = 10;  // path upper end = factor * |G^H G|_2
    int max_iter = 5000;           // iteration budget for first-order solvers
    double prox_step = 0;          // > 0: fixed proximal step; 0: adaptive
    bool squared_objective = false;  // minimize |GK-A|_F^2 + lambda |K|_F^2
};

// Feature-space perturbation radius implied by a data-space radius rho:
// rho * max_m |Psi(x_m)|_F * max_m |Psi'(x_m)|_F over the supplied snapshots.
double uncertainty_bound(const Dictionary& dict, const SnapshotMatrix& snap,
                         double rho);

struct WorstCase {
    double value;     // |GK - A|_F + lambda |K|_F (additive upper bound)
    Matrix dG_star;   // feasible perturbation, |dG_star|_F <= lambda
    double achieved;  // |(G + dG_star) K - A|_F, the objective it attains
};

// Inner maximization sup_{|dG|_F <= lambda} |(G + dG)K - A|_F.  dG_star is
// the exact maximizer (secular-equation construction), so
//   monte-carlo feasible draws <= achieved <= value
// always holds; achieved == value exactly when K has rank <= 1.
WorstCase worst_case(const GramPair& gp, const Matrix& K, double lambda);

// Minimizer of |GK - A|_F + lambda |K|_F along the ridge path
// K_alpha = (G^H G + alpha I)^{-1} G^H A, with the alpha = 0 pseudo-inverse
// and K = 0 endpoints as extra candidates.  The chosen alpha is reported in
// the estimate (path_alpha).
OperatorEstimate robust_tikhonov(const GramPair& gp, double lambda,
                                 const RobustConfig& cfg = {});

// Approximate minimizer of |GK - A|_F + c * sum_ij |K_ij| by proximal
// subgradient iteration with complex soft-thresholding.  converged flags
// whether the decrease tolerance was met inside the iteration budget.
OperatorEstimate robust_lasso(const GramPair& gp, double c,
                              const RobustConfig& cfg = {});

}  // namespace koop
