#include "koopcore/robust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "koopcore/linalg.hpp"

namespace koop {

namespace {

void check_pair(const GramPair& gp, const char* who) {
    if (gp.G.rows() != gp.G.cols() || gp.A.rows() != gp.A.cols() ||
        gp.G.rows() != gp.A.rows())
        throw DimensionError(std::string(who) + ": G and A must be square with matching shape");
    if (!gp.G.allFinite() || !gp.A.allFinite())
        throw NumericalError(std::string(who) + ": non-finite entry in G or A");
}

}  // namespace

double uncertainty_bound(const Dictionary& dict, const SnapshotMatrix& snap,
                         double rho) {
    if (rho < 0) throw ConfigError("uncertainty_bound: rho must be >= 0");
    if (snap.count() == 0) throw EmptyDataError("uncertainty_bound: no snapshots");
    if (snap.state_dim() != dict.state_dim())
        throw DimensionError("uncertainty_bound: snapshot/dictionary dimension mismatch");
    double psi_max = 0.0, jac_max = 0.0;
    for (int m = 0; m < snap.count(); ++m) {
        RealVector x = snap.states.row(m).transpose();
        psi_max = std::max(psi_max, dict.eval(x).norm());
        jac_max = std::max(jac_max, dict.jacobian(x).norm());
    }
    return rho * psi_max * jac_max;
}

// ---------------------------------------------------------------------------
// Inner maximization  sup { |R + dG K|_F : |dG|_F <= lambda },  R = GK - A.
//
// Stationarity of the Lagrangian gives dG(eta) = R K^H (eta I - K K^H)^{-1}
// with multiplier eta > sigma_1(K)^2, and |dG(eta)|_F decreases monotonically
// in eta, so the constraint |dG(eta)|_F = lambda pins a unique eta (regular
// case).  When R K^H has no mass on the top eigenspace of K K^H the equation
// can be unsolvable ("hard case"); the leftover budget then goes into a
// rank-one term supported on that eigenspace.
WorstCase worst_case(const GramPair& gp, const Matrix& K, double lambda) {
    check_pair(gp, "worst_case");
    if (K.rows() != gp.G.cols() || K.cols() != gp.A.cols())
        throw DimensionError("worst_case: K shape incompatible with G/A");
    if (lambda < 0) throw ConfigError("worst_case: lambda must be >= 0");

    const Eigen::Index k = gp.G.rows();
    Matrix R = gp.G * K - gp.A;
    WorstCase out;
    out.value = R.norm() + lambda * K.norm();
    out.dG_star = Matrix::Zero(k, k);
    out.achieved = R.norm();
    if (lambda == 0.0 || K.norm() == 0.0) return out;

    if (R.norm() == 0.0) {
        // objective reduces to |dG K|_F, maximized by a rank-one perturbation
        // hitting the top singular direction of K
        Eigen::JacobiSVD<Matrix> svd(K, Eigen::ComputeThinU);
        Vector u1 = svd.matrixU().col(0);
        out.dG_star = lambda * (u1 * u1.adjoint());
        out.achieved = (out.dG_star * K).norm();
        return out;
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(K * K.adjoint());
    if (es.info() != Eigen::Success)
        throw NumericalError("worst_case: eigendecomposition failed");
    RealVector s = es.eigenvalues().cwiseMax(0.0);  // ascending
    const Matrix& Q = es.eigenvectors();
    double smax = s(k - 1);

    Matrix B = R * K.adjoint() * Q;  // column j pairs with eigenvalue s(j)
    RealVector b2(k);
    for (Eigen::Index j = 0; j < k; ++j) b2(j) = B.col(j).squaredNorm();
    double total_b2 = b2.sum();

    double cluster_tol = 1e-12 * std::max(smax, 1e-300);
    double top_mass = 0.0;
    for (Eigen::Index j = 0; j < k; ++j)
        if (smax - s(j) <= cluster_tol) top_mass += b2(j);

    auto psi = [&](double eta) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) {
            double d = eta - s(j);
            acc += b2(j) / (d * d);
        }
        return acc;
    };

    const double lam2 = lambda * lambda;
    // limit of psi as eta approaches smax from above along the non-top terms;
    // a root exists (regular case) iff mass sits on the top eigenspace or this
    // limit still exceeds lambda^2
    double psi_limit = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        if (smax - s(j) <= cluster_tol) continue;
        double d = smax - s(j);
        psi_limit += b2(j) / (d * d);
    }
    bool regular = top_mass > 1e-30 * std::max(total_b2, 1e-300) || psi_limit > lam2;

    Matrix dG;
    if (regular) {
        // regular case: bisect psi(eta) = lambda^2 on (smax, smax + |B|_F/lambda]
        double t_hi = std::sqrt(total_b2) / lambda;
        double t_lo = t_hi * 1e-18;
        while (psi(smax + t_lo) <= lam2 && t_lo > t_hi * 1e-300) t_lo *= 0.5;
        for (int it = 0; it < 200; ++it) {
            double t_mid = 0.5 * (t_lo + t_hi);
            if (psi(smax + t_mid) > lam2)
                t_lo = t_mid;
            else
                t_hi = t_mid;
        }
        double eta = smax + 0.5 * (t_lo + t_hi);
        Matrix scaled = B;
        for (Eigen::Index j = 0; j < k; ++j) scaled.col(j) /= (eta - s(j));
        dG = scaled * Q.adjoint();
    } else {
        // hard case: exhaust the non-top terms at eta = smax, then spend the
        // remaining budget on a rank-one term in the top eigenspace
        Matrix scaled = Matrix::Zero(k, k);
        for (Eigen::Index j = 0; j < k; ++j) {
            if (smax - s(j) <= cluster_tol) continue;
            scaled.col(j) = B.col(j) / (smax - s(j));
        }
        Matrix D0 = scaled * Q.adjoint();
        double tau2 = lam2 - D0.squaredNorm();  // >= 0 here: psi_limit <= lam2
        dG = D0;
        if (tau2 > 0) {
            double tau = std::sqrt(tau2);
            Vector a1 = Q.col(k - 1);
            Vector c = K.adjoint() * a1;  // |c|^2 = smax
            Matrix M0 = R + D0 * K;
            Vector z = M0 * c;
            if (z.norm() <= 1e-300) {
                z = Vector::Zero(k);
                z(0) = 1.0;
            } else {
                z /= z.norm();
            }
            dG += tau * (z * a1.adjoint());
        }
    }

    out.dG_star = dG;
    out.achieved = (R + dG * K).norm();
    return out;
}

// ---------------------------------------------------------------------------
// Ridge-path solver for |GK - A|_F + lambda |K|_F.

namespace {

struct RidgePath {
    RealVector d;  // eigenvalues of G^H G, ascending, clamped at 0
    Matrix Q;
    Matrix B;  // Q^H G^H A
};

RidgePath make_path(const GramPair& gp) {
    Matrix GhG = gp.G.adjoint() * gp.G;
    Eigen::SelfAdjointEigenSolver<Matrix> es(GhG);
    if (es.info() != Eigen::Success)
        throw NumericalError("robust_tikhonov: eigendecomposition of G^H G failed");
    RidgePath p;
    p.d = es.eigenvalues().cwiseMax(0.0);
    p.Q = es.eigenvectors();
    p.B = p.Q.adjoint() * (gp.G.adjoint() * gp.A);
    return p;
}

Matrix ridge_solution(const RidgePath& p, double alpha) {
    Matrix scaled = p.B;
    for (Eigen::Index i = 0; i < p.d.size(); ++i)
        scaled.row(i) /= (p.d(i) + alpha);
    return p.Q * scaled;
}

}  // namespace

OperatorEstimate robust_tikhonov(const GramPair& gp, double lambda,
                                 const RobustConfig& cfg) {
    check_pair(gp, "robust_tikhonov");
    if (lambda < 0) throw ConfigError("robust_tikhonov: lambda must be >= 0");

    OperatorEstimate est;
    est.method = Method::RobustTikhonov;
    est.reg_level = lambda;

    RidgePath path = make_path(gp);
    double dmax = path.d.size() ? path.d(path.d.size() - 1) : 0.0;

    auto objective = [&](const Matrix& K) {
        return (gp.G * K - gp.A).norm() + lambda * K.norm();
    };

    if (cfg.squared_objective) {
        // |GK - A|_F^2 + lambda |K|_F^2 has the closed-form minimizer at
        // alpha = lambda on the same path
        Matrix K = lambda > 0 ? ridge_solution(path, lambda)
                              : pinv(gp.G, 1e-12) * gp.A;
        est.K = std::move(K);
        est.path_alpha = lambda;
        est.residual = (gp.G * est.K - gp.A).squaredNorm() + lambda * est.K.squaredNorm();
        return est;
    }

    // endpoint candidates; the alpha -> 0 limit is the same minimum-norm
    // least-squares point the plain estimator computes
    Matrix K0 = pinv(gp.G, 1e-12) * gp.A;
    double best_f = objective(K0);
    Matrix best_K = K0;
    double best_alpha = 0.0;

    double f_zero = gp.A.norm();  // K = 0
    if (f_zero < best_f) {
        best_f = f_zero;
        best_K = Matrix::Zero(gp.G.rows(), gp.A.cols());
        best_alpha = -1.0;  // off-path sentinel
    }

    if (dmax > 0 && lambda > 0) {
        // golden-section search on [0, alpha_max]
        const double gr = 0.6180339887498949;  // 1/phi
        double a = 0.0, b = cfg.alpha_max_factor * dmax;
        double x1 = b - gr * (b - a);
        double x2 = a + gr * (b - a);
        double f1 = objective(ridge_solution(path, x1));
        double f2 = objective(ridge_solution(path, x2));
        double tol = cfg.solver_tol * b;
        while (b - a > tol) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = objective(ridge_solution(path, x1));
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = objective(ridge_solution(path, x2));
            }
        }
        double alpha_star = 0.5 * (a + b);
        Matrix Ks = ridge_solution(path, alpha_star);
        double fs = objective(Ks);
        if (fs < best_f) {
            best_f = fs;
            best_K = std::move(Ks);
            best_alpha = alpha_star;
        }
    }

    est.K = std::move(best_K);
    est.residual = best_f;
    est.path_alpha = best_alpha;
    return est;
}

// ---------------------------------------------------------------------------
// Proximal subgradient for |GK - A|_F + c * sum_ij |K_ij|.

OperatorEstimate robust_lasso(const GramPair& gp, double c,
                              const RobustConfig& cfg) {
    check_pair(gp, "robust_lasso");
    if (c < 0) throw ConfigError("robust_lasso: c must be >= 0");

    const Eigen::Index k = gp.G.rows();
    OperatorEstimate est;
    est.method = Method::RobustLasso;
    est.reg_level = c;

    double sigma1 = spectral_norm(gp.G);
    if (sigma1 == 0.0) {
        est.K = Matrix::Zero(k, k);
        est.residual = gp.A.norm();
        return est;
    }

    auto objective = [&](const Matrix& K) {
        return (gp.G * K - gp.A).norm() + c * K.cwiseAbs().sum();
    };

    Matrix K = Matrix::Zero(k, k);
    Matrix best_K = K;
    double best_g = objective(K);
    double g_prev = best_g;
    const double sig2 = sigma1 * sigma1;
    const double floor_step = 1e-12 * (1.0 + gp.A.norm());
    int flat_streak = 0;
    int it = 0;
    bool converged = false;

    for (it = 0; it < cfg.max_iter; ++it) {
        Matrix R = gp.G * K - gp.A;
        double rn = R.norm();
        // default step is Polyak-like: |R|/sigma1^2 contracts the residual in
        // range(G) and lands exactly on K = A when G = I, c = 0
        double t = cfg.prox_step > 0 ? cfg.prox_step
                                     : std::max(rn, floor_step) / sig2;
        if (rn > 0) K.noalias() -= (t / rn) * (gp.G.adjoint() * R);
        if (c > 0) {
            double thr = t * c;
            for (Eigen::Index j = 0; j < k; ++j) {
                for (Eigen::Index i = 0; i < k; ++i) {
                    double mag = std::abs(K(i, j));
                    K(i, j) = mag <= thr ? Complex(0, 0)
                                         : K(i, j) * (1.0 - thr / mag);
                }
            }
        }
        double g = objective(K);
        if (g < best_g) {
            best_g = g;
            best_K = K;
        }
        if (std::abs(g_prev - g) <= cfg.solver_tol * (1.0 + g))
            ++flat_streak;
        else
            flat_streak = 0;
        g_prev = g;
        if (flat_streak >= 3) {
            converged = true;
            break;
        }
    }

    est.K = std::move(best_K);
    est.residual = best_g;
    est.converged = converged;
    est.iterations = it;
    return est;
}

}  // namespace koop
