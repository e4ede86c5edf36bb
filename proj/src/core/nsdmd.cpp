#include "koopcore/nsdmd.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "koopcore/linalg.hpp"

namespace koop {

namespace {

// Euclidean projection of v onto the probability simplex {w >= 0, sum w = 1}.
RealVector project_simplex(const RealVector& v) {
    const Eigen::Index n = v.size();
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumsum = 0.0, tau = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        cumsum += u[j];
        double t = (cumsum - 1.0) / double(j + 1);
        if (u[j] - t > 0) tau = t;
    }
    return (v.array() - tau).cwiseMax(0.0);
}

struct Feasibility {
    RealMatrix Lambda, Linv;

    RealMatrix to_markov(const RealMatrix& K) const { return Lambda * K * Linv; }

    double violation(const RealMatrix& K) const {
        RealMatrix Y = to_markov(K);
        double v = std::max(0.0, -K.minCoeff());
        v = std::max(v, std::max(0.0, -Y.minCoeff()));
        v = std::max(v, (Y.rowwise().sum().array() - 1.0).abs().maxCoeff());
        return v;
    }

    // Dykstra alternation between the nonnegative orthant in K and the set of
    // K whose similarity transform Lambda K Lambda^{-1} has rows on the
    // simplex.  Each pass ends on the row-stochastic set, so only the orthant
    // part can lag; iterate until both are met.
    RealMatrix project(RealMatrix K) const {
        const Eigen::Index k = K.rows();
        RealMatrix P = RealMatrix::Zero(k, k);
        RealMatrix Qc = RealMatrix::Zero(k, k);
        for (int pass = 0; pass < 200; ++pass) {
            RealMatrix X1 = (K + P).cwiseMax(0.0);
            P = K + P - X1;
            RealMatrix Y = to_markov(X1 + Qc);
            for (Eigen::Index i = 0; i < k; ++i)
                Y.row(i) = project_simplex(Y.row(i).transpose()).transpose();
            RealMatrix X2 = Linv * Y * Lambda;
            Qc = X1 + Qc - X2;
            K = std::move(X2);
            if (violation(K) <= 1e-9) break;
        }
        return K;
    }
};

}  // namespace

NsdmdResult nsdmd_robust(const GramPair& gp, const RealMatrix& Lambda,
                         double lambda, const RobustConfig& cfg) {
    if (gp.G.rows() != gp.G.cols() || gp.A.rows() != gp.A.cols() ||
        gp.G.rows() != gp.A.rows())
        throw DimensionError("nsdmd_robust: G and A must be square with matching shape");
    if (!gp.G.allFinite() || !gp.A.allFinite())
        throw NumericalError("nsdmd_robust: non-finite entry in G or A");
    if (lambda < 0) throw ConfigError("nsdmd_robust: lambda must be >= 0");
    const Eigen::Index k = gp.G.rows();
    if (Lambda.rows() != k || Lambda.cols() != k)
        throw DimensionError("nsdmd_robust: Lambda shape mismatch");

    double scale = std::max({gp.G.cwiseAbs().maxCoeff(), gp.A.cwiseAbs().maxCoeff(), 1.0});
    double imag_mag = std::max(gp.G.imag().cwiseAbs().maxCoeff(),
                               gp.A.imag().cwiseAbs().maxCoeff());
    if (imag_mag > 1e-9 * scale)
        throw UnsupportedDictionaryError(
            "nsdmd_robust: requires a real-valued G/A pair; use a real dictionary");
    RealMatrix G = gp.G.real();
    RealMatrix A = gp.A.real();

    double lam_scale = std::max(Lambda.cwiseAbs().maxCoeff(), 1.0);
    if ((Lambda - Lambda.transpose()).cwiseAbs().maxCoeff() > 1e-9 * lam_scale)
        throw ConfigError("nsdmd_robust: Lambda must be symmetric");
    Eigen::SelfAdjointEigenSolver<RealMatrix> les(Lambda);
    if (les.info() != Eigen::Success)
        throw NumericalError("nsdmd_robust: eigendecomposition of Lambda failed");
    if (les.eigenvalues().minCoeff() <= 1e-10)
        throw NumericalError("nsdmd_robust: Lambda must be positive definite");

    Feasibility feas;
    feas.Lambda = Lambda;
    feas.Linv = les.eigenvectors() *
                les.eigenvalues().cwiseInverse().asDiagonal() *
                les.eigenvectors().transpose();

    auto objective = [&](const RealMatrix& K) {
        return (G * K - A).norm() + lambda * K.norm();
    };

    RealMatrix K = feas.project(pinv(G) * A);
    double fk = objective(K);

    RealMatrix GtG = G.transpose() * G;
    double L = spectral_norm(GtG) + lambda;
    double base_t = L > 0 ? 1.0 / L : 1.0;

    bool converged = false;
    int it = 0;
    for (it = 0; it < cfg.max_iter; ++it) {
        RealMatrix grad = G.transpose() * (G * K - A) + lambda * K;
        double t = base_t;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            RealMatrix Kn = feas.project(K - t * grad);
            double fn = objective(Kn);
            if (fn < fk) {
                double drop = fk - fn;
                K = std::move(Kn);
                fk = fn;
                accepted = true;
                if (drop <= cfg.solver_tol * (1.0 + fk)) converged = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            converged = true;  // no feasible descent within line-search range
            break;
        }
        if (converged) break;
    }

    for (int polish = 0; polish < 50 && feas.violation(K) > 1e-6; ++polish)
        K = feas.project(K);

    NsdmdResult res;
    res.estimate.K = K.cast<Complex>();
    res.estimate.method = Method::NSDMD;
    res.estimate.reg_level = lambda;
    res.estimate.residual = fk;
    res.estimate.converged = converged;
    res.estimate.iterations = it;
    res.markov = feas.to_markov(K);
    res.constraint_violation = feas.violation(K);
    return res;
}

RealMatrix pf_estimate(const NsdmdResult& res) {
    return res.estimate.K.real().transpose();
}

}  // namespace koop
