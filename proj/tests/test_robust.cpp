#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <vector>

#include "koopcore/edmd.hpp"
#include "koopcore/linalg.hpp"
#include "koopcore/rng.hpp"
#include "koopcore/robust.hpp"
#include "koopcore/snapshots.hpp"

using namespace koop;

namespace {

Matrix randc(Rng& rng, int r, int c, double scale = 1.0) {
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m(i, j) = Complex(rng.symmetric(scale), rng.symmetric(scale));
    return m;
}

// well-conditioned hermitian-PSD pair built like an assembled feature product
GramPair random_pair(Rng& rng, int k, int m = 40) {
    Matrix F0 = randc(rng, m, k);
    Matrix F1 = randc(rng, m, k);
    Matrix G = (F0.adjoint() * F0) / double(m) + 0.05 * Matrix::Identity(k, k);
    G = ((G + G.adjoint()) * 0.5).eval();
    Matrix A = (F0.adjoint() * F1) / double(m);
    return GramPair{std::move(G), std::move(A), m};
}

Matrix random_ball(Rng& rng, int k, double radius, bool boundary) {
    Matrix d = randc(rng, k, k);
    double r = boundary ? radius : radius * std::pow(rng.uniform01(), 1.0 / (2.0 * k * k));
    return d * (r / d.norm());
}

double lasso_objective(const GramPair& gp, const Matrix& K, double c) {
    return (gp.G * K - gp.A).norm() + c * K.cwiseAbs().sum();
}

double tik_objective(const GramPair& gp, const Matrix& K, double lam) {
    return (gp.G * K - gp.A).norm() + lam * K.norm();
}

}  // namespace

// ------------------------------------------------------------ uncertainty

TEST_CASE("uncertainty bound: zero radius, hand instance, validation") {
    SnapshotMatrix s;
    s.states.resize(2, 1);
    s.states << 1.0, 2.0;
    Dictionary d = Dictionary::linear(1);
    CHECK(uncertainty_bound(d, s, 0.0) == 0.0);
    // feature norms over the data are max(|1|, |2|) = 2; jacobian norm is 1
    CHECK(uncertainty_bound(d, s, 0.3) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK_THROWS_AS(uncertainty_bound(d, SnapshotMatrix{}, 0.1), EmptyDataError);
    CHECK_THROWS_AS(uncertainty_bound(d, s, -1.0), ConfigError);
    CHECK_THROWS_AS(uncertainty_bound(Dictionary::linear(2), s, 0.1), DimensionError);
}

TEST_CASE("first-order gram perturbation never exceeds the bound") {
    Rng data_rng(41, 0);
    Dictionary d = Dictionary::fourier_circle(-3, 3, 1.0);
    SnapshotMatrix s;
    s.states.resize(21, 1);
    for (int i = 0; i < 21; ++i) s.states(i, 0) = data_rng.uniform01();
    const double rho = 0.05;
    double bound = uncertainty_bound(d, s, rho);
    const int M = s.pair_count();

    Rng mc(42, 0);
    for (int trial = 0; trial < 200; ++trial) {
        Matrix dG = Matrix::Zero(7, 7);
        for (int m = 0; m < M; ++m) {
            RealVector x = s.states.row(m).transpose();
            RealVector dx(1);
            dx(0) = mc.symmetric(1.0);
            dx *= rho * mc.uniform01() / dx.norm();
            Vector psi = d.eval(x);
            Vector dpsi = d.jacobian(x) * dx;  // first-order feature change
            dG += psi.conjugate() * dpsi.transpose();
        }
        dG /= double(M);
        CHECK(dG.norm() <= bound + 1e-8);
    }
}

// -------------------------------------------------------------- worst case

TEST_CASE("worst case: zero-operator and zero-budget corners") {
    Rng rng(50, 0);
    GramPair gp = random_pair(rng, 4);
    Matrix K0 = Matrix::Zero(4, 4);
    WorstCase wc = worst_case(gp, K0, 0.7);
    CHECK(wc.value == doctest::Approx(gp.A.norm()).epsilon(1e-14));
    CHECK(wc.dG_star.norm() == 0);
    CHECK(wc.achieved == doctest::Approx(gp.A.norm()).epsilon(1e-14));

    Matrix K = randc(rng, 4, 4);
    WorstCase wc0 = worst_case(gp, K, 0.0);
    CHECK(wc0.dG_star.norm() == 0);
    CHECK(wc0.value == doctest::Approx((gp.G * K - gp.A).norm()).epsilon(1e-14));
}

TEST_CASE("worst case value is the additive identity, not an optimization") {
    Rng rng(51, 0);
    for (int trial = 0; trial < 20; ++trial) {
        GramPair gp = random_pair(rng, 4);
        Matrix K = randc(rng, 4, 4);
        double lambda = 0.05 + rng.uniform01();
        WorstCase wc = worst_case(gp, K, lambda);
        double direct = (gp.G * K - gp.A).norm() + lambda * K.norm();
        CHECK(std::abs(wc.value - direct) <= 1e-12 * std::max(1.0, direct));
    }
}

TEST_CASE("inner maximizer is feasible, dominates Monte-Carlo, below the bound") {
    Rng rng(52, 0);
    for (int trial = 0; trial < 5; ++trial) {
        GramPair gp = random_pair(rng, 4);
        Matrix K = randc(rng, 4, 4);
        const double lambda = 0.3;
        WorstCase wc = worst_case(gp, K, lambda);

        CHECK(wc.dG_star.norm() <= lambda * (1.0 + 1e-9));
        CHECK(wc.achieved <= wc.value + 1e-12);
        double mc_best = 0.0;
        for (int probe = 0; probe < 10000; ++probe) {
            Matrix dG = random_ball(rng, 4, lambda, probe % 2 == 0);
            double v = ((gp.G + dG) * K - gp.A).norm();
            CHECK(v <= wc.value + 1e-12);
            mc_best = std::max(mc_best, v);
        }
        // the constructed perturbation beats every sampled one
        CHECK(wc.achieved >= mc_best - 1e-9);
    }
}

TEST_CASE("bound is attained when residual and operator share row structure") {
    // K = w e1^H and GK - A = u e1^H: perturbations can align exactly, so the
    // supremum reaches |R|_F + lambda |K|_F
    Rng rng(53, 0);
    for (int trial = 0; trial < 10; ++trial) {
        int k = 3;
        Matrix G = Matrix::Identity(k, k);
        Vector w = randc(rng, k, 1);
        Vector u = randc(rng, k, 1);
        Matrix K = w * Matrix::Identity(k, k).col(0).adjoint();
        Matrix R = u * Matrix::Identity(k, k).col(0).adjoint();
        GramPair gp{G, G * K - R, 10};
        double lambda = 0.1 + rng.uniform01();
        WorstCase wc = worst_case(gp, K, lambda);
        CHECK(wc.achieved >= wc.value - 1e-9);
        CHECK(wc.dG_star.norm() <= lambda * (1.0 + 1e-9));
    }
}

TEST_CASE("zero residual: the maximizer hits the top singular direction") {
    Rng rng(54, 0);
    GramPair base = random_pair(rng, 4);
    Matrix K = randc(rng, 4, 4);
    GramPair gp{base.G, base.G * K, 10};  // A = GK, so the residual vanishes
    const double lambda = 0.5;
    WorstCase wc = worst_case(gp, K, lambda);
    double sigma1 = Eigen::JacobiSVD<Matrix>(K).singularValues()(0);
    CHECK(wc.achieved == doctest::Approx(lambda * sigma1).epsilon(1e-12));
    CHECK(wc.dG_star.norm() <= lambda * (1.0 + 1e-12));
    Rng mc(55, 0);
    for (int probe = 0; probe < 2000; ++probe) {
        Matrix dG = random_ball(mc, 4, lambda, true);
        CHECK((dG * K).norm() <= wc.achieved + 1e-9);
    }
}

TEST_CASE("budget beyond the non-top mass still yields a feasible maximizer") {
    // residual orthogonal to the leading eigenspace of K K^H forces the
    // rank-one completion branch
    int k = 3;
    Matrix K = Matrix::Zero(k, k);
    K(0, 0) = 2.0;
    K(1, 1) = 1.0;
    K(2, 2) = 1.0;
    Matrix R = Matrix::Zero(k, k);
    R(0, 1) = 1.0;
    R(1, 2) = 1.0;
    R(2, 1) = 0.5;
    R(2, 2) = 0.2;  // first column zero: no mass against e1
    GramPair gp{Matrix::Identity(k, k), K - R, 10};
    for (double lambda : {0.05, 0.5, 4.0, 20.0}) {
        WorstCase wc = worst_case(gp, K, lambda);
        CHECK(wc.dG_star.norm() <= lambda * (1.0 + 1e-9));
        CHECK(wc.achieved <= wc.value + 1e-12);
        Rng mc(56, 0);
        double mc_best = 0.0;
        for (int probe = 0; probe < 4000; ++probe) {
            Matrix dG = random_ball(mc, k, lambda, probe % 2 == 0);
            mc_best = std::max(mc_best, ((gp.G + dG) * K - gp.A).norm());
        }
        CHECK(wc.achieved >= mc_best - 1e-9);
    }
}

TEST_CASE("worst case input validation") {
    Rng rng(57, 0);
    GramPair gp = random_pair(rng, 3);
    CHECK_THROWS_AS(worst_case(gp, Matrix::Zero(2, 2), 0.1), DimensionError);
    CHECK_THROWS_AS(worst_case(gp, Matrix::Zero(3, 3), -0.1), ConfigError);
}

// ---------------------------------------------------------------- tikhonov

TEST_CASE("tikhonov at zero regularization reproduces the pseudo-inverse fit") {
    Rng rng(60, 0);
    GramPair gp = random_pair(rng, 5);
    OperatorEstimate a = edmd(gp);
    OperatorEstimate b = robust_tikhonov(gp, 0.0);
    CHECK((a.K - b.K).norm() < 1e-8);
    CHECK(b.method == Method::RobustTikhonov);
    CHECK(b.reg_level == 0.0);
}

TEST_CASE("huge regularization collapses to the zero operator") {
    Rng rng(61, 0);
    GramPair gp = random_pair(rng, 4);
    double lambda = 1e6 * (gp.G.norm() + gp.A.norm());
    OperatorEstimate est = robust_tikhonov(gp, lambda);
    CHECK(est.K.norm() == 0.0);
    CHECK(est.residual == doctest::Approx(gp.A.norm()).epsilon(1e-14));
    CHECK(est.path_alpha < 0);  // off the ridge path
}

TEST_CASE("solution survives local perturbation probing") {
    Rng rng(62, 0);
    GramPair gp = random_pair(rng, 5);
    const double lambda = 0.4;
    OperatorEstimate est = robust_tikhonov(gp, lambda);
    double f_star = tik_objective(gp, est.K, lambda);
    CHECK(est.residual == doctest::Approx(f_star).epsilon(1e-12));
    for (int probe = 0; probe < 1000; ++probe) {
        Matrix Kp = est.K + random_ball(rng, 5, 0.1, false);
        CHECK(f_star <= tik_objective(gp, Kp, lambda) + 1e-6);
    }
}

namespace {

void check_stationarity(const GramPair& gp, const OperatorEstimate& est) {
    REQUIRE(est.path_alpha >= 0.0);
    const Eigen::Index k = gp.G.rows();
    Matrix GhG = gp.G.adjoint() * gp.G;
    Matrix GhA = gp.G.adjoint() * gp.A;
    Matrix r = (GhG + est.path_alpha * Matrix::Identity(k, k)) * est.K - GhA;
    CHECK(r.norm() <= 1e-8 * GhA.norm());
}

}  // namespace

TEST_CASE("returned point satisfies ridge stationarity at its alpha") {
    Rng rng(63, 0);
    // well-conditioned instances: the alpha = 0 endpoint wins
    for (double lambda : {1e-3, 0.1}) {
        GramPair gp = random_pair(rng, 5);
        check_stationarity(gp, robust_tikhonov(gp, lambda));
    }

    // ill-conditioned gram with noisy consistent data: interior shrinkage pays
    const int k = 5;
    Matrix Q0 = randc(rng, k, k);
    Matrix U = Eigen::HouseholderQR<Matrix>(Q0).householderQ();
    RealVector d(k);
    d << 2.0, 1.0, 0.5, 1e-3, 1e-5;
    Matrix G = U * d.asDiagonal() * U.adjoint();
    G = ((G + G.adjoint()) * 0.5).eval();
    Matrix A = G * randc(rng, k, k) + 0.01 * randc(rng, k, k);
    GramPair gp{std::move(G), std::move(A), 30};
    bool saw_interior = false;
    for (double lambda : {1e-3, 0.01, 0.05, 0.2}) {
        OperatorEstimate est = robust_tikhonov(gp, lambda);
        check_stationarity(gp, est);
        saw_interior = saw_interior || est.path_alpha > 0.0;
    }
    CHECK(saw_interior);
}

TEST_CASE("robust objective value is nondecreasing in the budget") {
    Rng rng(64, 0);
    GramPair gp = random_pair(rng, 4);
    double prev = -1.0;
    for (double lambda : {0.0, 0.05, 0.2, 0.8, 2.0, 10.0}) {
        OperatorEstimate est = robust_tikhonov(gp, lambda);
        double f = tik_objective(gp, est.K, lambda);
        CHECK(f >= prev - 1e-9);
        prev = f;
    }
}

TEST_CASE("minimizer beats random alternatives in worst-case value") {
    Rng rng(65, 0);
    GramPair gp = random_pair(rng, 3);
    const double lambda = 0.35;
    OperatorEstimate est = robust_tikhonov(gp, lambda);
    double v_star = worst_case(gp, est.K, lambda).value;
    for (int probe = 0; probe < 200; ++probe) {
        Matrix Kp = est.K + random_ball(rng, 3, 0.5 * rng.uniform01() + 0.01, false);
        CHECK(v_star <= worst_case(gp, Kp, lambda).value + 1e-9);
    }
}

TEST_CASE("squared-objective toggle gives the closed-form ridge point") {
    Rng rng(66, 0);
    GramPair gp = random_pair(rng, 4);
    const double lambda = 0.3;
    RobustConfig cfg;
    cfg.squared_objective = true;
    OperatorEstimate est = robust_tikhonov(gp, lambda, cfg);
    CHECK(est.path_alpha == lambda);
    Matrix GhG = gp.G.adjoint() * gp.G;
    Matrix GhA = gp.G.adjoint() * gp.A;
    Matrix r = (GhG + lambda * Matrix::Identity(4, 4)) * est.K - GhA;
    CHECK(r.norm() <= 1e-10 * GhA.norm());
    double want = (gp.G * est.K - gp.A).squaredNorm() + lambda * est.K.squaredNorm();
    CHECK(est.residual == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("tikhonov validation") {
    Rng rng(67, 0);
    GramPair gp = random_pair(rng, 3);
    CHECK_THROWS_AS(robust_tikhonov(gp, -0.5), ConfigError);
    GramPair bad{Matrix::Identity(2, 2), Matrix::Identity(3, 3), 1};
    CHECK_THROWS_AS(robust_tikhonov(bad, 0.1), DimensionError);
}

// ------------------------------------------------------------------- lasso

TEST_CASE("lasso with identity gram and no penalty lands on A") {
    Rng rng(70, 0);
    GramPair gp{Matrix::Identity(4, 4), randc(rng, 4, 4), 10};
    OperatorEstimate est = robust_lasso(gp, 0.0);
    CHECK((est.K - gp.A).norm() < 1e-12);
    CHECK(est.converged);
    CHECK(est.method == Method::RobustLasso);
}

TEST_CASE("overwhelming penalty zeroes the operator") {
    Rng rng(71, 0);
    GramPair gp = random_pair(rng, 4);
    double c = 1e4 * (gp.G.norm() + gp.A.norm());
    OperatorEstimate est = robust_lasso(gp, c);
    CHECK(est.K.norm() == 0.0);
    CHECK(est.residual == doctest::Approx(gp.A.norm()).epsilon(1e-12));
}

TEST_CASE("sparsity is nondecreasing along the penalty grid") {
    Rng rng(72, 0);
    GramPair gp = random_pair(rng, 4);
    int prev = -1;
    for (double c : {0.01, 0.1, 1.0}) {
        OperatorEstimate est = robust_lasso(gp, c);
        int zeros = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (std::abs(est.K(i, j)) < 1e-8) ++zeros;
        CHECK(zeros >= prev);
        prev = zeros;
    }
    CHECK(prev >= 1);  // the strongest penalty actually bites
}

TEST_CASE("lasso solution is near-optimal under probing") {
    Rng rng(73, 0);
    GramPair gp = random_pair(rng, 3);
    const double c = 0.2;
    OperatorEstimate est = robust_lasso(gp, c);
    double g_star = lasso_objective(gp, est.K, c);
    CHECK(est.residual == doctest::Approx(g_star).epsilon(1e-12));
    for (int probe = 0; probe < 500; ++probe) {
        Matrix Kp = est.K + random_ball(rng, 3, 0.05, false);
        CHECK(g_star <= lasso_objective(gp, Kp, c) + 1e-4 * (1.0 + g_star));
    }
}

TEST_CASE("lasso respects a user-fixed step and reports iterations") {
    Rng rng(74, 0);
    GramPair gp = random_pair(rng, 3);
    RobustConfig cfg;
    cfg.prox_step = 1.0 / (2.0 * spectral_norm(gp.G) * spectral_norm(gp.G));
    cfg.max_iter = 200;
    OperatorEstimate est = robust_lasso(gp, 0.1, cfg);
    CHECK(est.iterations >= 1);
    CHECK(est.iterations <= 200);
    CHECK(est.K.allFinite());
}

TEST_CASE("lasso flags non-convergence instead of throwing") {
    Rng rng(75, 0);
    GramPair gp = random_pair(rng, 4);
    RobustConfig cfg;
    cfg.max_iter = 2;  // far too few to settle
    cfg.solver_tol = 1e-16;
    OperatorEstimate est = robust_lasso(gp, 0.1, cfg);
    CHECK(!est.converged);
    CHECK(est.K.allFinite());
}

TEST_CASE("lasso validation") {
    Rng rng(76, 0);
    GramPair gp = random_pair(rng, 3);
    CHECK_THROWS_AS(robust_lasso(gp, -1e-3), ConfigError);
}
