#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "koopcore/nsdmd.hpp"
#include "koopcore/rng.hpp"
#include "koopcore/snapshots.hpp"

using namespace koop;

namespace {

GramPair real_pair(Rng& rng, int k, double scale = 1.0) {
    RealMatrix F0(30, k), F1(30, k);
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < k; ++j) {
            F0(i, j) = rng.symmetric(scale);
            F1(i, j) = rng.symmetric(scale);
        }
    RealMatrix G = F0.transpose() * F0 / 30.0 + 0.05 * RealMatrix::Identity(k, k);
    RealMatrix A = F0.transpose() * F1 / 30.0;
    return GramPair{G.cast<Complex>(), A.cast<Complex>(), 30};
}

// two-state chain encoded as one-hot snapshots; the linear dictionary then
// acts as the indicator basis
SnapshotMatrix simulate_chain(const RealMatrix& T, int samples, std::uint64_t seed) {
    Rng rng(seed, Rng::kStreamProcess);
    SnapshotMatrix s;
    s.states = RealMatrix::Zero(samples + 1, 2);
    int state = 0;
    s.states(0, 0) = 1.0;
    for (int t = 1; t <= samples; ++t) {
        state = rng.uniform01() < T(state, 0) ? 0 : 1;
        s.states(t, state) = 1.0;
    }
    return s;
}

}  // namespace

TEST_CASE("row-stochastic nonnegative target is a feasible fixed point") {
    Matrix A(2, 2);
    A << Complex(0.9, 0), Complex(0.1, 0), Complex(0.2, 0), Complex(0.8, 0);
    GramPair gp{Matrix::Identity(2, 2), A, 10};
    NsdmdResult res = nsdmd_robust(gp, RealMatrix::Identity(2, 2), 1e-9);
    CHECK(res.constraint_violation <= 1e-6);
    CHECK((res.estimate.K - A).norm() < 1e-5);
    CHECK((res.markov - A.real()).cwiseAbs().maxCoeff() < 1e-5);
    CHECK(res.estimate.method == Method::NSDMD);
}

TEST_CASE("every run is feasible within the declared tolerance") {
    Rng rng(80, 0);
    for (int trial = 0; trial < 8; ++trial) {
        int k = 2 + trial % 3;
        GramPair gp = real_pair(rng, k);
        RealMatrix Lambda = RealMatrix::Identity(k, k);
        if (trial % 2 == 1)
            for (int i = 0; i < k; ++i) Lambda(i, i) = 1.0 + 0.5 * i;
        NsdmdResult res = nsdmd_robust(gp, Lambda, 0.05);
        CHECK(res.constraint_violation <= 1e-6);
        CHECK(res.estimate.K.real().minCoeff() >= -1e-6);
        CHECK(res.markov.minCoeff() >= -1e-6);
        CHECK((res.markov.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-6);
        CHECK(res.estimate.K.imag().norm() == 0.0);
    }
}

TEST_CASE("objective is monotone in the iteration budget") {
    Rng rng(81, 0);
    GramPair gp = real_pair(rng, 3);
    RealMatrix Lambda = RealMatrix::Identity(3, 3);
    double prev = std::numeric_limits<double>::infinity();
    for (int budget : {1, 2, 5, 10, 30, 100, 400}) {
        RobustConfig cfg;
        cfg.max_iter = budget;
        NsdmdResult res = nsdmd_robust(gp, Lambda, 0.05, cfg);
        CHECK(res.estimate.residual <= prev + 1e-9);
        prev = res.estimate.residual;
    }
}

TEST_CASE("nonnegative operator maps nonnegative coefficients forward") {
    Rng rng(82, 0);
    GramPair gp = real_pair(rng, 4);
    NsdmdResult res = nsdmd_robust(gp, RealMatrix::Identity(4, 4), 0.02);
    RealMatrix K = res.estimate.K.real();
    double slack = res.constraint_violation + 1e-12;
    for (int trial = 0; trial < 50; ++trial) {
        RealVector a(4);
        for (int i = 0; i < 4; ++i) a(i) = rng.uniform01();
        RealVector out = K.transpose() * a;  // coefficient propagation
        CHECK(out.minCoeff() >= -slack * a.sum());
    }
}

TEST_CASE("two-state chain: markov factor matches the transition matrix") {
    RealMatrix T(2, 2);
    T << 0.9, 0.1, 0.2, 0.8;
    SnapshotMatrix s = simulate_chain(T, 5000, 1234);
    GramPair gp = assemble(Dictionary::linear(2), s);
    NsdmdResult res = nsdmd_robust(gp, RealMatrix::Identity(2, 2), 1e-3);
    CHECK(res.constraint_violation <= 1e-6);
    CHECK((res.markov - T).cwiseAbs().maxCoeff() < 0.05);

    // stored matrices stay algebraically consistent
    CHECK((res.markov - res.estimate.K.real()).cwiseAbs().maxCoeff() < 1e-12);
    RealMatrix P = pf_estimate(res);
    CHECK((P - res.estimate.K.real().transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(P.minCoeff() >= -1e-6);
}

TEST_CASE("similarity transform is honored for non-identity weights") {
    Rng rng(83, 0);
    GramPair gp = real_pair(rng, 3);
    RealMatrix Lambda(3, 3);
    Lambda << 2.0, 0.2, 0.0, 0.2, 1.0, 0.1, 0.0, 0.1, 0.5;
    NsdmdResult res = nsdmd_robust(gp, Lambda, 0.05);
    CHECK(res.constraint_violation <= 1e-6);
    RealMatrix Linv = Lambda.inverse();
    RealMatrix Y = Lambda * res.estimate.K.real() * Linv;
    CHECK((Y - res.markov).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pf duality corners") {
    Matrix I2 = Matrix::Identity(2, 2);
    GramPair gp{I2, I2, 4};
    NsdmdResult res = nsdmd_robust(gp, RealMatrix::Identity(2, 2), 1e-9);
    RealMatrix P = pf_estimate(res);
    CHECK((P - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("validation and error taxonomy") {
    Rng rng(84, 0);
    GramPair gp = real_pair(rng, 2);
    RealMatrix I2 = RealMatrix::Identity(2, 2);

    CHECK_THROWS_AS(nsdmd_robust(gp, I2, -0.1), ConfigError);
    CHECK_THROWS_AS(nsdmd_robust(gp, RealMatrix::Identity(3, 3), 0.1), DimensionError);

    RealMatrix singular = RealMatrix::Zero(2, 2);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(nsdmd_robust(gp, singular, 0.1), NumericalError);

    RealMatrix asym(2, 2);
    asym << 1.0, 0.5, 0.0, 1.0;
    CHECK_THROWS_AS(nsdmd_robust(gp, asym, 0.1), ConfigError);

    GramPair cplx = gp;
    cplx.G(0, 1) += Complex(0, 0.3);
    cplx.G(1, 0) -= Complex(0, 0.3);
    CHECK_THROWS_AS(nsdmd_robust(cplx, I2, 0.1), UnsupportedDictionaryError);
}
