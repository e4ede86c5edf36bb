#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "koopcore/dictionary.hpp"
#include "koopcore/edmd.hpp"
#include "koopcore/predictor.hpp"
#include "koopcore/rng.hpp"
#include "koopcore/robust.hpp"
#include "koopcore/simulators.hpp"
#include "koopcore/snapshots.hpp"

using namespace koop;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SnapshotMatrix random_states(int m, int n, std::uint64_t seed) {
    SnapshotMatrix s;
    s.states.resize(m, n);
    Rng rng(seed, Rng::kStreamProcess);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) s.states(i, j) = rng.symmetric(1.0);
    return s;
}

// rotation trajectory embedded on the unit circle, one state per row
SnapshotMatrix embedded_rotation(double a0, double theta, int steps) {
    SnapshotMatrix s;
    s.states.resize(steps + 1, 2);
    for (int t = 0; t <= steps; ++t) {
        s.states(t, 0) = std::cos(a0 + t * theta);
        s.states(t, 1) = std::sin(a0 + t * theta);
    }
    return s;
}

}  // namespace

TEST_CASE("identity dictionary has the identity output map") {
    Dictionary d = Dictionary::linear(3);
    SnapshotMatrix s = random_states(20, 3, 5);
    Matrix C = fit_output_map(d, s);
    CHECK((C - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("states reconstruct exactly when the coordinates are in the span") {
    Dictionary d = Dictionary::monomial(2, 2);
    SnapshotMatrix s = random_states(30, 2, 9);
    Matrix C = fit_output_map(d, s);
    Matrix F = feature_matrix(d, s);
    RealMatrix recon = (F * C.transpose()).real();
    CHECK((recon - s.states).norm() / std::sqrt(double(s.count())) <= 1e-8);
}

TEST_CASE("identity operator with identity map predicts a constant") {
    Dictionary d = Dictionary::linear(3);
    OperatorEstimate op;
    op.K = Matrix::Identity(3, 3);
    Predictor p = make_predictor(op, Matrix::Identity(3, 3), d);
    RealVector x0(3);
    x0 << 0.3, -1.2, 2.0;
    RealMatrix out = predict(p, x0, 5);
    for (int s = 0; s < 5; ++s)
        CHECK((out.row(s).transpose() - x0).norm() < 1e-14);
}

TEST_CASE("scalar decay follows the closed form") {
    SnapshotMatrix s;
    s.states.resize(11, 1);
    double x = 1.0;
    for (int t = 0; t <= 10; ++t) {
        s.states(t, 0) = x;
        x *= 0.5;
    }
    Dictionary d = Dictionary::linear(1);
    Predictor p = make_predictor(edmd(assemble(d, s)), d, s);
    RealVector x0(1);
    x0 << 2.0;
    RealMatrix out = predict(p, x0, 8);
    for (int n = 1; n <= 8; ++n)
        CHECK(std::abs(out(n - 1, 0) - 2.0 * std::pow(0.5, n)) < 1e-8);
}

TEST_CASE("rotation diagonalizes the harmonics and advances them exactly") {
    RotationParams rp;
    rp.theta = std::numbers::pi / 320.0;
    rp.noise_halfwidth = 0.0;
    rp.x0 = 1.0;
    SnapshotMatrix snap = simulate_rotation(rp, 500, 1);
    Dictionary d = Dictionary::fourier_circle(-10, 10, kTwoPi);
    OperatorEstimate op = edmd(assemble(d, snap));

    // each harmonic e^{inx} is an eigenfunction with eigenvalue e^{in theta}
    double worst = 0.0;
    for (int a = 0; a < 21; ++a)
        for (int b = 0; b < 21; ++b) {
            Complex want =
                a == b ? std::exp(Complex(0, (a - 10) * rp.theta)) : Complex(0, 0);
            worst = std::max(worst, std::abs(op.K(a, b) - want));
        }
    CHECK(worst < 1e-8);

    // 100 propagation steps land each harmonic on its advanced angle; the
    // n = 1 component is the wrap-around-safe embedding of the angle itself
    RealVector x0(1);
    x0 << rp.x0;
    Vector z = d.eval(x0);
    Matrix Kt = op.K.transpose();
    for (int s = 0; s < 100; ++s) z = Kt * z;
    RealVector xf(1);
    xf << rp.x0 + 100 * rp.theta;
    CHECK((z - d.eval(xf)).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("embedded rotation wraps cleanly over 100 steps") {
    const double a0 = 3.0, theta = 0.5;
    SnapshotMatrix emb = embedded_rotation(a0, theta, 60);
    Dictionary d = Dictionary::monomial(2, 2);
    Predictor p = make_predictor(edmd(assemble(d, emb)), d, emb);
    RealVector x0(2);
    x0 << std::cos(a0), std::sin(a0);
    double max_imag = 1.0;
    RealMatrix pred = predict(p, x0, 100, &max_imag);
    CHECK(max_imag < 1e-8);

    RealMatrix pred_ang(100, 1), truth_ang(100, 1);
    for (int s = 0; s < 100; ++s) {
        double at = a0 + (s + 1) * theta;
        CHECK(std::abs(pred(s, 0) - std::cos(at)) <= 1e-8);
        CHECK(std::abs(pred(s, 1) - std::sin(at)) <= 1e-8);
        pred_ang(s, 0) = std::atan2(pred(s, 1), pred(s, 0));
        truth_ang(s, 0) = at;  // unwrapped: 8 revolutions ahead of atan2 range
    }
    PredictionError e = prediction_error(pred_ang, truth_ang, {kTwoPi});
    CHECK(e.per_step.maxCoeff() <= 1e-6);
    CHECK(e.average <= 1e-6);
}

TEST_CASE("one step equals one operator application") {
    SnapshotMatrix emb = embedded_rotation(1.0, 0.3, 40);
    Dictionary d = Dictionary::monomial(2, 2);
    Predictor p = make_predictor(edmd(assemble(d, emb)), d, emb);
    RealVector x(2);
    x << 0.2, 0.9;
    RealMatrix one = predict(p, x, 1);
    Matrix Kt = p.op.K.transpose();
    Vector z = Kt * p.dict.eval(x);
    RealVector want = (p.C * z).real();
    CHECK((one.row(0).transpose() - want).norm() == 0.0);
}

TEST_CASE("noise-free linear systems are predicted exactly over 50 steps") {
    LinearSyntheticParams lp;
    lp.dim = 4;
    lp.noise_halfwidth = 0.0;
    SnapshotMatrix snap = simulate_linear_synthetic(lp, 60, 3);
    Dictionary d = Dictionary::linear(4);
    Predictor p = make_predictor(edmd(assemble(d, snap)), d, snap);
    RealVector x0 = snap.states.row(0).transpose();
    RealMatrix pred = predict(p, x0, 50);
    for (int s = 0; s < 50; ++s)
        CHECK((pred.row(s) - snap.states.row(s + 1)).norm() < 1e-6);
}

TEST_CASE("error metric: zeros, offsets, and wrap-around identification") {
    RealMatrix a = RealMatrix::Random(7, 3);
    PredictionError zero = prediction_error(a, a);
    CHECK(zero.per_step.cwiseAbs().maxCoeff() == 0.0);
    CHECK(zero.average == 0.0);

    RealMatrix b = a;
    b.col(0).array() += 3.0;
    b.col(2).array() -= 4.0;
    PredictionError off = prediction_error(b, a);
    for (int s = 0; s < 7; ++s) CHECK(off.per_step(s) == doctest::Approx(5.0));
    CHECK(off.average == doctest::Approx(5.0));

    // full-period offsets vanish under the chordal metric; half periods max out
    RealMatrix c = a;
    c.col(1).array() += kTwoPi;
    PredictionError wrap = prediction_error(c, a, {0.0, kTwoPi, 0.0});
    CHECK(wrap.per_step.cwiseAbs().maxCoeff() < 1e-12);
    RealMatrix h = a;
    h.col(1).array() += std::numbers::pi;
    PredictionError half = prediction_error(h, a, {0.0, kTwoPi, 0.0});
    for (int s = 0; s < 7; ++s) CHECK(half.per_step(s) == doctest::Approx(2.0));
}

TEST_CASE("shrinkage beats the overfit plain estimate on most noisy runs") {
    // more harmonics than snapshot pairs: the unregularized fit memorizes
    // noise while heavy shrinkage keeps the rollout near the clean cycle
    Dictionary d = Dictionary::fourier_circle(-50, 50, kTwoPi);
    int wins = 0;
    for (int seed = 0; seed < 20; ++seed) {
        RotationParams rp;
        rp.theta = std::numbers::pi / 320.0;
        rp.noise_halfwidth = 0.7;
        rp.x0 = 1.0;
        SnapshotMatrix noisy = simulate_rotation(rp, 60, 100 + seed);
        GramPair gp = assemble(d, noisy);
        OperatorEstimate plain = edmd(gp);
        OperatorEstimate rob = robust_tikhonov(gp, 1.0, RobustConfig{});

        RotationParams cln = rp;
        cln.noise_halfwidth = 0.0;
        SnapshotMatrix clean = simulate_rotation(cln, 60, 100 + seed);
        Matrix C = fit_output_map(d, clean, 1e-2);
        const int steps = 40;
        RealVector x0(1);
        x0 << rp.x0;
        RealMatrix truth(steps, 1);
        for (int s = 0; s < steps; ++s) truth(s, 0) = rp.x0 + (s + 1) * rp.theta;
        PredictionError ep = prediction_error(
            predict(make_predictor(plain, C, d), x0, steps), truth, {kTwoPi});
        PredictionError er = prediction_error(
            predict(make_predictor(rob, C, d), x0, steps), truth, {kTwoPi});
        if (er.average <= ep.average) ++wins;
    }
    CHECK(wins >= 11);
}

TEST_CASE("validation") {
    Dictionary d = Dictionary::linear(2);
    SnapshotMatrix s = random_states(10, 2, 1);

    CHECK_THROWS_AS(fit_output_map(d, SnapshotMatrix{}), EmptyDataError);
    CHECK_THROWS_AS(fit_output_map(Dictionary::linear(3), s), DimensionError);

    OperatorEstimate op;
    op.K = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(make_predictor(op, Matrix::Identity(3, 2), d), DimensionError);
    OperatorEstimate bad;
    bad.K = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(make_predictor(bad, Matrix::Identity(2, 2), d), DimensionError);

    Predictor p = make_predictor(op, Matrix::Identity(2, 2), d);
    RealVector wrong(3);
    wrong.setZero();
    CHECK_THROWS_AS(predict(p, wrong, 3), DimensionError);

    // overflowing rollout must surface as a numerical error, not as inf rows
    OperatorEstimate huge;
    huge.K = Matrix::Identity(1, 1) * 1e200;
    Predictor ph = make_predictor(huge, Matrix::Identity(1, 1), Dictionary::linear(1));
    RealVector one(1);
    one << 1.0;
    CHECK_THROWS_AS(predict(ph, one, 4), NumericalError);

    RealMatrix a = RealMatrix::Zero(4, 2), b = RealMatrix::Zero(5, 2);
    CHECK_THROWS_AS(prediction_error(a, b), DimensionError);
    CHECK_THROWS_AS(prediction_error(a, a, {1.0}), DimensionError);
    CHECK_THROWS_AS(prediction_error(RealMatrix(0, 2), RealMatrix(0, 2)),
                    EmptyDataError);
}
