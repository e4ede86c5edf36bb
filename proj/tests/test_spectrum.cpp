#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "koopcore/dictionary.hpp"
#include "koopcore/edmd.hpp"
#include "koopcore/rng.hpp"
#include "koopcore/simulators.hpp"
#include "koopcore/snapshots.hpp"
#include "koopcore/spectrum.hpp"

using namespace koop;

namespace {

// exhaustive assignment reference, viable up to k = 6
double brute_distance(const Vector& a, const Vector& b, int k) {
    Vector sa = sort_dominant(a), sb = sort_dominant(b);
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double c = 0.0;
        for (int i = 0; i < k; ++i) c += std::abs(sa(i) - sb(idx[i]));
        best = std::min(best, c);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

Vector random_spectrum(Rng& rng, int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i)
        v(i) = Complex(rng.symmetric(1.5), rng.symmetric(1.5));
    return v;
}

}  // namespace

TEST_CASE("assignment cost matches the exhaustive reference") {
    Rng rng(11, Rng::kStreamProcess);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 1 + trial % 6;
        Vector a = random_spectrum(rng, k + trial % 3);
        Vector b = random_spectrum(rng, k + (trial + 1) % 3);
        double got = spectral_distance(a, b, k);
        double want = brute_distance(a, b, k);
        CHECK(std::abs(got - want) < 1e-12);
    }
}

TEST_CASE("distance basics: identity, perturbation, permutation invariance") {
    Vector a(3);
    a << Complex(1, 0), Complex(0.5, 0.5), Complex(-0.2, 0);
    CHECK(spectral_distance(a, a, 3) == 0.0);

    Vector one(1), one_eps(1);
    one << Complex(1, 0);
    one_eps << Complex(1 + 1e-3, 0);
    CHECK(spectral_distance(one, one_eps, 1) == doctest::Approx(1e-3));

    Vector p(3);
    p << a(2), a(0), a(1);
    CHECK(spectral_distance(a, p, 3) < 1e-15);
}

TEST_CASE("distance is a symmetric pseudo-metric on random triples") {
    Rng rng(29, Rng::kStreamProcess);
    for (int trial = 0; trial < 40; ++trial) {
        int k = 1 + trial % 5;
        Vector a = random_spectrum(rng, k);
        Vector b = random_spectrum(rng, k);
        Vector c = random_spectrum(rng, k);
        double ab = spectral_distance(a, b, k);
        double ba = spectral_distance(b, a, k);
        double bc = spectral_distance(b, c, k);
        double ac = spectral_distance(a, c, k);
        CHECK(std::abs(ab - ba) < 1e-12);
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(spectral_distance(a, a, k) < 1e-15);
    }
}

TEST_CASE("dominance order: magnitude first, then real, then imaginary") {
    Vector v(5);
    v << Complex(0, -0.9), Complex(-0.9, 0), Complex(1, 0), Complex(0.9, 0),
        Complex(0, 0.9);
    Vector s = sort_dominant(v);
    CHECK(s(0) == Complex(1, 0));
    CHECK(s(1) == Complex(0.9, 0));
    CHECK(s(2) == Complex(0, 0.9));
    CHECK(s(3) == Complex(0, -0.9));
    CHECK(s(4) == Complex(-0.9, 0));

    // magnitudes within 1e-9 are one tie group ordered by real part, so a
    // last-ulp magnitude edge cannot promote the negative eigenvalue
    Vector t(2);
    t << Complex(1, 0), Complex(-(1 + 1e-12), 0);
    Vector st = sort_dominant(t);
    CHECK(st(0) == Complex(1, 0));
}

TEST_CASE("uniform contraction report") {
    OperatorEstimate est;
    est.K = Matrix::Identity(3, 3) * 0.5;
    SpectrumReport r = analyze(est, 1.0, 1e-3, 2);
    REQUIRE(r.discrete_eigs.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(r.discrete_eigs(i) - Complex(0.5, 0)) < 1e-12);
        CHECK(std::abs(r.continuous_eigs(i) - Complex(std::log(0.5), 0)) < 1e-12);
    }
    CHECK(r.spectral_radius == doctest::Approx(0.5));
    CHECK(r.unstable_discrete == 0);
    CHECK(r.unstable_continuous == 0);
    REQUIRE(r.dominant.size() == 2);
    CHECK(std::abs(r.dominant(0) - Complex(0.5, 0)) < 1e-12);
}

TEST_CASE("radius equals the dominant magnitude and counts follow tol") {
    OperatorEstimate est;
    est.K = Matrix::Zero(2, 2);
    est.K(0, 0) = Complex(1.1, 0);
    est.K(1, 1) = Complex(0.9, 0);
    SpectrumReport r = analyze(est, 0.5, 1e-3);
    CHECK(r.spectral_radius == doctest::Approx(1.1));
    CHECK(r.spectral_radius ==
          doctest::Approx(r.discrete_eigs.cwiseAbs().maxCoeff()));
    CHECK(r.unstable_discrete == 1);
    CHECK(r.unstable_continuous == 1);
    CHECK(std::abs(r.continuous_eigs(0) - Complex(std::log(1.1) / 0.5, 0)) < 1e-12);

    // widen the tolerance past |1.1| - 1 and the counts drop to zero
    SpectrumReport loose = analyze(est, 0.5, 0.2);
    CHECK(loose.unstable_discrete == 0);
    CHECK(loose.unstable_continuous == 0);
}

TEST_CASE("zero eigenvalues map to the -inf sentinel and are not counted") {
    OperatorEstimate est;
    est.K = Matrix::Zero(2, 2);
    est.K(0, 0) = Complex(0.5, 0);
    SpectrumReport r = analyze(est, 1.0);
    CHECK(r.spectral_radius == doctest::Approx(0.5));
    bool saw_sentinel = false;
    for (int i = 0; i < 2; ++i)
        if (std::isinf(r.continuous_eigs(i).real()) &&
            r.continuous_eigs(i).real() < 0)
            saw_sentinel = true;
    CHECK(saw_sentinel);
    CHECK(r.unstable_continuous == 0);
}

TEST_CASE("clean rotation spectrum sits on the unit circle") {
    RotationParams rp;
    rp.theta = std::numbers::pi / 320.0;
    rp.noise_halfwidth = 0.0;
    rp.x0 = 1.0;
    SnapshotMatrix snap = simulate_rotation(rp, 700, 1);
    Dictionary d = Dictionary::fourier_circle(-50, 50, 2 * std::numbers::pi);
    OperatorEstimate op = edmd(assemble(d, snap));
    SpectrumReport r = analyze(op, 1.0, 1e-3, 5);
    CHECK(std::abs(r.spectral_radius - 1.0) <= 1e-6);
    for (Eigen::Index i = 0; i < r.discrete_eigs.size(); ++i)
        CHECK(std::abs(std::abs(r.discrete_eigs(i)) - 1.0) <= 1e-6);
    // dominance resolves the common circle by real part: constant mode first,
    // then the +/- first and second harmonics
    Vector want(5);
    want << Complex(1, 0), std::exp(Complex(0, rp.theta)),
        std::exp(Complex(0, -rp.theta)), std::exp(Complex(0, 2 * rp.theta)),
        std::exp(Complex(0, -2 * rp.theta));
    CHECK(spectral_distance(r.dominant, want, 5) <= 1e-6);
}

TEST_CASE("real operators have conjugate-closed spectra") {
    Rng rng(5, Rng::kStreamProcess);
    OperatorEstimate est;
    est.K = Matrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) est.K(i, j) = Complex(rng.symmetric(1.0), 0);
    SpectrumReport r = analyze(est, 1.0);
    for (int i = 0; i < 8; ++i) {
        double best = 1e300;
        for (int j = 0; j < 8; ++j)
            best = std::min(best,
                            std::abs(std::conj(r.discrete_eigs(i)) - r.discrete_eigs(j)));
        CHECK(best <= 1e-10);
    }
}

TEST_CASE("validation") {
    OperatorEstimate est;
    est.K = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(analyze(est, 0.0), ConfigError);
    CHECK_THROWS_AS(analyze(est, 1.0, -1e-3), ConfigError);
    CHECK_THROWS_AS(analyze(est, 1.0, 1e-3, -1), ConfigError);
    OperatorEstimate rect;
    rect.K = Matrix::Zero(2, 3);
    CHECK_THROWS_AS(analyze(rect, 1.0), DimensionError);
    OperatorEstimate empty;
    empty.K = Matrix(0, 0);
    CHECK_THROWS_AS(analyze(empty, 1.0), EmptyDataError);
    OperatorEstimate nf;
    nf.K = Matrix::Identity(2, 2);
    nf.K(0, 1) = Complex(std::numeric_limits<double>::quiet_NaN(), 0);
    CHECK_THROWS_AS(analyze(nf, 1.0), NumericalError);

    Vector a = Vector::Ones(3), b = Vector::Ones(2);
    CHECK_THROWS_AS(spectral_distance(a, b, 3), DimensionError);
    CHECK_THROWS_AS(spectral_distance(a, a, 0), ConfigError);
    CHECK_THROWS_AS(spectral_distance(Vector(0), a, 1), EmptyDataError);
}
