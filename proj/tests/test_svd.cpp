#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "ldh/svd.hpp"

#include "oracles.hpp"

using namespace ldh;
using Complexd = std::complex<double>;

namespace {

template <class T>
double max_abs(const CMat<T>& m) {
    return m.cwiseAbs().maxCoeff();
}

/// Largest deviation of B^H B from the identity over the first k columns.
template <class T>
double orthonormality_error(const CMat<T>& vectors, Index k) {
    const Eigen::MatrixXcd block =
        vectors.leftCols(k).template cast<Complexd>();
    return (block.adjoint() * block - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("rank-1 outer product recovers its factors") {
    CVec<float> a(6), b(3);
    a << std::complex<float>(0.5f, 0.1f), {0.2f, -0.3f}, {0.1f, 0.4f}, {-0.2f, 0.2f},
        {0.3f, 0.0f}, {0.0f, -0.1f};
    b << std::complex<float>(0.6f, 0.0f), {0.0f, 0.5f}, {-0.3f, 0.2f};
    a.normalize();
    b.normalize();
    const CMat<float> m = a * b.adjoint();

    const auto basis = compute_svd_basis(m, 6, 1);
    CHECK(basis.lambdas[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(basis.lambdas[1] == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(basis.lambdas[2] == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(basis.rank_eff == 1);

    // U_1 and V_1 match a and b up to one unit phase.
    const Complexd phase_u =
        basis.spatial.col(0).template cast<Complexd>().dot(a.cast<Complexd>());
    CHECK(std::abs(phase_u) == doctest::Approx(1.0).epsilon(1e-5));
    const Complexd phase_v =
        basis.temporal.col(0).template cast<Complexd>().dot(b.cast<Complexd>());
    CHECK(std::abs(phase_v) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("orthogonal columns give their norms as singular values") {
    CMat<float> m = CMat<float>::Zero(4, 2);
    m(0, 0) = {3.0f, 0.0f};
    m(2, 1) = {0.0f, 2.0f};
    const auto basis = compute_svd_basis(m, 4, 1);
    CHECK(basis.lambdas[0] == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(basis.lambdas[1] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("gram-trick singular values match the direct oracle") {
    const CMat<float> m = oracle::random_complex<float>(16, 8, 123);
    const auto basis = compute_svd_basis(m, 16, 1);
    const auto direct = oracle::direct_svd(m);
    for (Index i = 0; i < 8; ++i)
        CHECK(basis.lambdas[i] ==
              doctest::Approx(direct.singular_values[i]).epsilon(1e-5));
}

TEST_CASE("basis invariants hold on random matrices") {
    for (unsigned seed : {7u, 8u, 9u, 10u}) {
        const CMat<float> m = oracle::random_complex<float>(48, 12, seed);
        const auto basis = compute_svd_basis(m, 48, 1);

        for (Index i = 1; i < basis.order(); ++i)
            CHECK(basis.lambdas[i] <= basis.lambdas[i - 1]);

        CHECK(orthonormality_error(basis.temporal, basis.order()) < 1e-5);
        CHECK(orthonormality_error(basis.spatial, basis.rank_eff) < 1e-5);

        const double energy = m.cast<Complexd>().squaredNorm();
        CHECK(basis.lambdas.cast<double>().squaredNorm() ==
              doctest::Approx(energy).epsilon(1e-5));

        const CMat<float> rebuilt = reconstruct(basis);
        CHECK((rebuilt - m).norm() / m.norm() < 1e-4);
    }
}

TEST_CASE("subspaces match the oracle when singular values are separated") {
    // Construct a matrix with well-separated spectrum from random unitaries.
    const Index rows = 32, cols = 6;
    Eigen::MatrixXcd q_left =
        oracle::random_complex<double>(rows, cols, 31).cast<Complexd>();
    Eigen::MatrixXcd q_right = oracle::random_complex<double>(cols, cols, 32).cast<Complexd>();
    q_left = Eigen::HouseholderQR<Eigen::MatrixXcd>(q_left).householderQ() *
             Eigen::MatrixXcd::Identity(rows, cols);
    q_right = Eigen::HouseholderQR<Eigen::MatrixXcd>(q_right).householderQ();
    Eigen::VectorXd spectrum(cols);
    spectrum << 10.0, 6.0, 3.5, 2.0, 1.0, 0.4;
    const CMat<float> m =
        (q_left * spectrum.cast<Complexd>().asDiagonal() * q_right.adjoint()).cast<std::complex<float>>();

    const auto basis = compute_svd_basis(m, rows, 1);
    const auto direct = oracle::direct_svd(m);
    for (Index i = 0; i < cols; ++i) {
        const double cos_u = std::abs(
            basis.spatial.col(i).template cast<Complexd>().dot(direct.u.col(i)));
        const double cos_v = std::abs(
            basis.temporal.col(i).template cast<Complexd>().dot(direct.v.col(i)));
        CHECK(std::acos(std::min(cos_u, 1.0)) < 1e-3);
        CHECK(std::acos(std::min(cos_v, 1.0)) < 1e-3);
    }
}

TEST_CASE("global phase leaves the decomposition magnitudes unchanged") {
    const CMat<float> m = oracle::random_complex<float>(24, 6, 55);
    const std::complex<float> phase = std::polar(1.0f, 1.234f);
    const CMat<float> rotated = m * phase;

    const auto basis_a = compute_svd_basis(m, 24, 1);
    const auto basis_b = compute_svd_basis(rotated, 24, 1);
    for (Index i = 0; i < 6; ++i)
        CHECK(basis_b.lambdas[i] == doctest::Approx(basis_a.lambdas[i]).epsilon(1e-5));
    CHECK(max_abs<float>((basis_b.spatial.cwiseAbs() - basis_a.spatial.cwiseAbs())
                             .template cast<std::complex<float>>()) < 1e-4);
    CHECK(max_abs<float>((basis_b.temporal.cwiseAbs() - basis_a.temporal.cwiseAbs())
                             .template cast<std::complex<float>>()) < 1e-4);
}

TEST_CASE("svd rejects invalid inputs") {
    CMat<float> wide = CMat<float>::Zero(4, 8);
    CHECK_THROWS_AS(compute_svd_basis(wide, 4, 1), InvalidInput);

    CMat<float> bad = CMat<float>::Zero(8, 4);
    bad(0, 0) = {std::numeric_limits<float>::infinity(), 0.0f};
    CHECK_THROWS_AS(compute_svd_basis(bad, 8, 1), InvalidInput);

    CMat<float> ok = oracle::random_complex<float>(8, 4, 1);
    CHECK_THROWS_AS(compute_svd_basis(ok, 3, 1), InvalidInput);
}

TEST_CASE("clutter filter identity and full truncation") {
    const CMat<float> m = oracle::random_complex<float>(32, 8, 77);
    const auto basis = compute_svd_basis(m, 32, 1, SpatialVectors::None);

    const CMat<float> unchanged = clutter_filter(m, basis, ClutterRank{0});
    CHECK((unchanged - m).norm() / m.norm() < 1e-4);

    const CMat<float> zeroed = clutter_filter(m, basis, ClutterRank{8});
    CHECK(zeroed.norm() / m.norm() < 1e-4);

    CHECK_THROWS_AS(clutter_filter(m, basis, ClutterRank{9}), InvalidInput);
    CHECK_THROWS_AS(clutter_filter(m, basis, ClutterRank{-1}), InvalidInput);
}

TEST_CASE("clutter filter removes exactly the leading component") {
    // Two orthonormal rank-1 pairs with distinct gains.
    CVec<float> a1 = CVec<float>::Zero(10), a2 = CVec<float>::Zero(10);
    CVec<float> b1 = CVec<float>::Zero(4), b2 = CVec<float>::Zero(4);
    a1(0) = 1.0f;
    a2(3) = {0.0f, 1.0f};
    b1(1) = 1.0f;
    b2(2) = {0.6f, 0.8f};
    const float sigma1 = 5.0f, sigma2 = 2.0f;
    const CMat<float> m = sigma1 * (a1 * b1.adjoint()) + sigma2 * (a2 * b2.adjoint());

    const auto basis = compute_svd_basis(m, 10, 1);
    const CMat<float> filtered = clutter_filter(m, basis, ClutterRank{1});
    const CMat<float> expected = sigma2 * (a2 * b2.adjoint());
    CHECK((filtered - expected).norm() / expected.norm() < 1e-4);
}

TEST_CASE("clutter filter is an idempotent projection") {
    const CMat<float> m = oracle::random_complex<float>(40, 10, 99);
    const auto basis = compute_svd_basis(m, 40, 1, SpatialVectors::None);
    const ClutterRank n_c{3};
    const CMat<float> once = clutter_filter(m, basis, n_c);
    const CMat<float> twice = clutter_filter(once, basis, n_c);
    CHECK((twice - once).norm() / once.norm() < 1e-5);
}

TEST_CASE("energy splits between filtered output and removed components") {
    const CMat<float> m = oracle::random_complex<float>(64, 12, 101);
    const auto basis = compute_svd_basis(m, 64, 1, SpatialVectors::None);
    const ClutterRank n_c{4};
    const CMat<float> filtered = clutter_filter(m, basis, n_c);
    double removed = 0.0;
    for (Index i = 0; i < n_c.value; ++i)
        removed += static_cast<double>(basis.lambdas[i]) * basis.lambdas[i];
    const double total = m.cast<Complexd>().squaredNorm();
    const double kept = filtered.cast<Complexd>().squaredNorm();
    CHECK(kept + removed == doctest::Approx(total).epsilon(1e-4));
}

TEST_CASE("frequency-equivalent threshold reproduces the published values") {
    CHECK(rank_from_cutoff(60000.0, 1024, 2000.0).value == 68);  // 68.27 rounds down
    CHECK(rank_from_cutoff(75000.0, 1024, 2000.0).value == 55);  // 54.61 rounds up
    CHECK(rank_from_cutoff(75000.0, 1024, 0.0).value == 0);
}

TEST_CASE("threshold rounding is ties-to-even and clamped") {
    // 2*10*525/3000 = 3.5 -> 4 ; 2*10*375/3000 = 2.5 -> 2
    CHECK(rank_from_cutoff(3000.0, 10, 525.0).value == 4);
    CHECK(rank_from_cutoff(3000.0, 10, 375.0).value == 2);
    CHECK(rank_from_cutoff(1000.0, 8, 500.0).value == 8);  // exactly n_t
    CHECK_THROWS_AS(rank_from_cutoff(1000.0, 8, 600.0), InvalidInput);
    CHECK_THROWS_AS(rank_from_cutoff(1000.0, 8, -1.0), InvalidInput);
}

TEST_CASE("singular profile in dB") {
    SvdBasis<float> basis;
    basis.nx = 3;
    basis.ny = 1;
    basis.lambdas.resize(3);
    basis.lambdas << 10.0f, 1.0f, 0.1f;
    basis.temporal = CMat<float>::Identity(3, 3);
    basis.rank_eff = 3;

    const Vec<float> db = singular_energy_profile(basis);
    CHECK(db[0] == 0.0f);
    CHECK(db[1] == doctest::Approx(-20.0).epsilon(1e-6));
    CHECK(db[2] == doctest::Approx(-40.0).epsilon(1e-6));

    basis.lambdas.setZero();
    CHECK_THROWS_AS(singular_energy_profile(basis), InvalidInput);
}

TEST_CASE("singular profile is non-increasing on random data") {
    const CMat<float> m = oracle::random_complex<float>(32, 8, 5);
    const auto basis = compute_svd_basis(m, 32, 1, SpatialVectors::None);
    const Vec<float> db = singular_energy_profile(basis);
    CHECK(db[0] == 0.0f);
    for (Index i = 1; i < db.size(); ++i) CHECK(db[i] <= db[i - 1]);
}

TEST_CASE("eigenvector mean image") {
    const CMat<float> m = oracle::random_complex<float>(24, 6, 202);  // 4x6 pixels
    const auto basis = compute_svd_basis(m, 4, 6);

    const Mat<float> first = eigenvector_mean_image(basis, 1, 1);
    REQUIRE(first.rows() == 4);
    REQUIRE(first.cols() == 6);
    for (Index p = 0; p < 24; ++p)
        CHECK(first(p % 4, p / 4) ==
              doctest::Approx(std::abs(basis.spatial(p, 0))).epsilon(1e-6));

    // Mean over [1,3] equals the elementwise mean of oracle magnitudes.
    const auto direct = oracle::direct_svd(m);
    const Mat<float> mean = eigenvector_mean_image(basis, 1, 3);
    for (Index p = 0; p < 24; ++p) {
        const double expected = (std::abs(direct.u(p, 0)) + std::abs(direct.u(p, 1)) +
                                 std::abs(direct.u(p, 2))) /
                                3.0;
        CHECK(mean(p % 4, p / 4) == doctest::Approx(expected).epsilon(1e-4));
    }

    CHECK_THROWS_AS(eigenvector_mean_image(basis, 0, 1), InvalidInput);
    CHECK_THROWS_AS(eigenvector_mean_image(basis, 2, 1), InvalidInput);
    CHECK_THROWS_AS(eigenvector_mean_image(basis, 1, 7), InvalidInput);
}

TEST_CASE("rank-1 matrix mean image is proportional to |a|") {
    CVec<float> a(8);
    for (Index i = 0; i < 8; ++i)
        a(i) = std::polar(0.2f + 0.1f * static_cast<float>(i), 0.3f * static_cast<float>(i));
    CVec<float> b(3);
    b << std::complex<float>(1, 0), {0, 1}, {1, 1};
    b.normalize();
    const CMat<float> m = a * b.adjoint();
    const auto basis = compute_svd_basis(m, 8, 1);
    const Mat<float> image = eigenvector_mean_image(basis, 1, 1);
    const float scale = image(0, 0) / std::abs(a(0));
    for (Index p = 0; p < 8; ++p)
        CHECK(image(p, 0) == doctest::Approx(scale * std::abs(a(p))).epsilon(1e-4));
}

TEST_CASE("eigenvector spectra highlights a pure tone") {
    // Build a basis whose V_1 is a pure complex exponential at bin k.
    const Index n = 16;
    const Index k = 5;
    SvdBasis<float> basis;
    basis.nx = n;
    basis.ny = 1;
    basis.lambdas = Vec<float>::Zero(n);
    basis.lambdas[0] = 1.0f;
    basis.temporal = CMat<float>::Identity(n, n);
    for (Index t = 0; t < n; ++t)
        basis.temporal(t, 0) = std::polar(1.0f / std::sqrt(static_cast<float>(n)),
                                          2.0f * static_cast<float>(M_PI) * k * t / n);
    basis.rank_eff = 1;

    const Mat<float> spectra = eigenvector_spectra(basis);
    REQUIRE(spectra.rows() == n);
    REQUIRE(spectra.cols() == n);

    // Column 0: single 0 dB bin at tone position, everything else at floor.
    const Index tone_row = (k <= n / 2 ? k : k - n) + (n - 1) / 2;
    CHECK(spectra(tone_row, 0) == doctest::Approx(0.0).epsilon(1e-6));
    for (Index r = 0; r < n; ++r)
        if (r != tone_row) CHECK(spectra(r, 0) < -100.0);

    // Zero-weight columns sit at the floor entirely.
    for (Index c = 1; c < n; ++c)
        for (Index r = 0; r < n; ++r) CHECK(spectra(r, c) <= kDbFloor + 1e-9);
    CHECK(spectra.maxCoeff() == doctest::Approx(0.0));
}
