#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <type_traits>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "ldh/types.hpp"

namespace ldh {

/// Number of leading singular components removed by the clutter filter.
struct ClutterRank {
    Index value = 0;
};

/// Relative floor below which a singular value is treated as numerically
/// null: its spatial vector is zero-filled and it does not count towards
/// rank_eff. Prevents division blow-up when forming U_i = H v_i / lambda_i.
inline constexpr double kSingularValueFloor = 1e-6;

/// Economy singular value decomposition of one space-time matrix:
/// H = sum_i lambda_i * U_i * V_i^H with lambda sorted descending.
template <class T>
struct SvdBasis {
    Index nx = 0;        // spatial dims behind the flattened rows
    Index ny = 0;
    Vec<T> lambdas;      // n_t singular values, descending
    CMat<T> temporal;    // n_t x n_t, column i = V_i
    CMat<T> spatial;     // (nx*ny) x n_t, column i = U_i (economy form); may be empty
    Index rank_eff = 0;  // count of lambdas above the numerical floor

    Index order() const { return lambdas.size(); }
    bool has_spatial() const { return spatial.size() > 0; }
};

/// Whether compute_svd_basis materializes the spatial vectors. Forming U is
/// the dominant cost at acquisition scale and the temporal-side projector in
/// clutter_filter never needs it.
enum class SpatialVectors { All, None };

namespace detail {

template <class Derived>
using RealScalarOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

// Accumulate G = m^H m in double, a row-chunk at a time so the promoted copy
// stays bounded regardless of pixel count.
template <class Derived>
Eigen::MatrixXcd gram_matrix(const Eigen::MatrixBase<Derived>& m) {
    const Index n = m.cols();
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
    const Index rows_per_chunk = std::max<Index>(1, (Index{1} << 22) / std::max<Index>(n, 1));
    for (Index r0 = 0; r0 < m.rows(); r0 += rows_per_chunk) {
        const Index len = std::min(rows_per_chunk, m.rows() - r0);
        const Eigen::MatrixXcd chunk =
            m.middleRows(r0, len).template cast<std::complex<double>>();
        gram.template selfadjointView<Eigen::Lower>().rankUpdate(chunk.adjoint());
    }
    return gram;
}

}  // namespace detail

/// Economy SVD of `m` via the eigendecomposition of the n_t-by-n_t Gram
/// matrix G = H^H H (the covariance trick for tall matrices). Eigenvalues are
/// clipped at zero before the square root; ties keep the solver's original
/// order. `nx * ny` must equal `m.rows()`; pass (rows, 1) when the rows have
/// no 2D meaning. The Gram accumulation and eigensolve run in double
/// regardless of the storage scalar.
template <class Derived>
SvdBasis<detail::RealScalarOf<Derived>> compute_svd_basis(
    const Eigen::MatrixBase<Derived>& m, Index nx, Index ny,
    SpatialVectors spatial = SpatialVectors::All) {
    using T = detail::RealScalarOf<Derived>;
    if (nx * ny != m.rows())
        throw InvalidInput("nx*ny does not match the space-time matrix rows");
    if (m.rows() < m.cols())
        throw InvalidInput("economy SVD expects pixels >= frames (tall matrix)");
    if (!m.allFinite()) throw InvalidInput("space-time matrix contains non-finite entries");

    const Index n = m.cols();
    const Eigen::MatrixXcd gram = detail::gram_matrix(m);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    if (eig.info() != Eigen::Success)
        throw NumericalFailure("eigendecomposition of the Gram matrix did not converge");

    // Descending order; stable so degenerate eigenvalues keep solver order.
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    const Eigen::VectorXd& d = eig.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&d](Index a, Index b) { return d[a] > d[b]; });

    Eigen::VectorXd lambdas(n);
    Eigen::MatrixXcd temporal(n, n);
    for (Index i = 0; i < n; ++i) {
        lambdas[i] = std::sqrt(std::max(d[order[static_cast<std::size_t>(i)]], 0.0));
        temporal.col(i) = eig.eigenvectors().col(order[static_cast<std::size_t>(i)]);
    }

    SvdBasis<T> basis;
    basis.nx = nx;
    basis.ny = ny;
    basis.lambdas = lambdas.cast<T>();
    basis.temporal = temporal.cast<std::complex<T>>();

    const double floor = kSingularValueFloor * lambdas[0];
    basis.rank_eff = 0;
    for (Index i = 0; i < n; ++i)
        if (lambdas[i] > 0.0 && lambdas[i] >= floor) ++basis.rank_eff;

    if (spatial == SpatialVectors::All) {
        // U = H V diag(1/lambda), columns below the floor zero-filled.
        Eigen::MatrixXcd weights = temporal;
        for (Index i = 0; i < n; ++i)
            weights.col(i) *= (i < basis.rank_eff) ? 1.0 / lambdas[i] : 0.0;
        basis.spatial.resize(m.rows(), n);
        const Index rows_per_chunk =
            std::max<Index>(1, (Index{1} << 22) / std::max<Index>(n, 1));
        for (Index r0 = 0; r0 < m.rows(); r0 += rows_per_chunk) {
            const Index len = std::min(rows_per_chunk, m.rows() - r0);
            basis.spatial.middleRows(r0, len) =
                (m.middleRows(r0, len).template cast<std::complex<double>>() * weights)
                    .template cast<std::complex<T>>();
        }
    }
    return basis;
}

/// Space-time matrix reconstructed from the basis, sum lambda_i U_i V_i^H.
/// Requires spatial vectors.
template <class T>
CMat<T> reconstruct(const SvdBasis<T>& basis) {
    if (!basis.has_spatial())
        throw InvalidInput("reconstruction needs the spatial vectors");
    return basis.spatial * basis.lambdas.template cast<std::complex<T>>().asDiagonal() *
           basis.temporal.adjoint();
}

/// Rank-truncation clutter filter: removes the n_c singular contributions of
/// highest energy, H_f = sum_{i > n_c} lambda_i U_i V_i^H. Implemented as the
/// temporal-side projection H (I - V_c V_c^H), which is idempotent and never
/// needs the spatial vectors.
template <class Derived, class T>
CMat<T> clutter_filter(const Eigen::MatrixBase<Derived>& m, const SvdBasis<T>& basis,
                       ClutterRank n_c) {
    static_assert(std::is_same_v<typename Derived::Scalar, std::complex<T>>,
                  "matrix and basis scalar types must match");
    const Index n = basis.order();
    if (m.cols() != n) throw InvalidInput("matrix and basis window lengths differ");
    if (n_c.value < 0 || n_c.value > n)
        throw InvalidInput("clutter rank must be in [0, n_t]");
    if (n_c.value == 0) return m;
    const auto kept = basis.temporal.leftCols(n_c.value);
    CMat<T> filtered = m;
    filtered.noalias() -= (m * kept) * kept.adjoint();
    return filtered;
}

/// Paper-style frequency-equivalent threshold: the integer nearest to
/// 2 * n_t * f1 / fs (half-way cases round to even), clamped to [0, n_t].
inline ClutterRank rank_from_cutoff(double fs, Index n_t, double f1) {
    if (!(fs > 0.0) || n_t < 1) throw InvalidInput("need fs > 0 and n_t >= 1");
    if (f1 < 0.0 || f1 > fs / 2.0)
        throw InvalidInput("cutoff frequency must lie in [0, fs/2]");
    const double raw = 2.0 * static_cast<double>(n_t) * f1 / fs;
    const Index rounded = static_cast<Index>(std::nearbyint(raw));  // ties-to-even
    return ClutterRank{std::clamp<Index>(rounded, 0, n_t)};
}

/// Ordered singular values as amplitude dB relative to the largest:
/// 20*log10(lambda_i / lambda_1). Element 0 is exactly 0 dB.
template <class T>
Vec<T> singular_energy_profile(const SvdBasis<T>& basis) {
    if (basis.order() < 1 || !(basis.lambdas[0] > T{0}))
        throw InvalidInput("singular profile needs lambda_1 > 0");
    Vec<T> db(basis.order());
    db[0] = T{0};
    for (Index i = 1; i < basis.order(); ++i) {
        const double ratio = static_cast<double>(basis.lambdas[i]) /
                             static_cast<double>(basis.lambdas[0]);
        db[i] = static_cast<T>(ratio > 0.0 ? 20.0 * std::log10(ratio)
                                           : -std::numeric_limits<double>::infinity());
    }
    return db;
}

/// Pixel-wise mean of |U_i| over the 1-based inclusive range [m, n],
/// reshaped to an nx-by-ny image.
template <class T>
Mat<T> eigenvector_mean_image(const SvdBasis<T>& basis, Index m, Index n) {
    if (!basis.has_spatial()) throw InvalidInput("mean image needs the spatial vectors");
    if (m < 1 || n < m || n > basis.order())
        throw InvalidInput("eigenvector range must satisfy 1 <= m <= n <= n_t");
    Vec<T> mean = Vec<T>::Zero(basis.spatial.rows());
    for (Index i = m - 1; i < n; ++i) mean += basis.spatial.col(i).cwiseAbs();
    mean /= static_cast<T>(n - m + 1);
    return Eigen::Map<const Mat<T>>(mean.data(), basis.nx, basis.ny);
}

/// Relative dB floor applied to log-scaled power maps so empty bins stay
/// finite.
inline constexpr double kDbFloor = -300.0;

/// Power spectra of the singular-value-weighted temporal eigenvectors:
/// column i is |DFT(lambda_i V_i)|^2 with bins reordered to the ascending
/// two-sided axis, the whole map in dB relative to its global maximum.
template <class T>
Mat<T> eigenvector_spectra(const SvdBasis<T>& basis) {
    const Index n = basis.order();
    if (n < 1) throw InvalidInput("empty basis");
    Mat<double> power(n, n);
    Eigen::FFT<double> fft;
    Eigen::VectorXcd column(n), transformed(n);
    for (Index i = 0; i < n; ++i) {
        column = basis.temporal.col(i).template cast<std::complex<double>>() *
                 static_cast<double>(basis.lambdas[i]);
        fft.fwd(transformed.data(), column.data(), static_cast<int>(n));
        for (Index k = 0; k < n; ++k) {
            const Index signed_bin = (k <= n / 2) ? k : k - n;
            power(signed_bin + (n - 1) / 2, i) = std::norm(transformed[k]);
        }
    }
    const double peak = power.maxCoeff();
    if (!(peak > 0.0)) throw InvalidInput("all-zero basis has no spectra");
    const double floor_ratio = std::pow(10.0, kDbFloor / 10.0);
    return power.unaryExpr([peak, floor_ratio](double v) {
                    return 10.0 * std::log10(std::max(v / peak, floor_ratio));
                })
        .template cast<T>();
}

}  // namespace ldh
