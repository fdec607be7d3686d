#pragma once

// Independent oracles used by the unit and acceptance suites. Everything here
// deliberately avoids the library's Gram-trick path: the SVD oracle is a
// direct Jacobi decomposition in double, band powers come from plain
// time-domain sums or quadrature.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "ldh/types.hpp"

namespace oracle {

/// Direct (non-Gram) complex SVD in double precision.
struct DirectSvd {
    Eigen::VectorXd singular_values;
    Eigen::MatrixXcd u;  // thin
    Eigen::MatrixXcd v;
};

template <class Derived>
DirectSvd direct_svd(const Eigen::MatrixBase<Derived>& m) {
    const Eigen::MatrixXcd md = m.template cast<std::complex<double>>();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(md, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

/// Random complex matrix with iid standard-normal parts, seeded.
template <class T>
ldh::CMat<T> random_complex(ldh::Index rows, ldh::Index cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ldh::CMat<T> m(rows, cols);
    for (ldh::Index c = 0; c < cols; ++c)
        for (ldh::Index r = 0; r < rows; ++r)
            m(r, c) = std::complex<T>(static_cast<T>(normal(rng)), static_cast<T>(normal(rng)));
    return m;
}

/// Time-domain window energy, the Parseval reference: n_t * sum_t |h|^2.
template <class Derived>
double parseval_energy(const Eigen::MatrixBase<Derived>& window, ldh::Index pixel) {
    double acc = 0.0;
    for (ldh::Index t = 0; t < window.cols(); ++t) acc += std::norm(std::complex<double>(window(pixel, t)));
    return acc * static_cast<double>(window.cols());
}

inline double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const Eigen::VectorXd da = a.array() - a.mean();
    const Eigen::VectorXd db = b.array() - b.mean();
    const double denom = da.norm() * db.norm();
    return denom > 0.0 ? da.dot(db) / denom : 0.0;
}

inline Eigen::VectorXd flatten(const ldh::Mat<double>& image) {
    return Eigen::Map<const Eigen::VectorXd>(image.data(), image.size());
}

template <class T>
Eigen::VectorXd flatten(const ldh::Mat<T>& image) {
    return flatten(ldh::Mat<double>(image.template cast<double>()));
}

/// Midpoint quadrature of the wrapped-Lorentzian band fraction, the
/// independent check for the closed form in the generator.
inline double lorentzian_band_fraction_quadrature(double rho, double f1, double f2, double fs,
                                                  int steps = 200000) {
    const double theta1 = 2.0 * M_PI * f1 / fs;
    const double theta2 = 2.0 * M_PI * f2 / fs;
    const double dtheta = (theta2 - theta1) / steps;
    double acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double theta = theta1 + (i + 0.5) * dtheta;
        acc += (1.0 - rho * rho) / (1.0 - 2.0 * rho * std::cos(theta) + rho * rho);
    }
    return acc * dtheta / M_PI;  // two-sided
}

}  // namespace oracle
