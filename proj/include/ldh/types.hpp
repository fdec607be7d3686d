#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ldh {

using Index = Eigen::Index;

// Dense aliases. The library is templated on the real scalar T (float for
// acquisition-sized data, double wherever extra headroom is wanted); complex
// samples are std::complex<T>.
template <class T>
using CMat = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using CVec = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, 1>;
template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using BoolGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;
using Gray8 = Eigen::Matrix<unsigned char, Eigen::Dynamic, Eigen::Dynamic>;

/// Caller handed us something that violates a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine failed to converge or produced non-finite values.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// A file did not match its documented byte layout.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ldh
