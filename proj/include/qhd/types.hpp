#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qhd {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using VectorXc = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using MatrixXc = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using Matrix2c = Eigen::Matrix<Complex<Real>, 2, 2>;

// Single-qubit pure state (amplitudes of |0>, |1>).
template <typename Real>
using Spinor = Eigen::Matrix<Complex<Real>, 2, 1>;

template <typename Real>
using Vector3 = Eigen::Matrix<Real, 3, 1>;

template <typename Real>
inline constexpr Real pi_v = Real(3.141592653589793238462643383279502884L);

}  // namespace qhd
