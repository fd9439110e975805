#pragma once

// Base metrics between density matrices: trace distance and Bures length.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qhd/symmetric_state.hpp"

namespace qhd {

enum class BaseMetric { Trace, Bures };

inline std::string_view to_string(BaseMetric metric) {
  return metric == BaseMetric::Trace ? "trace" : "bures";
}

namespace detail {

template <typename DerivedA, typename DerivedB>
void require_same_shape(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                        const char* who) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::invalid_argument(std::string(who) + ": density matrices must be square and equal size");
  }
}

}  // namespace detail

/// (1/2) Tr|rho - sigma|.
template <typename DerivedA, typename DerivedB>
typename Eigen::NumTraits<typename DerivedA::Scalar>::Real trace_distance(
    const Eigen::MatrixBase<DerivedA>& rho, const Eigen::MatrixBase<DerivedB>& sigma) {
  using Scalar = typename DerivedA::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  detail::require_same_shape(rho, sigma, "trace_distance");
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix delta = rho - sigma;
  if (delta.rows() == 2) {
    // Hermitian 2x2: eigenvalues tr/2 +- sqrt(((a-d)/2)^2 + |b|^2).
    const Real a = std::real(delta(0, 0));
    const Real d = std::real(delta(1, 1));
    const Real half_tr = (a + d) / Real(2);
    const Real radius = std::hypot((a - d) / Real(2), std::abs(delta(0, 1)));
    return (std::abs(half_tr + radius) + std::abs(half_tr - radius)) / Real(2);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(delta, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum() / Real(2);
}

namespace detail {

template <typename Matrix>
Matrix psd_sqrt(const Matrix& m, const char* who) {
  using Real = typename Eigen::NumTraits<typename Matrix::Scalar>::Real;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  const auto& evals = solver.eigenvalues();
  if (evals.minCoeff() < Real(-1e-10)) {
    throw std::invalid_argument(std::string(who) + ": input is not positive semidefinite");
  }
  const Real floor = Real(m.rows()) * Eigen::NumTraits<Real>::epsilon() * evals.cwiseAbs().maxCoeff();
  const auto roots = (evals.array() > floor).select(evals.array().max(Real(0)).sqrt(), Real(0)).matrix().eval();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace detail

/// arccos Tr sqrt( sqrt(sigma) rho sqrt(sigma) ), in [0, pi/2].
template <typename DerivedA, typename DerivedB>
typename Eigen::NumTraits<typename DerivedA::Scalar>::Real bures_length(
    const Eigen::MatrixBase<DerivedA>& rho, const Eigen::MatrixBase<DerivedB>& sigma) {
  using Scalar = typename DerivedA::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  detail::require_same_shape(rho, sigma, "bures_length");
  const Matrix r = rho;
  const Matrix s = sigma;
  // arccos has infinite slope at 1: rounding in the fidelity alone would
  // put d(rho, rho) near 1e-8.
  if (r == s) {
    detail::psd_sqrt(r, "bures_length");
    return Real(0);
  }
  // Tr sqrt(sqrt(s) r sqrt(s)) is the trace norm of sqrt(r) sqrt(s). Summing
  // singular values keeps rounding at O(eps) and is symmetric in (r, s);
  // eigenvalues of the inner product would leak sqrt(eps) into the sum.
  const Matrix product = detail::psd_sqrt(r, "bures_length") * detail::psd_sqrt(s, "bures_length");
  const Real fidelity = Eigen::JacobiSVD<Matrix>(product).singularValues().sum();
  return std::acos(std::clamp(fidelity, Real(0), Real(1)));
}

template <typename DerivedA, typename DerivedB>
typename Eigen::NumTraits<typename DerivedA::Scalar>::Real base_distance(
    BaseMetric metric, const Eigen::MatrixBase<DerivedA>& rho, const Eigen::MatrixBase<DerivedB>& sigma) {
  return metric == BaseMetric::Trace ? trace_distance(rho, sigma) : bures_length(rho, sigma);
}

template <typename Real>
Real trace_distance(const ReducedState<Real>& rho, const ReducedState<Real>& sigma) {
  return trace_distance(rho.matrix, sigma.matrix);
}

template <typename Real>
Real trace_distance(const SingleQubitState<Real>& rho, const SingleQubitState<Real>& sigma) {
  return trace_distance(rho.matrix, sigma.matrix);
}

template <typename Real>
Real bures_length(const ReducedState<Real>& rho, const ReducedState<Real>& sigma) {
  return bures_length(rho.matrix, sigma.matrix);
}

template <typename Real>
Real bures_length(const SingleQubitState<Real>& rho, const SingleQubitState<Real>& sigma) {
  return bures_length(rho.matrix, sigma.matrix);
}

}  // namespace qhd
