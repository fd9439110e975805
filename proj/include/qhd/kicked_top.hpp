#pragma once

// Quantum kicked top on n qubits, restricted to the symmetric subspace.
//
//   |psi_{t+1}> = U_kick U_prec |psi_t>
//   U_kick = exp(i alpha/(4n) sum_{i,j} sz_i sz_j)   diagonal, phase (n-2k)^2
//   U_prec = exp(i beta/2 sum_i sy_i) = exp(i beta J_y)
//
// The precession is applied first. The i == j self-terms of the double sum
// are kept, so no global phase is removed.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qhd/symmetric_state.hpp"

namespace qhd {

template <typename Real = double>
struct KickedTopConfig {
  int n = 1;
  Real alpha = 0;
  Real beta = pi_v<Real> / 2;

  void validate() const {
    if (n < 1) throw std::invalid_argument("KickedTopConfig: n must be >= 1");
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
      throw std::invalid_argument("KickedTopConfig: alpha and beta must be finite");
    }
  }
};

/// Collective J_y = (1/2) sum_i sigma_y^(i) on the Dicke basis: tridiagonal,
/// <d_{k-1}|J_y|d_k> = -i sqrt(k (n-k+1)) / 2.
template <typename Real = double>
MatrixXc<Real> collective_spin_y(int n) {
  MatrixXc<Real> jy = MatrixXc<Real>::Zero(n + 1, n + 1);
  for (int k = 1; k <= n; ++k) {
    const Real t = std::sqrt(Real(k) * Real(n - k + 1)) / Real(2);
    jy(k - 1, k) = Complex<Real>(0, -t);
    jy(k, k - 1) = Complex<Real>(0, t);
  }
  return jy;
}

/// Everything a Floquet step needs for fixed (n, alpha, beta).
template <typename Real = double>
class FloquetCache {
 public:
  FloquetCache(int n, VectorXc<Real> kick_phases, RealMatrix<Real> rotation)
      : n_(n), kick_(std::move(kick_phases)), rotation_(std::move(rotation)) {
    if (kick_.size() != n_ + 1 || rotation_.rows() != n_ + 1 || rotation_.cols() != n_ + 1) {
      throw std::invalid_argument("FloquetCache: component sizes do not match n+1");
    }
  }

  int qubits() const { return n_; }
  const VectorXc<Real>& kick_phases() const { return kick_; }
  const RealMatrix<Real>& rotation() const { return rotation_; }

  /// Applies one step in place to every column of `states`.
  template <typename Derived>
  void apply(Eigen::MatrixBase<Derived>& states) const {
    if (states.rows() != n_ + 1) throw std::invalid_argument("FloquetCache::apply: dimension mismatch");
    const Eigen::Index cols = states.cols();
    RealMatrix<Real> split(n_ + 1, 2 * cols);
    split << states.real(), states.imag();
    const RealMatrix<Real> rotated = rotation_ * split;
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (int k = 0; k <= n_; ++k) {
        states(k, c) = kick_[k] * Complex<Real>(rotated(k, c), rotated(k, c + cols));
      }
    }
  }

 private:
  int n_;
  VectorXc<Real> kick_;
  RealMatrix<Real> rotation_;
};

/// exp(i beta J_y), which is real orthogonal on the Dicke basis because
/// i J_y is real antisymmetric.
///
/// J_y = D T D^dagger with D = diag(i^k) and T the real symmetric tridiagonal
/// matrix of the same magnitudes. With T = V L V^T, C = V cos(beta L) V^T and
/// S = V sin(beta L) V^T, entry (j, k) is Re(i^(j-k) (C + i S)).
template <typename Real = double>
RealMatrix<Real> precession_matrix(int n, Real beta) {
  RealMatrix<Real> t = RealMatrix<Real>::Zero(n + 1, n + 1);
  for (int k = 1; k <= n; ++k) {
    t(k - 1, k) = t(k, k - 1) = std::sqrt(Real(k) * Real(n - k + 1)) / Real(2);
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix<Real>> solver(t);
  if (solver.info() != Eigen::Success) throw std::runtime_error("precession_matrix: eigensolver failed");
  const auto& v = solver.eigenvectors();
  const auto angles = (beta * solver.eigenvalues()).eval();
  const RealMatrix<Real> c = v * angles.array().cos().matrix().asDiagonal() * v.transpose();
  const RealMatrix<Real> s = v * angles.array().sin().matrix().asDiagonal() * v.transpose();

  RealMatrix<Real> rot(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= n; ++j) {
      switch (((j - k) % 4 + 4) % 4) {
        case 0: rot(j, k) = c(j, k); break;
        case 1: rot(j, k) = -s(j, k); break;
        case 2: rot(j, k) = -c(j, k); break;
        default: rot(j, k) = s(j, k); break;
      }
    }
  }
  return rot;
}

template <typename Real = double>
VectorXc<Real> kick_phases(int n, Real alpha) {
  VectorXc<Real> phases(n + 1);
  for (int k = 0; k <= n; ++k) {
    const Real m = Real(n - 2 * k);
    phases[k] = std::polar(Real(1), alpha * m * m / (Real(4) * Real(n)));
  }
  return phases;
}

template <typename Real>
FloquetCache<Real> build_cache(const KickedTopConfig<Real>& config) {
  config.validate();
  return FloquetCache<Real>(config.n, kick_phases<Real>(config.n, config.alpha),
                            precession_matrix<Real>(config.n, config.beta));
}

template <typename Real>
SymmetricState<Real> step(const SymmetricState<Real>& state, const FloquetCache<Real>& cache) {
  if (state.qubits() != cache.qubits()) {
    throw std::invalid_argument("step: state has " + std::to_string(state.qubits()) +
                                " qubits, cache was built for " + std::to_string(cache.qubits()));
  }
  VectorXc<Real> amps = state.amplitudes();
  cache.apply(amps);
  return SymmetricState<Real>(state.qubits(), std::move(amps));
}

/// Trajectory (psi_0, ..., psi_t).
template <typename Real>
std::vector<SymmetricState<Real>> evolve(const SymmetricState<Real>& initial,
                                         const FloquetCache<Real>& cache, int t,
                                         bool renormalize = false) {
  if (t < 0) throw std::invalid_argument("evolve: step count must be >= 0");
  std::vector<SymmetricState<Real>> out;
  out.reserve(static_cast<std::size_t>(t) + 1);
  out.push_back(initial);
  for (int s = 0; s < t; ++s) {
    SymmetricState<Real> next = step(out.back(), cache);
    out.push_back(renormalize ? next.normalized() : std::move(next));
  }
  return out;
}

}  // namespace qhd
