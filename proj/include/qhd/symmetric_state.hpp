#pragma once

// Permutation-symmetric n-qubit pure states in the Dicke basis.
//
// Convention: amplitude index k counts qubits in |1>, so |d_0^n> = |0...0>
// and sigma_z|0> = +|0>. Reduced states are written in the Dicke basis of
// the kept part; for a single qubit that is the ordinary (|0>, |1>) basis.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhd/types.hpp"

namespace qhd {

/// Table of log(k!) for k = 0..n, built by summing logs so it is safe to
/// use from concurrent workers (unlike lgamma, which writes signgam).
template <typename Real = double>
class LogFactorials {
 public:
  explicit LogFactorials(int n) : table_(static_cast<std::size_t>(n) + 1, Real(0)) {
    for (int k = 2; k <= n; ++k) table_[k] = table_[k - 1] + std::log(Real(k));
  }

  Real log_binomial(int n, int k) const {
    return table_[n] - table_[k] - table_[n - k];
  }

 private:
  std::vector<Real> table_;
};

template <typename Real = double>
class SymmetricState {
 public:
  using Scalar = Complex<Real>;
  using Amplitudes = VectorXc<Real>;

  SymmetricState(int n, Amplitudes amps) : n_(n), amps_(std::move(amps)) {
    if (n_ < 1) throw std::invalid_argument("SymmetricState: qubit count must be >= 1");
    if (amps_.size() != n_ + 1) {
      throw std::invalid_argument("SymmetricState: expected " + std::to_string(n_ + 1) +
                                  " amplitudes, got " + std::to_string(amps_.size()));
    }
  }

  /// The Dicke state |d_k^n>.
  static SymmetricState dicke(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw std::invalid_argument("dicke: need 0 <= k <= n, n >= 1");
    Amplitudes a = Amplitudes::Zero(n + 1);
    a[k] = Scalar(1);
    return SymmetricState(n, std::move(a));
  }

  int qubits() const { return n_; }
  const Amplitudes& amplitudes() const { return amps_; }
  Scalar operator[](int k) const { return amps_[k]; }
  Real norm() const { return amps_.norm(); }

  SymmetricState normalized() const { return SymmetricState(n_, amps_ / amps_.norm()); }

 private:
  int n_;
  Amplitudes amps_;
};

/// m-qubit reduction in the Dicke-m basis, (m+1) x (m+1).
template <typename Real = double>
struct ReducedState {
  int part_size = 0;
  MatrixXc<Real> matrix;
};

/// Single-qubit reduction over (|0>, |1>).
template <typename Real = double>
struct SingleQubitState {
  Matrix2c<Real> matrix;
};

/// Dicke amplitudes of the product state (c0|0> + c1|1>)^(x)n.
///
/// Magnitudes sqrt(C(n,k)) |c0|^(n-k) |c1|^k come from the ratio recurrence
/// run outward from the most probable k, so nothing overflows and tails
/// smoothly underflow to zero. Exact zeros in the spinor short-circuit to a
/// basis state.
template <typename Real>
SymmetricState<Real> coherent_state(int n, const Spinor<Real>& chi) {
  if (n < 1) throw std::invalid_argument("coherent_state: qubit count must be >= 1");
  const Real scale = chi.norm();
  if (!(scale > Real(0))) throw std::invalid_argument("coherent_state: zero spinor");
  const Real r0 = std::abs(chi[0]) / scale;
  const Real r1 = std::abs(chi[1]) / scale;
  const Real g0 = r0 > Real(0) ? std::arg(chi[0]) : Real(0);
  const Real g1 = r1 > Real(0) ? std::arg(chi[1]) : Real(0);

  VectorXc<Real> amps = VectorXc<Real>::Zero(n + 1);
  std::vector<Real> mag(static_cast<std::size_t>(n) + 1, Real(0));
  if (r1 == Real(0)) {
    mag[0] = 1;
  } else if (r0 == Real(0)) {
    mag[n] = 1;
  } else {
    const int mode = std::clamp(static_cast<int>(std::floor((n + 1) * r1 * r1)), 0, n);
    mag[mode] = 1;
    const Real up = r1 / r0;
    for (int k = mode; k < n; ++k) {
      mag[k + 1] = mag[k] * std::sqrt(Real(n - k) / Real(k + 1)) * up;
    }
    const Real down = r0 / r1;
    for (int k = mode; k > 0; --k) {
      mag[k - 1] = mag[k] * std::sqrt(Real(k) / Real(n - k + 1)) * down;
    }
  }
  for (int k = 0; k <= n; ++k) {
    if (mag[k] == Real(0)) continue;
    amps[k] = std::polar(mag[k], Real(n - k) * g0 + Real(k) * g1);
  }
  amps /= amps.norm();
  return SymmetricState<Real>(n, std::move(amps));
}

/// |chi>^(x)n with |chi> = cos(theta)|0> + e^{i phi} sin(theta)|1>.
template <typename Real>
SymmetricState<Real> coherent_state(int n, Real theta, Real phi) {
  Spinor<Real> chi;
  chi << Complex<Real>(std::cos(theta)), std::polar(std::sin(theta), phi);
  return coherent_state<Real>(n, chi);
}

namespace detail {

// w(p, l) = sqrt( C(n-m, l) C(m, p) / C(n, p+l) ): the weight linking
// |d_{p+l}^n> to |d_p^m> after tracing n-m qubits that hold l excitations.
template <typename Real>
Real reduction_weight(const LogFactorials<Real>& lf, int n, int m, int p, int l) {
  return std::exp(Real(0.5) *
                  (lf.log_binomial(n - m, l) + lf.log_binomial(m, p) - lf.log_binomial(n, p + l)));
}

}  // namespace detail

/// Reduction of a symmetric pure state to any m of its qubits.
///
/// Written as rho = W W^dagger with W(p, l) = a_{p+l} w(p, l), which keeps the
/// result Hermitian and positive semidefinite by construction.
template <typename Real>
ReducedState<Real> reduced_m_qubit(const SymmetricState<Real>& state, int m) {
  const int n = state.qubits();
  if (m < 1 || m > n) {
    throw std::invalid_argument("reduced_m_qubit: part size must satisfy 1 <= m <= n");
  }
  const LogFactorials<Real> lf(n);
  MatrixXc<Real> w(m + 1, n - m + 1);
  for (int l = 0; l <= n - m; ++l) {
    for (int p = 0; p <= m; ++p) {
      w(p, l) = state[p + l] * detail::reduction_weight(lf, n, m, p, l);
    }
  }
  return {m, w * w.adjoint()};
}

/// Reduces an already-reduced symmetric state further, from rho.part_size
/// qubits down to m. The same weights apply to mixed symmetric states.
template <typename Real>
ReducedState<Real> reduced_m_qubit(const ReducedState<Real>& rho, int m) {
  const int n = rho.part_size;
  if (m < 1 || m > n) {
    throw std::invalid_argument("reduced_m_qubit: part size must satisfy 1 <= m <= n");
  }
  const LogFactorials<Real> lf(n);
  MatrixXc<Real> out = MatrixXc<Real>::Zero(m + 1, m + 1);
  for (int l = 0; l <= n - m; ++l) {
    for (int p = 0; p <= m; ++p) {
      const Real wp = detail::reduction_weight(lf, n, m, p, l);
      for (int q = 0; q <= m; ++q) {
        out(p, q) += rho.matrix(p + l, q + l) * wp * detail::reduction_weight(lf, n, m, q, l);
      }
    }
  }
  return {m, out};
}

/// O(n) single-qubit reduction, M_00 = (n-l)/n, M_01 = sqrt((n-l)(l+1))/n,
/// M_11 = (l+1)/n.
template <typename Real>
SingleQubitState<Real> reduced_single_qubit(const SymmetricState<Real>& state) {
  const int n = state.qubits();
  const auto& a = state.amplitudes();
  const Real inv_n = Real(1) / Real(n);
  Real r00 = 0;
  Real r11 = 0;
  Complex<Real> r01 = 0;
  for (int l = 0; l < n; ++l) {
    r00 += std::norm(a[l]) * Real(n - l) * inv_n;
    r11 += std::norm(a[l + 1]) * Real(l + 1) * inv_n;
    r01 += a[l] * std::conj(a[l + 1]) * (std::sqrt(Real(n - l) * Real(l + 1)) * inv_n);
  }
  SingleQubitState<Real> out;
  out.matrix << Complex<Real>(r00), r01, std::conj(r01), Complex<Real>(r11);
  return out;
}

/// 1 - Tr(rho^2), in [0, 1/2] for a qubit.
template <typename Real>
Real linear_entropy(const SingleQubitState<Real>& rho) {
  return Real(1) - rho.matrix.squaredNorm();
}

/// (<sigma_x>, <sigma_y>, <sigma_z>) of a qubit density matrix.
template <typename Real>
Vector3<Real> bloch_vector(const SingleQubitState<Real>& rho) {
  const Complex<Real> r01 = rho.matrix(0, 1);
  return {Real(2) * r01.real(), Real(-2) * r01.imag(),
          (rho.matrix(0, 0) - rho.matrix(1, 1)).real()};
}

/// |<a|b>|, the global fidelity between two pure symmetric states.
template <typename Real>
Real overlap(const SymmetricState<Real>& a, const SymmetricState<Real>& b) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument("overlap: qubit counts differ");
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace qhd
