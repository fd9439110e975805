#pragma once

#include <random>

#include "qhd/symmetric_state.hpp"

namespace qhd::testing {

inline double max_abs(const MatrixXc<double>& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline SymmetricState<double> random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXc<double> a(n + 1);
  for (int k = 0; k <= n; ++k) a[k] = {g(rng), g(rng)};
  return SymmetricState<double>(n, a / a.norm());
}

// Random full-rank density matrix: G G^dagger / Tr, sometimes with a rank cut.
inline MatrixXc<double> random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> rank_dist(1, dim);
  const int rank = rank_dist(rng);
  MatrixXc<double> w(dim, rank);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < rank; ++j) w(i, j) = {g(rng), g(rng)};
  }
  MatrixXc<double> rho = w * w.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

}  // namespace qhd::testing
