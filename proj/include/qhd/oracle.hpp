#pragma once

// Exponential-cost reference implementation on the full 2^n Hilbert space,
// used to validate every fast path on small systems.
//
// Basis index bit i is qubit i; a set bit means the qubit is in |1>.

#include <cstdint>
#include <functional>
#include <vector>

#include "qhd/metrics.hpp"
#include "qhd/symmetric_state.hpp"

namespace qhd::oracle {

inline constexpr int kMaxEvolutionQubits = 12;
inline constexpr int kMaxPartitionQubits = 8;
inline constexpr int kMaxTraceKeep = 8;

class FullState {
 public:
  FullState(int n, VectorXc<double> amps);

  /// Computational basis state; bit i of `bits` is qubit i.
  static FullState basis(int n, std::uint64_t bits);
  /// Embeds a symmetric state; |d_k^n> is the uniform superposition of all
  /// basis states with k set bits.
  static FullState from_symmetric(const SymmetricState<double>& state);

  int qubits() const { return n_; }
  const VectorXc<double>& amplitudes() const { return amps_; }

 private:
  int n_;
  VectorXc<double> amps_;
};

/// exp(i alpha/(4n) (sum sz)^2) exp(i beta/2 sum sy) |psi>.
FullState full_floquet(const FullState& state, double alpha, double beta);

/// Diagonal of exp(i alpha/(4n) sum_{i,j} sz_i sz_j).
VectorXc<double> full_kick_diagonal(int n, double alpha);

/// Reduced density matrix on `keep`; kept qubit keep[j] becomes bit j.
MatrixXc<double> partial_trace(const FullState& state, const std::vector<int>& keep);

/// 2^m x (m+1) isometry taking the Dicke-m basis into the computational one.
MatrixXc<double> dicke_embedding(int m);

/// Dicke amplitudes of the projection onto the symmetric subspace.
VectorXc<double> symmetric_projection(const FullState& state);

/// Norm of the component outside the symmetric subspace.
double asymmetric_residual(const FullState& state);

/// Restricted growth string a with a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
using GrowthString = std::vector<int>;

/// All set partitions of {0..n-1} as restricted growth strings, in
/// lexicographic order (Bell(n) of them).
std::vector<GrowthString> set_partitions(int n);

/// Explicit blocks of qubit indices.
using IndexPartition = std::vector<std::vector<int>>;

IndexPartition blocks_of(const GrowthString& rgs);

/// delta_P = sum_a d(rho_a, sigma_a) / k_a.
double delta_index_partition(const FullState& rho, const FullState& sigma, const IndexPartition& parts,
                             BaseMetric metric = BaseMetric::Trace);

struct ExhaustiveResult {
  double value = 0;
  IndexPartition best;
  /// delta_P for every enumerated partition, in enumeration order.
  std::vector<double> all_deltas;
};

/// max over all set partitions; the first maximum in enumeration order wins.
ExhaustiveResult qhd_exhaustive(const FullState& rho, const FullState& sigma,
                                BaseMetric metric = BaseMetric::Trace);

}  // namespace qhd::oracle
