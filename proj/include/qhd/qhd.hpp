#pragma once

// Quantum Hamming distance between symmetric states.
//
//   D(rho, sigma) = max_P sum_a d(rho_a, sigma_a) / k_a
//
// For permutation-symmetric states every part of size k has the same
// reduction, so a partition is fully described by its multiset of sizes.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhd/metrics.hpp"
#include "qhd/symmetric_state.hpp"

namespace qhd {

/// Part sizes of a partition, sorted ascending.
class SizeMultiset {
 public:
  SizeMultiset() = default;
  explicit SizeMultiset(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    std::sort(sizes_.begin(), sizes_.end());
    if (!sizes_.empty() && sizes_.front() < 1) {
      throw std::invalid_argument("SizeMultiset: part sizes must be >= 1");
    }
  }

  static SizeMultiset singletons(int n) { return SizeMultiset(std::vector<int>(n, 1)); }

  const std::vector<int>& sizes() const { return sizes_; }
  int total() const { return std::accumulate(sizes_.begin(), sizes_.end(), 0); }
  int count(int k) const { return static_cast<int>(std::count(sizes_.begin(), sizes_.end(), k)); }
  bool operator==(const SizeMultiset&) const = default;

 private:
  std::vector<int> sizes_;
};

namespace detail {

template <typename Real>
void require_same_n(const SymmetricState<Real>& a, const SymmetricState<Real>& b, const char* who) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument(std::string(who) + ": qubit counts differ");
}

}  // namespace detail

/// d(rho^(k), sigma^(k)) for one part size k.
template <typename Real>
Real part_distance(const SymmetricState<Real>& rho, const SymmetricState<Real>& sigma, int k,
                   BaseMetric metric = BaseMetric::Trace) {
  detail::require_same_n(rho, sigma, "part_distance");
  if (k == 1) {
    return base_distance(metric, reduced_single_qubit(rho).matrix, reduced_single_qubit(sigma).matrix);
  }
  return base_distance(metric, reduced_m_qubit(rho, k).matrix, reduced_m_qubit(sigma, k).matrix);
}

/// n (1/2) Tr|rho~ - sigma~|: the partition into single qubits.
template <typename Real>
Real qhd_symmetric_single(const SymmetricState<Real>& rho, const SymmetricState<Real>& sigma,
                          BaseMetric metric = BaseMetric::Trace) {
  return Real(rho.qubits()) * part_distance(rho, sigma, 1, metric);
}

/// delta_P for the partition with the given part sizes.
template <typename Real>
Real delta_partition(const SymmetricState<Real>& rho, const SymmetricState<Real>& sigma,
                     const SizeMultiset& parts, BaseMetric metric = BaseMetric::Trace) {
  detail::require_same_n(rho, sigma, "delta_partition");
  if (parts.sizes().empty() || parts.total() != rho.qubits()) {
    throw std::invalid_argument("delta_partition: part sizes must sum to n");
  }
  Real total = 0;
  const auto& sizes = parts.sizes();
  for (std::size_t i = 0; i < sizes.size();) {
    const int k = sizes[i];
    std::size_t j = i;
    while (j < sizes.size() && sizes[j] == k) ++j;
    total += Real(j - i) / Real(k) * part_distance(rho, sigma, k, metric);
    i = j;
  }
  return total;
}

/// Part-size cap for production scans; each f(k) costs an O(k^3) eigensolve.
inline constexpr int kDefaultMaxPart = 32;

template <typename Real>
struct QhdResult {
  Real value = 0;
  SizeMultiset parts;
};

/// max over partitions with parts no larger than max_part.
///
/// Unbounded knapsack on f(k) = d(rho^(k), sigma^(k)) / k:
///   g(s) = max_{1 <= k <= min(s, max_part)} f(k) + g(s - k),  g(0) = 0.
/// Ties within 1e-12 go to the smaller part size. With max_part = n this is
/// the exact distance, since symmetry reduces set partitions to integer ones.
template <typename Real>
QhdResult<Real> qhd_symmetric_exact(const SymmetricState<Real>& rho, const SymmetricState<Real>& sigma,
                                    int max_part = kDefaultMaxPart, BaseMetric metric = BaseMetric::Trace) {
  detail::require_same_n(rho, sigma, "qhd_symmetric_exact");
  const int n = rho.qubits();
  if (max_part < 1) throw std::invalid_argument("qhd_symmetric_exact: max_part must be >= 1");
  max_part = std::min(max_part, n);

  std::vector<Real> per_qubit(static_cast<std::size_t>(max_part) + 1, Real(0));
  for (int k = 1; k <= max_part; ++k) per_qubit[k] = part_distance(rho, sigma, k, metric) / Real(k);

  constexpr Real tie = Real(1e-12);
  std::vector<Real> best(static_cast<std::size_t>(n) + 1, Real(0));
  std::vector<int> choice(static_cast<std::size_t>(n) + 1, 0);
  for (int s = 1; s <= n; ++s) {
    best[s] = per_qubit[1] + best[s - 1];
    choice[s] = 1;
    for (int k = 2; k <= std::min(s, max_part); ++k) {
      const Real candidate = per_qubit[k] + best[s - k];
      if (candidate > best[s] + tie) {
        best[s] = candidate;
        choice[s] = k;
      }
    }
  }
  std::vector<int> sizes;
  for (int s = n; s > 0; s -= choice[s]) sizes.push_back(choice[s]);
  return {best[n], SizeMultiset(std::move(sizes))};
}

}  // namespace qhd
