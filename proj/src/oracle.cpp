#include "qhd/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace qhd::oracle {

namespace {

std::uint64_t dim_of(int n) { return std::uint64_t{1} << n; }

int popcount(std::uint64_t x) { return std::popcount(x); }

double binomial(int n, int k) {
  double b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

FullState::FullState(int n, VectorXc<double> amps) : n_(n), amps_(std::move(amps)) {
  if (n_ < 1 || n_ > kMaxEvolutionQubits) {
    throw std::invalid_argument("FullState: n must be in [1, " + std::to_string(kMaxEvolutionQubits) + "]");
  }
  if (static_cast<std::uint64_t>(amps_.size()) != dim_of(n_)) {
    throw std::invalid_argument("FullState: expected 2^n amplitudes");
  }
}

FullState FullState::basis(int n, std::uint64_t bits) {
  if (n < 1 || n > kMaxEvolutionQubits || bits >= dim_of(n)) {
    throw std::invalid_argument("FullState::basis: index out of range");
  }
  VectorXc<double> a = VectorXc<double>::Zero(static_cast<Eigen::Index>(dim_of(n)));
  a[static_cast<Eigen::Index>(bits)] = 1.0;
  return FullState(n, std::move(a));
}

FullState FullState::from_symmetric(const SymmetricState<double>& state) {
  const int n = state.qubits();
  if (n > kMaxEvolutionQubits) throw std::invalid_argument("FullState::from_symmetric: n too large");
  VectorXc<double> a(static_cast<Eigen::Index>(dim_of(n)));
  std::vector<double> inv_root(n + 1);
  for (int k = 0; k <= n; ++k) inv_root[k] = 1.0 / std::sqrt(binomial(n, k));
  for (std::uint64_t x = 0; x < dim_of(n); ++x) {
    const int k = popcount(x);
    a[static_cast<Eigen::Index>(x)] = state[k] * inv_root[k];
  }
  return FullState(n, std::move(a));
}

VectorXc<double> full_kick_diagonal(int n, double alpha) {
  VectorXc<double> d(static_cast<Eigen::Index>(dim_of(n)));
  for (std::uint64_t x = 0; x < dim_of(n); ++x) {
    // sum_{i,j} sz_i sz_j = (sum_i sz_i)^2 = (n - 2 popcount)^2
    const double m = n - 2.0 * popcount(x);
    d[static_cast<Eigen::Index>(x)] = std::polar(1.0, alpha * m * m / (4.0 * n));
  }
  return d;
}

FullState full_floquet(const FullState& state, double alpha, double beta) {
  const int n = state.qubits();
  VectorXc<double> a = state.amplitudes();
  // exp(i beta/2 sy) = [[c, s], [-s, c]] on every qubit.
  const double c = std::cos(beta / 2);
  const double s = std::sin(beta / 2);
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t x = 0; x < dim_of(n); ++x) {
      if (x & bit) continue;
      const auto i0 = static_cast<Eigen::Index>(x);
      const auto i1 = static_cast<Eigen::Index>(x | bit);
      const std::complex<double> a0 = a[i0];
      const std::complex<double> a1 = a[i1];
      a[i0] = c * a0 + s * a1;
      a[i1] = -s * a0 + c * a1;
    }
  }
  a = full_kick_diagonal(n, alpha).cwiseProduct(a);
  return FullState(n, std::move(a));
}

MatrixXc<double> partial_trace(const FullState& state, const std::vector<int>& keep) {
  const int n = state.qubits();
  if (keep.empty() || static_cast<int>(keep.size()) > std::min(n, kMaxTraceKeep)) {
    throw std::invalid_argument("partial_trace: keep must hold 1.." + std::to_string(kMaxTraceKeep) + " qubits");
  }
  std::uint64_t keep_mask = 0;
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::invalid_argument("partial_trace: qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (keep_mask & bit) throw std::invalid_argument("partial_trace: duplicate qubit index");
    keep_mask |= bit;
  }
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!(keep_mask & (std::uint64_t{1} << q))) rest.push_back(q);
  }

  const auto kept_dim = static_cast<Eigen::Index>(dim_of(static_cast<int>(keep.size())));
  const auto rest_dim = static_cast<Eigen::Index>(dim_of(static_cast<int>(rest.size())));
  MatrixXc<double> m(kept_dim, rest_dim);
  for (Eigen::Index i = 0; i < kept_dim; ++i) {
    std::uint64_t base = 0;
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (i >> j & 1) base |= std::uint64_t{1} << keep[j];
    }
    for (Eigen::Index r = 0; r < rest_dim; ++r) {
      std::uint64_t x = base;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (r >> j & 1) x |= std::uint64_t{1} << rest[j];
      }
      m(i, r) = state.amplitudes()[static_cast<Eigen::Index>(x)];
    }
  }
  return m * m.adjoint();
}

MatrixXc<double> dicke_embedding(int m) {
  MatrixXc<double> v = MatrixXc<double>::Zero(static_cast<Eigen::Index>(dim_of(m)), m + 1);
  for (std::uint64_t x = 0; x < dim_of(m); ++x) {
    const int k = popcount(x);
    v(static_cast<Eigen::Index>(x), k) = 1.0 / std::sqrt(binomial(m, k));
  }
  return v;
}

VectorXc<double> symmetric_projection(const FullState& state) {
  const int n = state.qubits();
  VectorXc<double> c = VectorXc<double>::Zero(n + 1);
  for (std::uint64_t x = 0; x < dim_of(n); ++x) c[popcount(x)] += state.amplitudes()[static_cast<Eigen::Index>(x)];
  for (int k = 0; k <= n; ++k) c[k] /= std::sqrt(binomial(n, k));
  return c;
}

double asymmetric_residual(const FullState& state) {
  const int n = state.qubits();
  const VectorXc<double> c = symmetric_projection(state);
  double sq = 0;
  for (std::uint64_t x = 0; x < dim_of(n); ++x) {
    const int k = popcount(x);
    sq += std::norm(state.amplitudes()[static_cast<Eigen::Index>(x)] - c[k] / std::sqrt(binomial(n, k)));
  }
  return std::sqrt(sq);
}

std::vector<GrowthString> set_partitions(int n) {
  if (n < 1 || n > kMaxPartitionQubits) {
    throw std::invalid_argument("set_partitions: n must be in [1, " + std::to_string(kMaxPartitionQubits) + "]");
  }
  std::vector<GrowthString> out;
  GrowthString a(n, 0);
  // prefix_max[i] = max(a[0..i-1]), prefix_max[0] unused
  std::vector<int> prefix_max(n, 0);
  while (true) {
    out.push_back(a);
    int i = n - 1;
    while (i > 0 && a[i] > prefix_max[i]) --i;
    if (i == 0) break;
    ++a[i];
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = std::max(prefix_max[j - 1], a[j - 1]);
    }
  }
  return out;
}

IndexPartition blocks_of(const GrowthString& rgs) {
  IndexPartition blocks;
  for (std::size_t q = 0; q < rgs.size(); ++q) {
    const auto b = static_cast<std::size_t>(rgs[q]);
    if (b >= blocks.size()) blocks.resize(b + 1);
    blocks[b].push_back(static_cast<int>(q));
  }
  return blocks;
}

namespace {

void require_compatible(const FullState& rho, const FullState& sigma) {
  if (rho.qubits() != sigma.qubits()) throw std::invalid_argument("oracle: qubit counts differ");
}

std::uint64_t mask_of(const std::vector<int>& block) {
  std::uint64_t m = 0;
  for (int q : block) m |= std::uint64_t{1} << q;
  return m;
}

class BlockDistances {
 public:
  BlockDistances(const FullState& rho, const FullState& sigma, BaseMetric metric)
      : rho_(rho), sigma_(sigma), metric_(metric) {}

  double operator()(const std::vector<int>& block) {
    const std::uint64_t key = mask_of(block);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const double d = base_distance(metric_, partial_trace(rho_, block), partial_trace(sigma_, block));
    cache_.emplace(key, d);
    return d;
  }

 private:
  const FullState& rho_;
  const FullState& sigma_;
  BaseMetric metric_;
  std::unordered_map<std::uint64_t, double> cache_;
};

void require_cover(const IndexPartition& parts, int n) {
  std::uint64_t seen = 0;
  for (const auto& block : parts) {
    if (block.empty()) throw std::invalid_argument("IndexPartition: empty block");
    for (int q : block) {
      if (q < 0 || q >= n) throw std::invalid_argument("IndexPartition: index out of range");
      const std::uint64_t bit = std::uint64_t{1} << q;
      if (seen & bit) throw std::invalid_argument("IndexPartition: blocks overlap");
      seen |= bit;
    }
  }
  if (seen != dim_of(n) - 1) throw std::invalid_argument("IndexPartition: blocks do not cover all qubits");
}

}  // namespace

double delta_index_partition(const FullState& rho, const FullState& sigma, const IndexPartition& parts,
                             BaseMetric metric) {
  require_compatible(rho, sigma);
  require_cover(parts, rho.qubits());
  BlockDistances distance(rho, sigma, metric);
  double total = 0;
  for (const auto& block : parts) total += distance(block) / static_cast<double>(block.size());
  return total;
}

ExhaustiveResult qhd_exhaustive(const FullState& rho, const FullState& sigma, BaseMetric metric) {
  require_compatible(rho, sigma);
  BlockDistances distance(rho, sigma, metric);
  ExhaustiveResult result;
  bool first = true;
  for (const auto& rgs : set_partitions(rho.qubits())) {
    const IndexPartition blocks = blocks_of(rgs);
    double delta = 0;
    for (const auto& block : blocks) delta += distance(block) / static_cast<double>(block.size());
    result.all_deltas.push_back(delta);
    if (first || delta > result.value) {
      result.value = delta;
      result.best = blocks;
      first = false;
    }
  }
  return result;
}

}  // namespace qhd::oracle
