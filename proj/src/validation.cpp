#include "qhd/validation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qhd/kicked_top.hpp"
#include "qhd/oracle.hpp"
#include "qhd/perturbation.hpp"
#include "qhd/qhd.hpp"

namespace qhd {

namespace {

class Battery {
 public:
  void record(const std::string& name, double residual, double tolerance) {
    auto it = std::find_if(report_.checks.begin(), report_.checks.end(),
                           [&](const auto& c) { return c.name == name; });
    if (it == report_.checks.end()) {
      report_.checks.push_back({name, residual, tolerance, residual <= tolerance});
      return;
    }
    it->residual = std::max(it->residual, residual);
    it->passed = it->residual <= it->tolerance;
  }

  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

double max_abs(const MatrixXc<double>& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Every set partition of the oracle, checked through its size multiset.
double partition_consistency(const SymmetricState<double>& a, const SymmetricState<double>& b,
                             const oracle::ExhaustiveResult& exhaustive, int n) {
  const auto partitions = oracle::set_partitions(n);
  double worst = 0;
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    std::vector<int> sizes;
    for (const auto& block : oracle::blocks_of(partitions[i])) sizes.push_back(static_cast<int>(block.size()));
    const double fast = delta_partition(a, b, SizeMultiset(sizes));
    worst = std::max(worst, std::abs(fast - exhaustive.all_deltas[i]));
  }
  return worst;
}

void hamming_fixtures(Battery& battery, int n) {
  const auto psi1 = oracle::FullState::basis(n, 0);
  const auto psi2 = oracle::FullState::basis(n, 1);
  const auto psi3 = oracle::FullState::basis(n, (std::uint64_t{1} << n) - 1);
  const double d12 = oracle::qhd_exhaustive(psi1, psi2).value;
  const double d13 = oracle::qhd_exhaustive(psi1, psi3).value;
  const double d23 = oracle::qhd_exhaustive(psi2, psi3).value;
  battery.record("hamming D(psi1,psi2) = 1", std::abs(d12 - 1), 1e-12);
  battery.record("hamming D(psi1,psi3) = n", std::abs(d13 - n), 1e-12);
  battery.record("hamming D(psi2,psi3) = n-1", std::abs(d23 - (n - 1)), 1e-12);
}

}  // namespace

bool ValidationReport::all_passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ValidationReport run_oracle_battery(const ValidationOptions& options) {
  const int n = options.n;
  if (n < 2 || n > oracle::kMaxPartitionQubits) {
    throw std::invalid_argument("oracle battery: n must be in [2, " + std::to_string(oracle::kMaxPartitionQubits) +
                                "]");
  }
  if (options.draws < 1 || options.steps < 0) throw std::invalid_argument("oracle battery: bad draw/step count");

  Battery battery;
  hamming_fixtures(battery, n);

  for (int draw = 0; draw < options.draws; ++draw) {
    SeedStream stream = derive_run_seed(options.seed, static_cast<std::uint64_t>(draw));
    const BlochAngles initial = sample_initial(stream);
    const double alpha = options.max_alpha * stream.uniform();
    const double beta = pi_v<double> / 2;
    const PerturbationSpec spec{sample_axis(stream, AxisMode::Perpendicular, initial), 0.2};
    const BlochAngles partner = perturb(initial, spec);

    auto cache = build_cache(KickedTopConfig<double>{n, alpha, beta});
    if (options.corrupt_phase) {
      cache = FloquetCache<double>(n, cache.kick_phases().conjugate(), cache.rotation());
    }
    const double overlap_tol = 1e-12;
    const VectorXc<double> kick_full = oracle::full_kick_diagonal(n, alpha);

    SymmetricState<double> sym_a = coherent_state(n, initial);
    SymmetricState<double> sym_b = coherent_state(n, partner);
    auto full_a = oracle::FullState::from_symmetric(sym_a);
    auto full_b = oracle::FullState::from_symmetric(sym_b);
    const double overlap0 = std::abs(full_a.amplitudes().dot(full_b.amplitudes()));
    for (int t = 0; t < options.steps; ++t) {
      sym_a = step(sym_a, cache);
      sym_b = step(sym_b, cache);
      full_a = oracle::full_floquet(full_a, alpha, beta);
      full_b = oracle::full_floquet(full_b, alpha, beta);
      const auto embedded = oracle::FullState::from_symmetric(sym_a);
      battery.record("evolution: symmetric vs full amplitudes",
                     max_abs(embedded.amplitudes() - full_a.amplitudes()), 1e-10);
      battery.record("symmetry closure of full evolution", oracle::asymmetric_residual(full_a), 1e-10);
      battery.record("overlap invariance under full evolution",
                     std::abs(std::abs(full_a.amplitudes().dot(full_b.amplitudes())) - overlap0), overlap_tol);
    }

    // Kick diagonality: the cached phases embed to the full diagonal.
    {
      double worst = 0;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const int k = std::popcount(x);
        worst = std::max(worst, std::abs(cache.kick_phases()[k] - kick_full[static_cast<Eigen::Index>(x)]));
      }
      battery.record("kick phases vs full diagonal", worst, 1e-12);
    }

    for (int m = 1; m <= std::min(3, n); ++m) {
      const auto reduced = reduced_m_qubit(sym_a, m);
      const auto embedding = oracle::dicke_embedding(m);
      const MatrixXc<double> lifted = embedding * reduced.matrix * embedding.adjoint();
      std::vector<int> first(m);
      std::iota(first.begin(), first.end(), 0);
      std::vector<int> last(m);
      std::iota(last.begin(), last.end(), n - m);
      const double residual = std::max(max_abs(lifted - oracle::partial_trace(full_a, first)),
                                       max_abs(lifted - oracle::partial_trace(full_a, last)));
      battery.record("reduction m=" + std::to_string(m) + " vs partial trace", residual, 1e-10);
    }
    battery.record("single-qubit fast path vs m=1 reduction",
                   max_abs(reduced_single_qubit(sym_a).matrix - reduced_m_qubit(sym_a, 1).matrix), 1e-12);

    const auto exhaustive = oracle::qhd_exhaustive(full_a, full_b);
    const auto exact = qhd_symmetric_exact(sym_a, sym_b, n);
    battery.record("partition DP vs exhaustive maximum", std::abs(exact.value - exhaustive.value), 1e-9);
    battery.record("delta_P by size multiset vs index partition",
                   partition_consistency(sym_a, sym_b, exhaustive, n), 1e-9);
    double bound_violation = 0;
    for (double d : exhaustive.all_deltas) bound_violation = std::max(bound_violation, d - exhaustive.value);
    battery.record("lower bound delta_P <= D", bound_violation, 1e-10);
  }
  return battery.take();
}

}  // namespace qhd
