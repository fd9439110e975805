#include "qhd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qhd/metrics.hpp"
#include "qhd/parallel.hpp"
#include "qhd/qhd.hpp"

namespace qhd {

namespace {

SymmetricState<double> column_state(int n, const MatrixXc<double>& states, Eigen::Index col) {
  return SymmetricState<double>(n, states.col(col));
}

struct RunSample {
  RunRecord record;
  PairSeries series;
};

RunSample sample_run(const FloquetCache<double>& cache, const EnsembleConfig& ensemble, std::size_t index,
                     int steps) {
  SeedStream stream = derive_run_seed(ensemble.master_seed, index);
  RunSample out;
  out.record.initial = sample_initial(stream);
  out.record.axis = sample_axis(stream, ensemble.axis, out.record.initial);
  out.record.perturbed = perturb(out.record.initial, {out.record.axis, ensemble.angle});
  const int n = cache.qubits();
  out.series = evolve_pair(cache, coherent_state(n, out.record.initial), coherent_state(n, out.record.perturbed),
                           steps);
  out.record.initial_distance = out.series.distance.front();
  out.record.peak_distance = *std::max_element(out.series.distance.begin(), out.series.distance.end());
  out.record.fidelity_drift = out.series.fidelity_drift();
  return out;
}

}  // namespace

double PairSeries::fidelity_drift() const {
  double drift = 0;
  for (double f : fidelity) drift = std::max(drift, std::abs(f - fidelity.front()));
  return drift;
}

PairSeries evolve_pair(const FloquetCache<double>& cache, const SymmetricState<double>& original,
                       const SymmetricState<double>& perturbed, int steps) {
  const int n = cache.qubits();
  if (original.qubits() != n || perturbed.qubits() != n) {
    throw std::invalid_argument("evolve_pair: states do not match the cache dimension");
  }
  if (steps < 0) throw std::invalid_argument("evolve_pair: steps must be >= 0");
  MatrixXc<double> states(n + 1, 2);
  states.col(0) = original.amplitudes();
  states.col(1) = perturbed.amplitudes();

  PairSeries series;
  series.distance.reserve(steps + 1);
  series.entropy.reserve(steps + 1);
  series.fidelity.reserve(steps + 1);
  for (int t = 0;; ++t) {
    const auto a = column_state(n, states, 0);
    const auto b = column_state(n, states, 1);
    const auto rho = reduced_single_qubit(a);
    series.distance.push_back(n * trace_distance(rho, reduced_single_qubit(b)));
    series.entropy.push_back(linear_entropy(rho));
    series.fidelity.push_back(std::abs(states.col(0).dot(states.col(1))));
    if (t == steps) break;
    cache.apply(states);
  }
  return series;
}

double DistanceCurve::max_fidelity_drift() const {
  double drift = 0;
  for (const auto& r : runs) drift = std::max(drift, r.fidelity_drift);
  return drift;
}

DistanceCurve averaged_distance_curve(const KickedTopConfig<double>& config, const EnsembleConfig& ensemble,
                                      int steps, int threads) {
  ensemble.validate();
  if (steps < 1) throw std::invalid_argument("averaged_distance_curve: steps must be >= 1");
  const FloquetCache<double> cache = build_cache(config);

  const auto runs = static_cast<std::size_t>(ensemble.runs);
  std::vector<RunSample> samples(runs);
  parallel_for(runs, threads, [&](std::size_t i) { samples[i] = sample_run(cache, ensemble, i, steps); });

  // Fixed-order reduction over runs.
  DistanceCurve curve;
  curve.samples = ensemble.runs;
  const double count = static_cast<double>(runs);
  for (int t = 0; t <= steps; ++t) {
    double d_sum = 0;
    double s_sum = 0;
    for (const auto& s : samples) {
      d_sum += s.series.distance[t];
      s_sum += s.series.entropy[t];
    }
    const double d_mean = d_sum / count;
    double sq = 0;
    for (const auto& s : samples) sq += (s.series.distance[t] - d_mean) * (s.series.distance[t] - d_mean);
    curve.d_mean.push_back(d_mean);
    curve.d_sem.push_back(runs > 1 ? std::sqrt(sq / (count - 1) / count) : 0.0);
    curve.s_mean.push_back(s_sum / count);
  }
  curve.runs.reserve(runs);
  for (auto& s : samples) curve.runs.push_back(s.record);
  return curve;
}

std::vector<double> entropy_curve(const KickedTopConfig<double>& config, const EnsembleConfig& ensemble, int steps,
                                  int threads) {
  ensemble.validate();
  if (steps < 1) throw std::invalid_argument("entropy_curve: steps must be >= 1");
  const FloquetCache<double> cache = build_cache(config);
  const int n = cache.qubits();

  const auto runs = static_cast<std::size_t>(ensemble.runs);
  std::vector<std::vector<double>> per_run(runs);
  parallel_for(runs, threads, [&](std::size_t i) {
    SeedStream stream = derive_run_seed(ensemble.master_seed, i);
    VectorXc<double> amps = coherent_state(n, sample_initial(stream)).amplitudes();
    auto& out = per_run[i];
    for (int t = 0;; ++t) {
      out.push_back(linear_entropy(reduced_single_qubit(SymmetricState<double>(n, amps))));
      if (t == steps) break;
      cache.apply(amps);
    }
  });

  std::vector<double> mean(static_cast<std::size_t>(steps) + 1, 0.0);
  for (int t = 0; t <= steps; ++t) {
    for (const auto& r : per_run) mean[t] += r[t];
    mean[t] /= static_cast<double>(runs);
  }
  return mean;
}

PeakEstimate locate_peak(std::span<const double> curve) {
  if (curve.empty()) throw std::invalid_argument("locate_peak: empty curve");
  PeakEstimate peak;
  peak.index = static_cast<int>(std::max_element(curve.begin(), curve.end()) - curve.begin());
  peak.height = curve[peak.index];
  peak.time = peak.index;
  const int last = static_cast<int>(curve.size()) - 1;
  peak.at_edge = peak.index == 0 || peak.index == last;
  if (!peak.at_edge) {
    const double left = curve[peak.index - 1];
    const double right = curve[peak.index + 1];
    const double curvature = left - 2 * peak.height + right;
    if (curvature < 0) peak.time += 0.5 * (left - right) / curvature;
  }
  return peak;
}

int first_crossing(std::span<const double> curve, double level) {
  for (std::size_t t = 0; t < curve.size(); ++t) {
    if (curve[t] >= level) return static_cast<int>(t);
  }
  return -1;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: x and y lengths differ");
  if (x.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
  const double count = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / count;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / count;
  double sxx = 0;
  double sxy = 0;
  double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_line: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // With an intercept, SS_res = syy - sxy^2/sxx, so R^2 = sxy^2 / (sxx syy).
  fit.r_squared = syy == 0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

std::string_view to_string(ScalingModel model) { return model == ScalingModel::Log ? "log" : "sqrt"; }

bool EhrenfestScan::any_peak_at_edge() const {
  return std::any_of(points.begin(), points.end(), [](const auto& p) { return p.peak.at_edge; });
}

int default_window(double alpha, int n) {
  return alpha > 3 ? 50 : static_cast<int>(std::ceil(4 * std::sqrt(static_cast<double>(n))));
}

EhrenfestScan ehrenfest_scan(double alpha, double beta, const std::vector<int>& n_list,
                             const EnsembleConfig& ensemble, std::optional<int> steps, int threads) {
  std::vector<int> sorted = n_list;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.size() < 2) {
    throw std::invalid_argument("ehrenfest_scan: need at least two distinct qubit counts");
  }
  if (sorted.front() < 2) throw std::invalid_argument("ehrenfest_scan: every n must be >= 2");

  EhrenfestScan scan;
  scan.alpha = alpha;
  std::vector<double> log_n;
  std::vector<double> sqrt_n;
  std::vector<double> t_e;
  for (int n : n_list) {
    EhrenfestPoint point;
    point.n = n;
    point.steps = steps.value_or(default_window(alpha, n));
    point.curve = averaged_distance_curve({n, alpha, beta}, ensemble, point.steps, threads);
    point.peak = locate_peak(point.curve.d_mean);
    log_n.push_back(std::log(static_cast<double>(n)));
    sqrt_n.push_back(std::sqrt(static_cast<double>(n)));
    t_e.push_back(point.peak.time);
    scan.points.push_back(std::move(point));
  }
  scan.log_fit = fit_line(log_n, t_e);
  scan.sqrt_fit = fit_line(sqrt_n, t_e);
  scan.preferred = scan.log_fit.r_squared > scan.sqrt_fit.r_squared ? ScalingModel::Log : ScalingModel::Sqrt;
  return scan;
}

TransitionRecord transition_compare(const KickedTopConfig<double>& config, const BlochAngles& initial,
                                    const PerturbationSpec& perturbation, int steps) {
  if (steps < 0) throw std::invalid_argument("transition_compare: steps must be >= 0");
  TransitionRecord record;
  record.initial = initial;
  record.perturbation = perturbation;
  record.perturbed = perturb(initial, perturbation);
  const FloquetCache<double> cache = build_cache(config);
  record.quantum = evolve_pair(cache, coherent_state(config.n, initial), coherent_state(config.n, record.perturbed),
                               steps);
  const ClassicalSpin<double> r0 = quantum_to_classical(initial.theta, initial.phi);
  record.classical = classical_orbit(r0, config.alpha, steps);
  record.probe = divergence_probe(r0, config.alpha);
  record.lyapunov = finite_time_lyapunov(r0, config.alpha);
  return record;
}

ReferenceConditions find_reference_conditions(double alpha, double angle, std::uint64_t seed, int window,
                                              int polar_points, int azimuth_points) {
  if (polar_points < 2 || azimuth_points < 1) throw std::invalid_argument("find_reference_conditions: grid too small");
  if (window < 1) throw std::invalid_argument("find_reference_conditions: window must be >= 1");
  if (!(angle > 0)) throw std::invalid_argument("find_reference_conditions: perturbation angle must be > 0");
  constexpr double margin = 0.05;
  ReferenceConditions out;
  bool have_regular = false;
  bool have_chaotic = false;
  double chaotic_separation = 0;
  std::uint64_t index = 0;
  for (int i = 0; i < polar_points; ++i) {
    const double theta = margin + i * (pi_v<double> - 2 * margin) / (polar_points - 1);
    for (int j = 0; j < azimuth_points; ++j, ++index) {
      const BlochAngles initial{theta, 2 * pi_v<double> * j / azimuth_points};
      const auto r0 = quantum_to_classical(initial.theta, initial.phi);
      const bool chaotic = divergence_probe(r0, alpha).chaotic;
      ++out.grid_size;

      SeedStream stream = derive_run_seed(seed, index);
      const PerturbationSpec spec{sample_axis(stream, AxisMode::Perpendicular, initial), angle};
      const BlochAngles partner = perturb(initial, spec);
      ClassicalSpin<double> a = r0;
      ClassicalSpin<double> b = quantum_to_classical(partner.theta, partner.phi);
      const double start = angle_between(a, b);
      double max_separation = start;
      int crossing = -1;
      double at_crossing = 0;
      for (int t = 1; t <= window; ++t) {
        a = classical_step(a, alpha);
        b = classical_step(b, alpha);
        const double sep = angle_between(a, b);
        max_separation = std::max(max_separation, sep);
        if (crossing < 0 && sep >= 10 * start) {
          crossing = t;
          at_crossing = sep;
        }
      }

      if (chaotic) {
        ++out.chaotic_count;
        if (crossing < 0) continue;
        const bool better = !have_chaotic || crossing < out.chaotic_crossing_step ||
                            (crossing == out.chaotic_crossing_step && at_crossing > chaotic_separation);
        if (better) {
          out.chaotic = initial;
          out.chaotic_perturbation = spec;
          out.chaotic_crossing_step = crossing;
          chaotic_separation = at_crossing;
          have_chaotic = true;
        }
      } else if (!have_regular || max_separation < out.regular_max_separation) {
        out.regular = initial;
        out.regular_perturbation = spec;
        out.regular_max_separation = max_separation;
        have_regular = true;
      }
    }
  }
  if (!have_regular || !have_chaotic) {
    throw std::runtime_error("find_reference_conditions: grid lacks a regular or a chaotic point");
  }
  return out;
}

}  // namespace qhd
