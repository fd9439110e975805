#pragma once

// Reproducible pipelines built on the kicked-top core:
//  - ensemble-averaged distance and entropy curves,
//  - Ehrenfest-time scans with log / sqrt scaling fits,
//  - single-trajectory comparison against the classical map.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qhd/classical_top.hpp"
#include "qhd/kicked_top.hpp"
#include "qhd/perturbation.hpp"

namespace qhd {

/// QHD (single-qubit partition), linear entropy of the unperturbed state,
/// and global fidelity |<psi_t|psi'_t>| for t = 0..steps.
struct PairSeries {
  std::vector<double> distance;
  std::vector<double> entropy;
  std::vector<double> fidelity;

  /// max_t |F_t - F_0|.
  double fidelity_drift() const;
};

PairSeries evolve_pair(const FloquetCache<double>& cache, const SymmetricState<double>& original,
                       const SymmetricState<double>& perturbed, int steps);

struct RunRecord {
  BlochAngles initial;
  BlochAngles perturbed;
  Vector3<double> axis;
  double initial_distance = 0;
  double peak_distance = 0;
  double fidelity_drift = 0;
};

struct DistanceCurve {
  std::vector<double> d_mean;
  std::vector<double> d_sem;
  std::vector<double> s_mean;
  int samples = 0;
  std::vector<RunRecord> runs;

  int steps() const { return static_cast<int>(d_mean.size()) - 1; }
  double max_fidelity_drift() const;
};

/// One perturbed pair per run, drawn from derive_run_seed(master_seed, run).
/// The result is bit-identical for any thread count.
DistanceCurve averaged_distance_curve(const KickedTopConfig<double>& config, const EnsembleConfig& ensemble,
                                      int steps, int threads = 1);

/// Ensemble mean of the unperturbed single-qubit linear entropy.
std::vector<double> entropy_curve(const KickedTopConfig<double>& config, const EnsembleConfig& ensemble, int steps,
                                  int threads = 1);

struct PeakEstimate {
  double time = 0;  // argmax refined by a 3-point parabola
  double height = 0;
  int index = 0;
  bool at_edge = false;
};

PeakEstimate locate_peak(std::span<const double> curve);

/// First t with curve[t] >= level, or -1.
int first_crossing(std::span<const double> curve, double level);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

/// Least squares y = slope x + intercept. Needs two or more distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

enum class ScalingModel { Log, Sqrt };
std::string_view to_string(ScalingModel model);

struct EhrenfestPoint {
  int n = 0;
  int steps = 0;
  PeakEstimate peak;
  DistanceCurve curve;
};

struct EhrenfestScan {
  double alpha = 0;
  std::vector<EhrenfestPoint> points;
  LinearFit log_fit;   // t_E against ln n
  LinearFit sqrt_fit;  // t_E against sqrt n
  ScalingModel preferred = ScalingModel::Log;

  bool any_peak_at_edge() const;
};

/// 50 steps for chaotic kicks (alpha > 3), ceil(4 sqrt n) otherwise.
int default_window(double alpha, int n);

/// Requires at least two distinct n, each >= 2.
EhrenfestScan ehrenfest_scan(double alpha, double beta, const std::vector<int>& n_list,
                             const EnsembleConfig& ensemble, std::optional<int> steps = std::nullopt,
                             int threads = 1);

struct TransitionRecord {
  BlochAngles initial;
  BlochAngles perturbed;
  PerturbationSpec perturbation;
  PairSeries quantum;
  std::vector<ClassicalSpin<double>> classical;
  DivergenceProbe<double> probe;
  double lyapunov = 0;
};

TransitionRecord transition_compare(const KickedTopConfig<double>& config, const BlochAngles& initial,
                                    const PerturbationSpec& perturbation, int steps);

struct ReferenceConditions {
  BlochAngles regular;
  BlochAngles chaotic;
  PerturbationSpec regular_perturbation;
  PerturbationSpec chaotic_perturbation;
  double regular_max_separation = 0;  // max angle between the classical images of the regular pair
  int chaotic_crossing_step = -1;     // first step the chaotic pair's images sit 10x further apart
  int chaotic_count = 0;
  int grid_size = 0;
};

/// Scans a (theta, phi) grid. Each point is labeled by divergence_probe and
/// gets a perpendicular perturbation axis from derive_run_seed(seed, index).
/// The classical images of the perturbed pair are then iterated for `window`
/// steps: the regular pick is the regular point whose images stay closest,
/// the chaotic pick the chaotic point whose images first separate to 10x
/// their initial angle (ties: larger separation at that step).
ReferenceConditions find_reference_conditions(double alpha, double angle, std::uint64_t seed, int window = 100,
                                              int polar_points = 24, int azimuth_points = 48);

}  // namespace qhd
