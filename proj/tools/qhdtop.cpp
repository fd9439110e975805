// qhdtop: command-line front end for the kicked-top distance experiments.
//
// Every command writes <prefix>.csv or <prefix>.json (deterministic given the
// flags) plus <prefix>.manifest.json with the config echo, seeds and timing.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qhd/experiments.hpp"
#include "qhd/io.hpp"
#include "qhd/parallel.hpp"
#ifdef QHD_HAS_ORACLE
#include "qhd/oracle.hpp"
#include "qhd/validation.hpp"
#endif

#ifndef QHD_VERSION
#define QHD_VERSION "0.0.0"
#endif

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Flag errors detected after CLI11 parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string out;
  std::string format = "csv";
  std::optional<int> threads;
};

int resolve_threads(const Common& common) {
  const int threads = common.threads.value_or(qhd::default_thread_count());
  if (threads < 1) throw UsageError("--threads must be >= 1");
  return threads;
}

double angle_flag(const std::string& text, const char* flag) {
  try {
    return qhd::parse_angle(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::string file_name(const std::filesystem::path& p) { return p.filename().string(); }

std::filesystem::path with_suffix(const std::string& prefix, const std::string& suffix) {
  return std::filesystem::path(prefix + suffix);
}

ordered_json angles_json(const qhd::BlochAngles& a) { return {{"theta", a.theta}, {"phi", a.phi}}; }

ordered_json fit_json(const qhd::LinearFit& fit) {
  return {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}};
}

void write_json(const std::filesystem::path& path, const ordered_json& doc) {
  qhd::write_text_file(path, doc.dump(2) + "\n");
}

// Manifest sidecar. Timing and thread count differ between runs by design;
// the data files do not.
void write_manifest(const std::string& prefix, const std::string& command, ordered_json config,
                    ordered_json seeds, ordered_json summary, const std::vector<std::filesystem::path>& outputs,
                    int threads, Clock::time_point start) {
  ordered_json files = ordered_json::array();
  for (const auto& p : outputs) files.push_back(file_name(p));
  ordered_json manifest;
  manifest["tool"] = "qhdtop";
  manifest["version"] = QHD_VERSION;
  manifest["command"] = command;
  manifest["config"] = std::move(config);
  manifest["seeds"] = std::move(seeds);
  manifest["summary"] = std::move(summary);
  manifest["outputs"] = std::move(files);
  manifest["calibrations"] =
      "step windows, the entropy marker S >= 1/4, the classical chaos proxy thresholds and the peak "
      "estimator are implementer calibrations";
  manifest["threads"] = threads;
  manifest["wall_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  write_json(with_suffix(prefix, ".manifest.json"), manifest);
}

ordered_json ensemble_seeds(const qhd::EnsembleConfig& ensemble) {
  ordered_json runs = ordered_json::array();
  for (int i = 0; i < ensemble.runs; ++i) runs.push_back(qhd::run_seed_value(ensemble.master_seed, i));
  return {{"master_seed", ensemble.master_seed}, {"run_seeds", runs}};
}

// ---- distance-curve ------------------------------------------------------

struct CurveFlags {
  int n = 0;
  std::string alpha;
  std::string beta = "pi/2";
  std::string phi = "0.01";
  int steps = 0;
  int runs = 100;
  std::uint64_t seed = 1;
  std::string axis = "perp";
};

int run_distance_curve(const CurveFlags& f, const Common& common) {
  const auto start = Clock::now();
  const int threads = resolve_threads(common);
  const qhd::KickedTopConfig<double> config{f.n, angle_flag(f.alpha, "--alpha"), angle_flag(f.beta, "--beta")};
  qhd::EnsembleConfig ensemble{f.seed, f.runs, angle_flag(f.phi, "--phi"), qhd::parse_axis_mode(f.axis)};
  config.validate();
  ensemble.validate();
  if (f.steps < 1) throw UsageError("--steps must be >= 1");

  const auto curve = qhd::averaged_distance_curve(config, ensemble, f.steps, threads);
  const std::string manifest_name = file_name(with_suffix(common.out, ".manifest.json"));
  std::filesystem::path data;
  if (common.format == "csv") {
    data = with_suffix(common.out, ".csv");
    qhd::write_text_file(data, qhd::distance_curve_csv(curve));
  } else {
    data = with_suffix(common.out, ".json");
    ordered_json doc;
    doc["manifest"] = manifest_name;
    doc["samples"] = curve.samples;
    doc["t"] = ordered_json::array();
    for (int t = 0; t <= curve.steps(); ++t) doc["t"].push_back(t);
    doc["D_mean"] = curve.d_mean;
    doc["D_sem"] = curve.d_sem;
    doc["S_mean"] = curve.s_mean;
    write_json(data, doc);
  }

  const auto peak = qhd::locate_peak(curve.d_mean);
  ordered_json summary{{"D0", curve.d_mean.front()},
                       {"peak_time", peak.time},
                       {"peak_height", peak.height},
                       {"peak_at_edge", peak.at_edge},
                       {"entropy_crossing_quarter", qhd::first_crossing(curve.s_mean, 0.25)},
                       {"max_fidelity_drift", curve.max_fidelity_drift()}};
  ordered_json echo{{"n", config.n},       {"alpha", config.alpha}, {"beta", config.beta},
                    {"phi", ensemble.angle}, {"axis", qhd::to_string(ensemble.axis)}, {"steps", f.steps},
                    {"runs", ensemble.runs}, {"master_seed", ensemble.master_seed}, {"format", common.format}};
  write_manifest(common.out, "distance-curve", echo, ensemble_seeds(ensemble), summary, {data}, threads, start);
  std::cout << fmt::format("wrote {} (D0 = {}, peak t = {})\n", data.string(), qhd::format_double(curve.d_mean[0]),
                           qhd::format_double(peak.time));
  return 0;
}

// ---- ehrenfest -----------------------------------------------------------

struct EhrenfestFlags {
  std::string n_list;
  std::string alpha;
  std::string beta = "pi/2";
  std::string phi = "0.01";
  std::optional<int> steps;
  int runs = 100;
  std::uint64_t seed = 1;
  std::string axis = "perp";
};

int run_ehrenfest(const EhrenfestFlags& f, const Common& common) {
  const auto start = Clock::now();
  const int threads = resolve_threads(common);
  std::vector<int> n_list;
  try {
    n_list = qhd::parse_int_list(f.n_list);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--n-list: ") + e.what());
  }
  const double alpha = angle_flag(f.alpha, "--alpha");
  const double beta = angle_flag(f.beta, "--beta");
  qhd::EnsembleConfig ensemble{f.seed, f.runs, angle_flag(f.phi, "--phi"), qhd::parse_axis_mode(f.axis)};
  ensemble.validate();
  if (f.steps && *f.steps < 1) throw UsageError("--steps must be >= 1");

  const auto scan = qhd::ehrenfest_scan(alpha, beta, n_list, ensemble, f.steps, threads);
  const std::string manifest_name = file_name(with_suffix(common.out, ".manifest.json"));
  std::vector<std::filesystem::path> outputs;

  ordered_json table = ordered_json::array();
  for (const auto& p : scan.points) {
    table.push_back({{"n", p.n}, {"steps", p.steps}, {"t_E", p.peak.time}, {"peak_height", p.peak.height},
                     {"at_edge", p.peak.at_edge}});
  }
  ordered_json doc;
  doc["manifest"] = manifest_name;
  doc["alpha"] = scan.alpha;
  doc["points"] = table;
  doc["log_fit"] = fit_json(scan.log_fit);
  doc["sqrt_fit"] = fit_json(scan.sqrt_fit);
  doc["preferred_model"] = qhd::to_string(scan.preferred);
  doc["peak_at_edge"] = scan.any_peak_at_edge();
  const auto summary_path = with_suffix(common.out, ".json");
  write_json(summary_path, doc);
  outputs.push_back(summary_path);
  if (common.format == "csv") {
    const auto table_path = with_suffix(common.out, ".csv");
    qhd::write_text_file(table_path, qhd::ehrenfest_csv(scan));
    outputs.push_back(table_path);
    for (const auto& p : scan.points) {
      const auto curve_path = with_suffix(common.out, fmt::format(".n{}.csv", p.n));
      qhd::write_text_file(curve_path, qhd::distance_curve_csv(p.curve));
      outputs.push_back(curve_path);
    }
  }
  if (scan.any_peak_at_edge()) {
    std::cerr << "warning: a distance peak sits on the edge of its window; widen --steps\n";
  }

  ordered_json echo{{"n_list", n_list}, {"alpha", alpha}, {"beta", beta}, {"phi", ensemble.angle},
                    {"axis", qhd::to_string(ensemble.axis)}, {"runs", ensemble.runs},
                    {"master_seed", ensemble.master_seed}, {"format", common.format}};
  echo["steps"] = f.steps ? ordered_json(*f.steps) : ordered_json("default window");
  ordered_json summary{{"preferred_model", qhd::to_string(scan.preferred)},
                       {"log_r_squared", scan.log_fit.r_squared},
                       {"sqrt_r_squared", scan.sqrt_fit.r_squared}};
  write_manifest(common.out, "ehrenfest", echo, ensemble_seeds(ensemble), summary, outputs, threads, start);
  std::cout << fmt::format("preferred model: {} (R2 log {}, sqrt {})\n", qhd::to_string(scan.preferred),
                           qhd::format_double(scan.log_fit.r_squared), qhd::format_double(scan.sqrt_fit.r_squared));
  return 0;
}

// ---- transition ----------------------------------------------------------

struct TransitionFlags {
  int n = 0;
  std::string alpha;
  std::string beta = "pi/2";
  std::string phi = "0.01";
  std::vector<std::string> theta;
  std::vector<std::string> phi_angle;
  bool automatic = false;
  int steps = 100;
  std::uint64_t seed = 1;
};

int run_transition(const TransitionFlags& f, const Common& common) {
  const auto start = Clock::now();
  const qhd::KickedTopConfig<double> config{f.n, angle_flag(f.alpha, "--alpha"), angle_flag(f.beta, "--beta")};
  config.validate();
  const double angle = angle_flag(f.phi, "--phi");
  if (f.steps < 0) throw UsageError("--steps must be >= 0");
  if (f.theta.size() != f.phi_angle.size()) throw UsageError("--theta and --phi-angle must be given in pairs");

  std::vector<qhd::BlochAngles> initials;
  std::vector<qhd::PerturbationSpec> specs;
  std::vector<std::string> labels;
  ordered_json reference;
  if (f.automatic) {
    if (!f.theta.empty()) throw UsageError("--auto excludes explicit --theta/--phi-angle");
    const auto ref = qhd::find_reference_conditions(config.alpha, angle, f.seed, std::max(1, f.steps));
    initials = {ref.regular, ref.chaotic};
    specs = {ref.regular_perturbation, ref.chaotic_perturbation};
    labels = {"regular", "chaotic"};
    reference = {{"grid_size", ref.grid_size},
                 {"chaotic_count", ref.chaotic_count},
                 {"regular_max_separation", ref.regular_max_separation},
                 {"chaotic_crossing_step", ref.chaotic_crossing_step}};
  } else {
    if (f.theta.empty()) throw UsageError("give at least one --theta/--phi-angle pair, or --auto");
    for (std::size_t i = 0; i < f.theta.size(); ++i) {
      const qhd::BlochAngles a{angle_flag(f.theta[i], "--theta"), angle_flag(f.phi_angle[i], "--phi-angle")};
      if (a.theta < 0 || a.theta > qhd::pi_v<double>) throw UsageError("--theta must lie in [0, pi]");
      initials.push_back(a);
      qhd::SeedStream stream = qhd::derive_run_seed(f.seed, i);
      specs.push_back({qhd::sample_axis(stream, qhd::AxisMode::Perpendicular, a), angle});
      labels.push_back(std::to_string(i));
    }
  }

  std::vector<std::filesystem::path> outputs;
  ordered_json records = ordered_json::array();
  for (std::size_t i = 0; i < initials.size(); ++i) {
    const qhd::PerturbationSpec& spec = specs[i];
    const auto rec = qhd::transition_compare(config, initials[i], spec, f.steps);

    const auto quantum_path = with_suffix(common.out, ".quantum." + labels[i] + ".csv");
    const auto classical_path = with_suffix(common.out, ".classical." + labels[i] + ".csv");
    qhd::write_text_file(quantum_path, qhd::pair_series_csv(rec.quantum));
    qhd::write_text_file(classical_path, qhd::classical_csv(rec.classical));
    outputs.push_back(quantum_path);
    outputs.push_back(classical_path);

    const double d_max = *std::max_element(rec.quantum.distance.begin(), rec.quantum.distance.end());
    records.push_back({{"label", labels[i]},
                       {"initial", angles_json(rec.initial)},
                       {"perturbed", angles_json(rec.perturbed)},
                       {"axis", {spec.axis.x(), spec.axis.y(), spec.axis.z()}},
                       {"classical_chaotic", rec.probe.chaotic},
                       {"crossing_step", rec.probe.crossing_step},
                       {"lyapunov", rec.lyapunov},
                       {"D0", rec.quantum.distance.front()},
                       {"D_max", d_max},
                       {"fidelity_drift", rec.quantum.fidelity_drift()},
                       {"quantum_csv", file_name(quantum_path)},
                       {"classical_csv", file_name(classical_path)}});
  }
  ordered_json doc;
  doc["manifest"] = file_name(with_suffix(common.out, ".manifest.json"));
  doc["records"] = records;
  if (f.automatic) doc["reference_search"] = reference;
  const auto summary_path = with_suffix(common.out, ".json");
  write_json(summary_path, doc);
  outputs.push_back(summary_path);

  ordered_json echo{{"n", config.n},       {"alpha", config.alpha}, {"beta", config.beta}, {"phi", angle},
                    {"axis", "perp"},       {"steps", f.steps},      {"auto", f.automatic},
                    {"master_seed", f.seed}};
  const ordered_json seeds{{"master_seed", f.seed},
                           {"axis_streams", f.automatic ? "derive_run_seed(master_seed, grid index)"
                                                        : "derive_run_seed(master_seed, condition index)"}};
  write_manifest(common.out, "transition", echo, seeds, records,
                 outputs, 1, start);
  for (const auto& r : records) {
    std::cout << fmt::format("{}: classical {} D_max = {}\n", r["label"].get<std::string>(),
                             r["classical_chaotic"].get<bool>() ? "chaotic" : "regular",
                             qhd::format_double(r["D_max"].get<double>()));
  }
  return 0;
}

// ---- oracle-validate -----------------------------------------------------

#ifdef QHD_HAS_ORACLE
int run_oracle_validate(const qhd::ValidationOptions& options) {
  if (options.n < 2 || options.n > qhd::oracle::kMaxPartitionQubits) {
    throw UsageError(fmt::format("--n must lie in [2, {}] for the full-space oracle", qhd::oracle::kMaxPartitionQubits));
  }
  const auto report = qhd::run_oracle_battery(options);
  for (const auto& c : report.checks) {
    std::cout << fmt::format("{} {:<48} residual {:.3e} (tol {:.0e})\n", c.passed ? "ok  " : "FAIL", c.name,
                             c.residual, c.tolerance);
  }
  std::cout << (report.all_passed() ? "all checks passed\n" : "some checks failed\n");
  return report.all_passed() ? 0 : 1;
}
#endif

template <typename Fn>
int guarded(const CLI::App* cmd, Fn&& fn) {
  try {
    return fn();
  } catch (const qhd::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n\n" << cmd->help();
    return kExitUsage;
  }
}

void add_common(CLI::App* cmd, Common& common, const std::string& default_prefix) {
  common.out = default_prefix;
  cmd->add_option("--out", common.out, "Output file prefix")->capture_default_str();
  cmd->add_option("--format", common.format, "Data format")->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--threads", common.threads, "Worker cap (default: QHD_THREADS, else all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Hamming distance experiments on the kicked top"};
  app.set_version_flag("--version", QHD_VERSION);
  app.set_config("--config", "", "TOML/INI file with flag values");
  app.require_subcommand(1);

  CurveFlags curve;
  Common curve_common;
  auto* dc = app.add_subcommand("distance-curve", "Ensemble-averaged distance and entropy curves");
  dc->add_option("--n", curve.n, "Qubits")->required();
  dc->add_option("--alpha", curve.alpha, "Kick strength")->required();
  dc->add_option("--beta", curve.beta, "Precession angle")->capture_default_str();
  dc->add_option("--phi", curve.phi, "Perturbation angle")->capture_default_str();
  dc->add_option("--steps", curve.steps, "Floquet steps")->required();
  dc->add_option("--runs", curve.runs, "Ensemble size")->capture_default_str();
  dc->add_option("--seed", curve.seed, "Master seed")->capture_default_str();
  dc->add_option("--axis", curve.axis, "Perturbation axis sampling")->check(CLI::IsMember({"perp", "sphere"}))
      ->capture_default_str();
  add_common(dc, curve_common, "distance_curve");

  EhrenfestFlags eh;
  Common eh_common;
  auto* ec = app.add_subcommand("ehrenfest", "Peak-time scaling across qubit counts");
  ec->add_option("--n-list", eh.n_list, "Comma-separated qubit counts")->required();
  ec->add_option("--alpha", eh.alpha, "Kick strength")->required();
  ec->add_option("--beta", eh.beta, "Precession angle")->capture_default_str();
  ec->add_option("--phi", eh.phi, "Perturbation angle")->capture_default_str();
  ec->add_option("--steps", eh.steps, "Window (default: 50 if alpha > 3, else ceil(4 sqrt n))");
  ec->add_option("--runs", eh.runs, "Ensemble size")->capture_default_str();
  ec->add_option("--seed", eh.seed, "Master seed")->capture_default_str();
  ec->add_option("--axis", eh.axis, "Perturbation axis sampling")->check(CLI::IsMember({"perp", "sphere"}))
      ->capture_default_str();
  add_common(ec, eh_common, "ehrenfest");

  TransitionFlags tr;
  Common tr_common;
  auto* tc = app.add_subcommand("transition", "Single pairs against the classical map");
  tc->add_option("--n", tr.n, "Qubits")->required();
  tc->add_option("--alpha", tr.alpha, "Kick strength")->required();
  tc->add_option("--beta", tr.beta, "Precession angle")->capture_default_str();
  tc->add_option("--phi", tr.phi, "Perturbation angle")->capture_default_str();
  tc->add_option("--theta", tr.theta, "Initial polar angle (repeatable)");
  tc->add_option("--phi-angle", tr.phi_angle, "Initial azimuth (repeatable)");
  tc->add_flag("--auto", tr.automatic, "Pick one regular and one chaotic condition from the classical map");
  tc->add_option("--steps", tr.steps, "Floquet steps")->capture_default_str();
  tc->add_option("--seed", tr.seed, "Seed for the perturbation axes")->capture_default_str();
  tc->add_option("--out", tr_common.out, "Output file prefix");
  tr_common.out = "transition";

#ifdef QHD_HAS_ORACLE
  qhd::ValidationOptions val;
  auto* vc = app.add_subcommand("oracle-validate", "Cross-check fast paths against the full-space oracle");
  vc->add_option("--n", val.n, "Qubits")->capture_default_str();
  vc->add_option("--seed", val.seed, "Seed")->capture_default_str();
  vc->add_option("--draws", val.draws, "Random draws")->capture_default_str();
  vc->add_option("--steps", val.steps, "Floquet steps per draw")->capture_default_str();
  vc->add_flag("--corrupt-phase", val.corrupt_phase)->group("");
#endif

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (dc->parsed()) return guarded(dc, [&] { return run_distance_curve(curve, curve_common); });
  if (ec->parsed()) return guarded(ec, [&] { return run_ehrenfest(eh, eh_common); });
  if (tc->parsed()) return guarded(tc, [&] { return run_transition(tr, tr_common); });
#ifdef QHD_HAS_ORACLE
  if (vc->parsed()) return guarded(vc, [&] { return run_oracle_validate(val); });
#endif
  return kExitUsage;
}
