#include "qhd/perturbation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qhd/classical_top.hpp"

namespace qhd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double wrap_two_pi(double phi) {
  constexpr double two_pi = 2 * pi_v<double>;
  phi = std::fmod(phi, two_pi);
  if (phi < 0) phi += two_pi;
  return phi >= two_pi ? 0.0 : phi;
}

}  // namespace

std::string_view to_string(AxisMode mode) {
  return mode == AxisMode::Perpendicular ? "perp" : "sphere";
}

AxisMode parse_axis_mode(std::string_view text) {
  if (text == "perp") return AxisMode::Perpendicular;
  if (text == "sphere") return AxisMode::Sphere;
  throw std::invalid_argument("unknown axis mode '" + std::string(text) + "' (expected perp|sphere)");
}

void PerturbationSpec::validate() const {
  if (std::abs(axis.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("PerturbationSpec: axis must be a unit vector");
  }
  if (!std::isfinite(angle)) throw std::invalid_argument("PerturbationSpec: angle must be finite");
}

void EnsembleConfig::validate() const {
  if (runs < 1) throw std::invalid_argument("EnsembleConfig: runs must be >= 1");
  if (!std::isfinite(angle)) throw std::invalid_argument("EnsembleConfig: angle must be finite");
}

std::uint64_t run_seed_value(std::uint64_t master_seed, std::uint64_t run_index) {
  // Counter-mode split: independent of any other run or of scheduling.
  return splitmix64(splitmix64(master_seed) ^ splitmix64(run_index + 0x632BE59BD9B4E019ULL));
}

SeedStream derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) {
  return SeedStream(run_seed_value(master_seed, run_index));
}

BlochAngles sample_initial(SeedStream& stream) {
  const double cos_theta = 1.0 - 2.0 * stream.uniform();
  const double phi = 2.0 * pi_v<double> * stream.uniform();
  return {std::acos(cos_theta), phi};
}

Spinor<double> spinor_from_angles(const BlochAngles& angles) {
  Spinor<double> chi;
  chi << std::complex<double>(std::sin(angles.theta / 2)), std::polar(std::cos(angles.theta / 2), angles.phi);
  return chi;
}

BlochAngles angles_from_spinor(const Spinor<double>& chi) {
  const double r0 = std::abs(chi[0]);
  const double r1 = std::abs(chi[1]);
  const double theta = 2.0 * std::atan2(r0, r1);
  double phi = 0;
  if (r0 > 0 && r1 > 0) phi = wrap_two_pi(std::arg(chi[1]) - std::arg(chi[0]));
  return {theta, phi};
}

Vector3<double> qubit_bloch_vector(const Spinor<double>& chi) {
  const std::complex<double> coherence = std::conj(chi[0]) * chi[1];
  return {2 * coherence.real(), 2 * coherence.imag(), std::norm(chi[0]) - std::norm(chi[1])};
}

Matrix2c<double> rotation_matrix(const PerturbationSpec& spec) {
  const Vector3<double>& m = spec.axis;
  const std::complex<double> i(0, 1);
  Matrix2c<double> sigma_m;
  sigma_m << m.z(), std::complex<double>(m.x(), -m.y()), std::complex<double>(m.x(), m.y()), -m.z();
  return std::cos(spec.angle / 2) * Matrix2c<double>::Identity() + i * std::sin(spec.angle / 2) * sigma_m;
}

Vector3<double> sample_axis(SeedStream& stream, AxisMode mode, const BlochAngles& initial) {
  if (mode == AxisMode::Sphere) {
    const double z = 1.0 - 2.0 * stream.uniform();
    const double phi = 2.0 * pi_v<double> * stream.uniform();
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {rho * std::cos(phi), rho * std::sin(phi), z};
  }
  const Vector3<double> b = qubit_bloch_vector(spinor_from_angles(initial)).normalized();
  const Vector3<double> e1 = orthogonal_direction(b);
  const Vector3<double> e2 = b.cross(e1);
  const double psi = 2.0 * pi_v<double> * stream.uniform();
  return (std::cos(psi) * e1 + std::sin(psi) * e2).normalized();
}

BlochAngles perturb(const BlochAngles& initial, const PerturbationSpec& spec) {
  spec.validate();
  if (spec.angle == 0) return initial;
  return angles_from_spinor(rotation_matrix(spec) * spinor_from_angles(initial));
}

SymmetricState<double> coherent_state(int n, const BlochAngles& angles) {
  return coherent_state<double>(n, spinor_from_angles(angles));
}

}  // namespace qhd
