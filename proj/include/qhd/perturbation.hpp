#pragma once

// Seeded sampling of initial coherent states and of the single-qubit
// rotation that defines the perturbed partner trajectory.
//
// Initial conditions are carried as BlochAngles in the frame of the classical
// map (see classical_top.hpp): polar angle theta from the all-|1> pole. The
// rotation axis of a PerturbationSpec is in the qubit frame, i.e. m couples
// to (sigma_x, sigma_y, sigma_z).

#include <cstdint>
#include <random>
#include <string_view>

#include "qhd/symmetric_state.hpp"
#include "qhd/types.hpp"

namespace qhd {

struct BlochAngles {
  double theta = 0;  // [0, pi]
  double phi = 0;    // [0, 2 pi)
};

enum class AxisMode { Perpendicular, Sphere };

std::string_view to_string(AxisMode mode);
AxisMode parse_axis_mode(std::string_view text);

struct PerturbationSpec {
  Vector3<double> axis = Vector3<double>::UnitX();
  double angle = 0;

  void validate() const;
};

struct EnsembleConfig {
  std::uint64_t master_seed = 0;
  int runs = 100;
  double angle = 0.01;
  AxisMode axis = AxisMode::Perpendicular;

  void validate() const;
};

/// A per-run random stream. Doubles are built from the top 53 bits of
/// mt19937_64 output, so sequences do not depend on the standard library's
/// distribution implementations.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Stream for run `run_index` of an ensemble; depends only on its arguments.
SeedStream derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index);

/// The 64-bit seed behind derive_run_seed.
std::uint64_t run_seed_value(std::uint64_t master_seed, std::uint64_t run_index);

/// Uniform direction on the sphere: cos(theta) uniform on [-1, 1].
BlochAngles sample_initial(SeedStream& stream);

/// Qubit spinor sin(theta/2)|0> + e^{i phi} cos(theta/2)|1>.
Spinor<double> spinor_from_angles(const BlochAngles& angles);

/// Inverse of spinor_from_angles up to a global phase.
BlochAngles angles_from_spinor(const Spinor<double>& chi);

/// (<sigma_x>, <sigma_y>, <sigma_z>) of a normalized spinor.
Vector3<double> qubit_bloch_vector(const Spinor<double>& chi);

/// R = exp(i (angle/2) m . sigma).
Matrix2c<double> rotation_matrix(const PerturbationSpec& spec);

/// Random rotation axis. Perpendicular mode draws uniformly from the unit
/// circle orthogonal to the qubit Bloch vector of `initial`; sphere mode
/// draws uniformly from the sphere.
Vector3<double> sample_axis(SeedStream& stream, AxisMode mode, const BlochAngles& initial);

/// Angles of R|chi> for |chi> = spinor_from_angles(initial).
BlochAngles perturb(const BlochAngles& initial, const PerturbationSpec& spec);

/// |chi>^(x)n for the given angles.
SymmetricState<double> coherent_state(int n, const BlochAngles& angles);

}  // namespace qhd
