#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qhd/classical_top.hpp"
#include "qhd/perturbation.hpp"
#include "qhd/qhd.hpp"

namespace qhd {
namespace {

TEST(SeedStream, ReplaysIdentically) {
  SeedStream a = derive_run_seed(42, 7);
  SeedStream b = derive_run_seed(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  SeedStream c = derive_run_seed(42, 7);
  SeedStream d = derive_run_seed(42, 7);
  const BlochAngles x = sample_initial(c);
  const BlochAngles y = sample_initial(d);
  EXPECT_EQ(x.theta, y.theta);
  EXPECT_EQ(x.phi, y.phi);
}

TEST(SeedStream, RunIndicesGiveDistinctStreams) {
  std::set<std::uint64_t> seeds;
  std::set<std::uint64_t> first_draws;
  for (std::uint64_t i = 0; i < 100; ++i) {
    seeds.insert(run_seed_value(5, i));
    first_draws.insert(derive_run_seed(5, i).next_u64());
  }
  EXPECT_EQ(seeds.size(), 100u);
  EXPECT_EQ(first_draws.size(), 100u);
  EXPECT_NE(run_seed_value(5, 0), run_seed_value(6, 0));
}

TEST(SampleInitial, UniformOnTheSphere) {
  SeedStream stream(123);
  const int count = 100000;
  double sum = 0;
  for (int i = 0; i < count; ++i) {
    const BlochAngles a = sample_initial(stream);
    ASSERT_GE(a.theta, 0.0);
    ASSERT_LE(a.theta, pi_v<double>);
    ASSERT_GE(a.phi, 0.0);
    ASSERT_LT(a.phi, 2 * pi_v<double>);
    sum += std::cos(a.theta);
  }
  const double sigma = 1 / std::sqrt(3.0 * count);
  EXPECT_LT(std::abs(sum / count), 3 * sigma);
}

TEST(Perturb, ZeroAngleIsIdentity) {
  const BlochAngles a{1.2, 0.4};
  const BlochAngles b = perturb(a, {Vector3<double>(0, 0.6, 0.8), 0.0});
  EXPECT_NEAR(b.theta, a.theta, 1e-14);
  EXPECT_NEAR(b.phi, a.phi, 1e-14);
}

TEST(Perturb, OverlapFormula) {
  SeedStream stream(77);
  for (int rep = 0; rep < 200; ++rep) {
    const BlochAngles a = sample_initial(stream);
    const Vector3<double> m = sample_axis(stream, AxisMode::Sphere, a);
    const double phi = 3 * stream.uniform();
    const Spinor<double> chi = spinor_from_angles(a);
    const Spinor<double> direct = rotation_matrix({m, phi}) * chi;
    const Spinor<double> via_angles = spinor_from_angles(perturb(a, {m, phi}));
    const Vector3<double> k = qubit_bloch_vector(chi);
    const double expected = std::abs(std::complex<double>(std::cos(phi / 2), std::sin(phi / 2) * m.dot(k)));
    EXPECT_NEAR(std::abs(chi.dot(direct)), expected, 1e-12);
    EXPECT_NEAR(std::abs(direct.dot(via_angles)), 1.0, 1e-12);
  }
}

TEST(Perturb, PerpendicularAxisGivesCosHalfAngle) {
  SeedStream stream(8);
  for (int rep = 0; rep < 100; ++rep) {
    const BlochAngles a = sample_initial(stream);
    const Vector3<double> m = sample_axis(stream, AxisMode::Perpendicular, a);
    EXPECT_NEAR(m.norm(), 1.0, 1e-12);
    EXPECT_NEAR(m.dot(qubit_bloch_vector(spinor_from_angles(a))), 0.0, 1e-12);
    const Spinor<double> chi = spinor_from_angles(a);
    EXPECT_NEAR(std::abs(chi.dot(spinor_from_angles(perturb(a, {m, 0.4})))), std::cos(0.2), 1e-12);
  }
}

TEST(Perturb, RotationIsUnitary) {
  const Matrix2c<double> r = rotation_matrix({Vector3<double>(0.48, 0.6, 0.64), 1.3});
  EXPECT_LT((r * r.adjoint() - Matrix2c<double>::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Perturb, RejectsNonUnitAxis) {
  EXPECT_THROW(perturb({1, 1}, {Vector3<double>(1, 1, 0), 0.1}), std::invalid_argument);
  EXPECT_THROW((EnsembleConfig{1, 0}).validate(), std::invalid_argument);
  EXPECT_THROW(parse_axis_mode("cube"), std::invalid_argument);
  EXPECT_EQ(parse_axis_mode(to_string(AxisMode::Sphere)), AxisMode::Sphere);
}

TEST(Angles, SpinorRoundTrip) {
  SeedStream stream(3);
  for (int rep = 0; rep < 100; ++rep) {
    const BlochAngles a = sample_initial(stream);
    const BlochAngles b = angles_from_spinor(std::polar(1.0, 0.3) * spinor_from_angles(a));
    EXPECT_NEAR(b.theta, a.theta, 1e-12);
    EXPECT_NEAR(std::remainder(b.phi - a.phi, 2 * pi_v<double>), 0.0, 1e-12);
  }
}

// Initial distance n sin(phi/2), independent of the state; its linear
// approximation n phi/2 is off by at most a relative phi^2/24.
TEST(InitialDistance, IndependentOfState) {
  const int n = 1000;
  for (double phi : {0.01, 0.1}) {
    SeedStream stream(2);
    for (int rep = 0; rep < 20; ++rep) {
      const BlochAngles a = sample_initial(stream);
      const PerturbationSpec spec{sample_axis(stream, AxisMode::Perpendicular, a), phi};
      const double d = qhd_symmetric_single(coherent_state(n, a), coherent_state(n, perturb(a, spec)));
      EXPECT_NEAR(d, n * std::sin(phi / 2), 1e-9 * n);
      EXPECT_LE(std::abs(d - n * phi / 2) / (n * phi / 2), phi * phi / 24 + 1e-9);
    }
  }
}

TEST(InitialDistance, SphereAxisScalesWithPerpendicularComponent) {
  SeedStream stream(4);
  const int n = 200;
  for (int rep = 0; rep < 20; ++rep) {
    const BlochAngles a = sample_initial(stream);
    const Vector3<double> m = sample_axis(stream, AxisMode::Sphere, a);
    const double phi = 0.05;
    const Vector3<double> k = qubit_bloch_vector(spinor_from_angles(a));
    const double overlap = std::abs(std::complex<double>(std::cos(phi / 2), std::sin(phi / 2) * m.dot(k)));
    const double d = qhd_symmetric_single(coherent_state(n, a), coherent_state(n, perturb(a, {m, phi})));
    EXPECT_NEAR(d, n * std::sqrt(1 - overlap * overlap), 1e-9);
  }
}

}  // namespace
}  // namespace qhd
