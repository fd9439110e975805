#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "qhd/classical_top.hpp"
#include "qhd/experiments.hpp"
#include "qhd/perturbation.hpp"

namespace qhd {
namespace {

using V = ClassicalSpin<double>;

TEST(ClassicalStep, PoleGoesToEquator) {
  for (double alpha : {0.0, 1.0, 6.0}) {
    EXPECT_LT((classical_step(V(0, 0, 1), alpha) - V(1, 0, 0)).norm(), 1e-15);
  }
}

TEST(ClassicalStep, PolarOrbitHasPeriodFour) {
  const std::vector<V> expected{V(0, 0, 1), V(1, 0, 0), V(0, 0, -1), V(-1, 0, 0), V(0, 0, 1)};
  for (double alpha : {1.0, 2.3, 6.0}) {
    const auto orbit = classical_orbit(V(0, 0, 1), alpha, 4);
    for (int t = 0; t <= 4; ++t) EXPECT_LT((orbit[t] - expected[t]).cwiseAbs().maxCoeff(), 1e-12) << alpha;
  }
}

TEST(ClassicalStep, NormSurvivesLongOrbits) {
  V r = V(0.3, -0.5, 0.7).normalized();
  for (int t = 0; t < 100000; ++t) r = classical_step(r, 6.0);
  EXPECT_NEAR(r.norm(), 1.0, 1e-10);
}

TEST(ClassicalStep, NoKickIsFixedRotation) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 20; ++rep) {
    const V r = V(g(rng), g(rng), g(rng)).normalized();
    EXPECT_LT((classical_step(r, 0.0) - V(r.z(), r.y(), -r.x())).norm(), 1e-15);
  }
}

TEST(Trajectory, ZeroStepsAndPoleConvention) {
  const auto one = trajectory(V(0, 0, 1), 2.3, 0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].phi, 0.0);
  EXPECT_EQ(one[0].z, 1.0);
  const auto path = trajectory(quantum_to_classical(1.0, 3.0), 2.3, 50);
  EXPECT_EQ(path.size(), 51u);
  for (const auto& p : path) {
    EXPECT_GT(p.phi, -pi_v<double>);
    EXPECT_LE(p.phi, pi_v<double>);
  }
  EXPECT_EQ(azimuth(V(-1, 0, 0)), pi_v<double>);
}

TEST(QuantumToClassical, Examples) {
  EXPECT_LT((quantum_to_classical(0.0, 1.7) - V(0, 0, 1)).norm(), 1e-15);
  EXPECT_LT((quantum_to_classical(pi_v<double> / 2, 0.0) - V(1, 0, 0)).norm(), 1e-15);
}

TEST(QuantumToClassical, PerturbedImagesSubtendTheRotationAngle) {
  SeedStream stream(17);
  for (int rep = 0; rep < 50; ++rep) {
    const BlochAngles a = sample_initial(stream);
    const double phi = 0.5 * stream.uniform();
    const BlochAngles b = perturb(a, {sample_axis(stream, AxisMode::Perpendicular, a), phi});
    EXPECT_NEAR(angle_between(quantum_to_classical(a.theta, a.phi), quantum_to_classical(b.theta, b.phi)), phi,
                1e-10);
  }
}

// The image of the qubit Bloch vector in the classical frame is (x, y, -z).
TEST(QuantumToClassical, MatchesQubitBlochVector) {
  SeedStream stream(18);
  for (int rep = 0; rep < 20; ++rep) {
    const BlochAngles a = sample_initial(stream);
    Vector3<double> q = qubit_bloch_vector(spinor_from_angles(a));
    q.z() = -q.z();
    EXPECT_LT((q - quantum_to_classical(a.theta, a.phi)).norm(), 1e-14);
  }
}

TEST(DivergenceProbe, RegularAndChaoticExamples) {
  // At alpha = 0 every orbit has period 4.
  EXPECT_FALSE(divergence_probe(quantum_to_classical(1.0, 2.0), 0.0).chaotic);
  const auto strong = divergence_probe(quantum_to_classical(1.0, 2.0), 6.0);
  EXPECT_TRUE(strong.chaotic);
  EXPECT_GT(strong.crossing_step, 0);
  EXPECT_GT(finite_time_lyapunov(quantum_to_classical(1.0, 2.0), 6.0), 0.5);
}

// At alpha = 2.3 the picks differ in the spread of their trajectories.
TEST(ReferenceConditions, RegularBandAndChaoticSea) {
  const auto ref = find_reference_conditions(2.3, 0.01, 1);
  EXPECT_GT(ref.chaotic_count, 0);
  EXPECT_LT(ref.chaotic_count, ref.grid_size);
  EXPECT_FALSE(divergence_probe(quantum_to_classical(ref.regular.theta, ref.regular.phi), 2.3).chaotic);
  EXPECT_TRUE(divergence_probe(quantum_to_classical(ref.chaotic.theta, ref.chaotic.phi), 2.3).chaotic);

  // Distance to the nearest point of the period-4 polar orbit, or of its
  // regular band, is tracked through the spread of visited z values per phase.
  auto spread = [](const BlochAngles& a) {
    const auto orbit = classical_orbit(quantum_to_classical(a.theta, a.phi), 2.3, 2000);
    double lo = 1;
    double hi = -1;
    for (std::size_t t = 0; t < orbit.size(); t += 4) {
      lo = std::min(lo, orbit[t].z());
      hi = std::max(hi, orbit[t].z());
    }
    return hi - lo;
  };
  EXPECT_LT(spread(ref.regular), 0.2);
  EXPECT_GT(spread(ref.chaotic), 1.0);
}

}  // namespace
}  // namespace qhd
