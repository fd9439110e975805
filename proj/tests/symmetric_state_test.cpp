#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "qhd/oracle.hpp"
#include "qhd/perturbation.hpp"
#include "qhd/symmetric_state.hpp"
#include "support.hpp"

namespace qhd {
namespace {

using testing::max_abs;
using testing::random_symmetric;

TEST(CoherentState, NorthPoleIsAllZeros) {
  const auto s = coherent_state<double>(5, 0.0, 1.234);
  VectorXc<double> expected = VectorXc<double>::Zero(6);
  expected[0] = 1;
  EXPECT_EQ(s.amplitudes(), expected);
}

TEST(CoherentState, TwoQubitEqualSuperposition) {
  const auto s = coherent_state<double>(2, pi_v<double> / 4, 0.0);
  EXPECT_NEAR(std::abs(s[0] - 0.5), 0, 1e-15);
  EXPECT_NEAR(std::abs(s[1] - 1 / std::sqrt(2.0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(s[2] - 0.5), 0, 1e-15);
}

TEST(CoherentState, DegenerateAnglesGiveBasisStates) {
  const auto s = coherent_state<double>(7, pi_v<double> / 2, 0.3);
  for (int k = 0; k < 7; ++k) EXPECT_LT(std::abs(s[k]), 1e-15) << k;
  EXPECT_NEAR(std::abs(s[7]), 1.0, 1e-15);
  Spinor<double> chi;
  chi << 0.0, std::complex<double>(0, 2);
  const auto t = coherent_state<double>(4, chi);
  EXPECT_FALSE(t.amplitudes().hasNaN());
  EXPECT_NEAR(std::abs(t[4]), 1.0, 1e-15);
}

// Independent oracle: explicit binomial expansion in long double.
TEST(CoherentState, MatchesBinomialExpansion) {
  const int n = 40;
  const double theta = 0.7;
  const double phi = 2.1;
  const auto s = coherent_state<double>(n, theta, phi);
  for (int k = 0; k <= n; ++k) {
    long double binom = 1;
    for (int j = 1; j <= k; ++j) binom = binom * (n - k + j) / j;
    const long double mag = std::sqrt(binom) * std::pow(std::cos((long double)theta), n - k) *
                            std::pow(std::sin((long double)theta), k);
    const std::complex<double> expected = std::polar(static_cast<double>(mag), k * phi);
    EXPECT_NEAR(std::abs(s[k] - expected), 0, 1e-13) << "k=" << k;
  }
}

TEST(CoherentState, NormalizedAtLargeN) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int n : {1000, 10000}) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto s = coherent_state<double>(n, pi_v<double> * u(rng), 2 * pi_v<double> * u(rng));
      EXPECT_NEAR(s.norm(), 1.0, 1e-12);
      EXPECT_FALSE(s.amplitudes().hasNaN());
    }
  }
}

TEST(CoherentState, RejectsBadInput) {
  EXPECT_THROW(coherent_state<double>(0, 0.1, 0.2), std::invalid_argument);
  EXPECT_THROW(coherent_state<double>(3, Spinor<double>::Zero()), std::invalid_argument);
  EXPECT_THROW(SymmetricState<double>(3, VectorXc<double>::Zero(3)), std::invalid_argument);
  EXPECT_THROW(SymmetricState<double>::dicke(3, 4), std::invalid_argument);
}

TEST(ReducedState, DickeSingleQubitAgainstPartialTrace) {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto d = SymmetricState<double>::dicke(n, k);
      const auto rho = reduced_m_qubit(d, 1).matrix;
      const auto full = oracle::partial_trace(oracle::FullState::from_symmetric(d), {n - 1});
      EXPECT_LT(max_abs(rho - full), 1e-12) << n << "," << k;
      EXPECT_NEAR(rho(0, 0).real(), double(n - k) / n, 1e-14);
      EXPECT_NEAR(rho(1, 1).real(), double(k) / n, 1e-14);
    }
  }
}

TEST(ReducedState, ProductStateReductionsArePure) {
  const auto s = coherent_state<double>(30, 1.1, 0.4);
  for (int m = 1; m <= 30; ++m) {
    const auto rho = reduced_m_qubit(s, m).matrix;
    EXPECT_NEAR((rho * rho).trace().real(), 1.0, 1e-10) << m;
  }
}

TEST(ReducedState, DensityMatrixInvariants) {
  std::mt19937_64 rng(11);
  for (int n : {3, 10, 40, 200}) {
    const auto s = random_symmetric(n, rng);
    for (int m : {1, 2, n / 2, n}) {
      const auto rho = reduced_m_qubit(s, m).matrix;
      EXPECT_LT(max_abs(rho - rho.adjoint()), 1e-12);
      EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
      Eigen::SelfAdjointEigenSolver<MatrixXc<double>> es(rho);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    }
  }
}

TEST(ReducedState, RejectsPartLargerThanSystem) {
  const auto s = SymmetricState<double>::dicke(4, 2);
  EXPECT_THROW(reduced_m_qubit(s, 5), std::invalid_argument);
  EXPECT_THROW(reduced_m_qubit(s, 0), std::invalid_argument);
}

// Any subset of kept qubits gives the same reduction.
TEST(ReducedState, MatchesFullPartialTraceOnRandomSubsets) {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 8; ++n) {
    const auto s = random_symmetric(n, rng);
    const auto full = oracle::FullState::from_symmetric(s);
    for (int m = 1; m <= n; ++m) {
      std::vector<int> qubits(n);
      std::iota(qubits.begin(), qubits.end(), 0);
      std::shuffle(qubits.begin(), qubits.end(), rng);
      qubits.resize(m);
      const auto embedding = oracle::dicke_embedding(m);
      const MatrixXc<double> lifted = embedding * reduced_m_qubit(s, m).matrix * embedding.adjoint();
      EXPECT_LT(max_abs(lifted - oracle::partial_trace(full, qubits)), 1e-10) << "n=" << n << " m=" << m;
    }
  }
}

TEST(SingleQubit, DickeHalfFilled) {
  const auto rho = reduced_single_qubit(SymmetricState<double>::dicke(6, 3)).matrix;
  Matrix2c<double> half = Matrix2c<double>::Identity() / 2.0;
  EXPECT_LT((rho - half).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SingleQubit, CatStateHasNoCoherence) {
  VectorXc<double> a = VectorXc<double>::Zero(5);
  a[0] = a[4] = 1 / std::sqrt(2.0);
  const auto rho = reduced_single_qubit(SymmetricState<double>(4, a)).matrix;
  EXPECT_LT((rho - Matrix2c<double>::Identity() / 2.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SingleQubit, CoherentStateGivesProjector) {
  const BlochAngles angles{1.3, 4.0};
  const Spinor<double> chi = spinor_from_angles(angles);
  const auto rho = reduced_single_qubit(coherent_state(500, angles)).matrix;
  EXPECT_LT((rho - chi * chi.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SingleQubit, AgreesWithGeneralReduction) {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 64; ++n) {
    const auto s = random_symmetric(n, rng);
    EXPECT_LT(max_abs(reduced_single_qubit(s).matrix - reduced_m_qubit(s, 1).matrix), 1e-12) << n;
  }
}

TEST(ReducedState, NestingMatchesDirectReduction) {
  std::mt19937_64 rng(9);
  for (int n = 2; n <= 12; ++n) {
    const auto s = random_symmetric(n, rng);
    for (int m = 1; m <= n; ++m) {
      const auto nested = reduced_m_qubit(reduced_m_qubit(s, m), 1);
      EXPECT_LT(max_abs(nested.matrix - reduced_single_qubit(s).matrix), 1e-10) << n << "," << m;
      if (m >= 2) {
        const auto two = reduced_m_qubit(reduced_m_qubit(s, m), 2);
        EXPECT_LT(max_abs(two.matrix - reduced_m_qubit(s, 2).matrix), 1e-10);
      }
    }
  }
}

TEST(LinearEntropy, Examples) {
  SingleQubitState<double> pure{Matrix2c<double>::Zero()};
  pure.matrix(0, 0) = 1;
  EXPECT_EQ(linear_entropy(pure), 0.0);
  SingleQubitState<double> mixed{Matrix2c<double>::Identity() / 2.0};
  EXPECT_DOUBLE_EQ(linear_entropy(mixed), 0.5);
  SingleQubitState<double> d{Matrix2c<double>::Zero()};
  d.matrix(0, 0) = 0.75;
  d.matrix(1, 1) = 0.25;
  EXPECT_DOUBLE_EQ(linear_entropy(d), 3.0 / 8);
}

TEST(BlochVector, MatchesSpinorExpectation) {
  const BlochAngles angles{2.2, 0.9};
  const auto rho = reduced_single_qubit(coherent_state(20, angles));
  EXPECT_LT((bloch_vector(rho) - qubit_bloch_vector(spinor_from_angles(angles))).norm(), 1e-13);
}

TEST(SymmetricState, LongDoubleInstantiation) {
  const auto s = coherent_state<long double>(50, 0.3L, 1.1L);
  EXPECT_NEAR(static_cast<double>(s.norm()), 1.0, 1e-15);
  const auto rho = reduced_single_qubit(s);
  EXPECT_NEAR(static_cast<double>(linear_entropy(rho)), 0.0, 1e-15);
}

}  // namespace
}  // namespace qhd
