// Copyright 2026 The qtrade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtrade/qsim.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.h"

namespace qtrade {
namespace {

using testing::Dense;

constexpr double kPi = std::numbers::pi;

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<int> random_targets(int n, int k, std::mt19937_64& rng) {
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) all[q] = q;
  std::shuffle(all.begin(), all.end(), rng);
  return {all.begin(), all.begin() + k};
}

TEST(Unitary, RejectsNonUnitaryInput) {
  EXPECT_THROW(UnitaryMatrix(1, {1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(UnitaryMatrix(1, {1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_NO_THROW(UnitaryMatrix(1, {0.0, 1.0, -1.0, 0.0}));
}

TEST(Unitary, RandomProductsStayUnitary) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + trial % 3;
    const auto u = testing::random_unitary(k, rng) * testing::random_unitary(k, rng);
    EXPECT_LT((u * u.dagger()).max_deviation(UnitaryMatrix::identity(k)), 1e-12);
  }
}

TEST(Unitary, NamedGates) {
  EXPECT_LT(gates::d().max_deviation(
                UnitaryMatrix(1, {0.0, Complex(0, 1) * Complex(0, -1),
                                  Complex(0, 1) * Complex(0, 1), 0.0})),
            1e-15);
  const auto cnot = gates::cnot();
  EXPECT_EQ(cnot(3, 2), Complex(1.0));
  EXPECT_EQ(cnot(2, 3), Complex(1.0));
  EXPECT_EQ(cnot(1, 1), Complex(1.0));
}

TEST(Tensor, FirstFactorIsTheHighQubit) {
  const std::vector<UnitaryMatrix> f = {gates::pauli_x(), UnitaryMatrix::identity(1)};
  const auto xi = tensor(f);
  const auto s = apply(StateVector::basis(2, 0), xi, std::vector<int>{0, 1});
  EXPECT_EQ(s[2], Complex(1.0));
  std::mt19937_64 rng(2);
  const auto a = testing::random_unitary(1, rng);
  const auto b = testing::random_unitary(2, rng);
  const std::vector<UnitaryMatrix> ab = {a, b};
  EXPECT_LT(testing::max_abs_diff(testing::to_dense(tensor(ab)),
                                  testing::kron(testing::to_dense(a), testing::to_dense(b))),
            1e-15);
}

TEST(StateVector, ValidatesConstruction) {
  EXPECT_THROW(StateVector({1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(StateVector({1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_NO_THROW(StateVector({std::sqrt(0.5), Complex(0, std::sqrt(0.5))}));
  EXPECT_THROW(state_init(3, 2), std::invalid_argument);
  EXPECT_EQ(state_init(3, 1)[7], Complex(1.0));
  EXPECT_EQ(state_init(2, 0)[0], Complex(1.0));
}

TEST(StateVector, RejectsBadTargets) {
  auto s = state_init(3, 0);
  EXPECT_THROW(s.apply_in_place(gates::cnot(), std::vector<int>{0, 0}), std::invalid_argument);
  EXPECT_THROW(s.apply_in_place(gates::cnot(), std::vector<int>{0, 3}), std::out_of_range);
  EXPECT_THROW(s.apply_in_place(gates::cnot(), std::vector<int>{0}), std::invalid_argument);
}

TEST(StateVector, ApplyMatchesFullMatrixOracle) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 250; ++trial) {
      const int k = 1 + static_cast<int>(rng() % std::min(n, 3));
      const auto targets = random_targets(n, k, rng);
      const Dense gate = testing::random_unitary_dense(k, rng);
      const auto amps = testing::random_amplitudes(n, rng);
      const auto got = apply(StateVector(amps), UnitaryMatrix(k, gate), targets);
      const auto want = testing::matvec(testing::embed(gate, targets, n), amps);
      EXPECT_LT(max_diff(got.amplitudes(), want), 1e-12) << "n=" << n << " k=" << k;
    }
  }
}

TEST(StateVector, NormIsPreserved) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 6;
    StateVector s(testing::random_amplitudes(n, rng));
    for (int step = 0; step < 5; ++step) {
      const int k = 1 + static_cast<int>(rng() % std::min(n, 2));
      s.apply_in_place(testing::random_unitary(k, rng), random_targets(n, k, rng));
    }
    if (n >= 2) s.apply_x_entangler_in_place(trial % 2 ? 1 : -1);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
  }
}

TEST(Measurement, GlobalPhaseIsInvisible) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    auto amps = testing::random_amplitudes(n, rng);
    const auto before = measure_distribution(StateVector(amps));
    const Complex phase = std::polar(1.0, angle(rng));
    for (auto& a : amps) a *= phase;
    const auto after = measure_distribution(StateVector(amps));
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(before[i], after[i], 1e-15);
  }
}

TEST(XxGate, MatchesMatrixExponential) {
  const Dense xx = testing::kron(testing::pauli_x_dense(), testing::pauli_x_dense());
  for (double scale : {1.0, 0.5}) {
    for (double theta : {kPi / 4, -kPi / 4, 0.3, 2.0}) {
      Dense a = xx;
      for (auto& x : a) x *= Complex(0.0, -scale * theta);
      EXPECT_LT(testing::max_abs_diff(testing::to_dense(xx_gate(theta, scale)),
                                      testing::expm(a)),
                1e-13);
    }
  }
}

TEST(Entangler, ClosedFormMatchesSeries) {
  for (int n = 2; n <= 6; ++n) {
    for (int sign : {1, -1}) {
      EXPECT_LT(testing::max_abs_diff(
                    testing::to_dense(matrix_exponential_entangler(sign, n, EntanglerBasis::kPauliX)),
                    testing::entangler_oracle(n, sign)),
                1e-13);
    }
  }
  EXPECT_THROW(matrix_exponential_entangler(1, 3, EntanglerBasis::kD), std::invalid_argument);
  EXPECT_THROW(matrix_exponential_entangler(2, 2, EntanglerBasis::kPauliX), std::invalid_argument);
}

TEST(Entangler, FastPathMatchesDenseMatrix) {
  std::mt19937_64 rng(6);
  for (int n = 2; n <= 6; ++n) {
    for (int sign : {1, -1}) {
      const auto amps = testing::random_amplitudes(n, rng);
      StateVector s(amps);
      s.apply_x_entangler_in_place(sign);
      const auto want = testing::matvec(testing::entangler_oracle(n, sign), amps);
      EXPECT_LT(max_diff(s.amplitudes(), want), 1e-13);
    }
  }
}

TEST(Entangler, PreparesGhzState) {
  auto s = state_init(3, 0);
  s.apply_x_entangler_in_place(1);
  EXPECT_LT(std::abs(s[0] - Complex(std::sqrt(0.5), 0)), 1e-12);
  EXPECT_LT(std::abs(s[7] - Complex(0, std::sqrt(0.5))), 1e-12);
  for (std::size_t i = 1; i < 7; ++i) EXPECT_LT(std::abs(s[i]), 1e-12);
}

TEST(Entangler, DBasisSquaresToIdentityForEvenN) {
  const auto u = matrix_exponential_entangler(1, 2, EntanglerBasis::kD);
  const auto v = matrix_exponential_entangler(-1, 2, EntanglerBasis::kD);
  EXPECT_LT((u * v).max_deviation(UnitaryMatrix::identity(2)), 1e-15);
  // |00> -> (|00> + i|11>)/sqrt2 since D(x)D|00> = |11>.
  const auto s = apply(state_init(2, 0), u, std::vector<int>{0, 1});
  EXPECT_LT(std::abs(s[3] - Complex(0, std::sqrt(0.5))), 1e-15);
}

TEST(PhaseComparison, IgnoresGlobalPhaseOnly) {
  std::mt19937_64 rng(7);
  const auto u = testing::random_unitary(2, rng);
  std::vector<Complex> shifted(u.entries().begin(), u.entries().end());
  for (auto& x : shifted) x *= std::polar(1.0, 1.234);
  EXPECT_LT(max_deviation_up_to_phase(u, UnitaryMatrix(2, shifted)), 1e-13);
  const auto z = tensor(std::vector<UnitaryMatrix>{gates::pauli_z(), UnitaryMatrix::identity(1)});
  EXPECT_GT(max_deviation_up_to_phase(UnitaryMatrix::identity(2), z), 1.0);
}

TEST(Sampling, DeterministicInSeed) {
  const OutcomeDistribution d({0.1, 0.2, 0.3, 0.4});
  const auto a = sample_counts(d, 10000, 42);
  EXPECT_EQ(a, sample_counts(d, 10000, 42));
  EXPECT_NE(a, sample_counts(d, 10000, 43));
  std::uint64_t total = 0;
  for (auto c : a) total += c;
  EXPECT_EQ(total, 10000u);
  EXPECT_NEAR(a[3] / 10000.0, 0.4, 0.03);
  const auto point = sample_counts(OutcomeDistribution::point_mass(2, 4), 100, 1);
  EXPECT_EQ(point[2], 100u);
}

TEST(Dump, OneLinePerAmplitude) {
  auto s = state_init(2, 0);
  s.apply_x_entangler_in_place(1);
  const std::string text = s.dump();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(text.substr(0, 5), "0 00 ");
}

}  // namespace
}  // namespace qtrade
