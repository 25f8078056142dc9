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

#include "qtrade/referee.h"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.h"

namespace qtrade {
namespace {

std::vector<double> random_simplex(std::size_t size, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(size);
  double total = 0.0;
  for (auto& x : p) total += (x = e(rng));
  for (auto& x : p) x /= total;
  return p;
}

TEST(Correlated, ChickenThirdsAreAnEquilibrium) {
  const auto g = builtin_game("chicken");
  const RefereeDistribution d({1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0});
  const auto verdict = is_correlated_equilibrium(g, d);
  EXPECT_TRUE(verdict.equilibrium);
  EXPECT_TRUE(verdict.violations.empty());
  const auto pay = expected_payoffs(g, d);
  EXPECT_NEAR(pay[0], 5.0 / 3, 1e-9);
  EXPECT_NEAR(pay[1], 5.0 / 3, 1e-9);

  // Told to go Long, the opponent is equally likely to be Long or Short.
  for (int player = 0; player < 2; ++player) {
    const auto c = conditional_advice(d, 2, player, Move::kLong);
    EXPECT_NEAR(c[0], 0.5, 1e-12);
    EXPECT_NEAR(c[1], 0.5, 1e-12);
  }
  const auto r = obedience_payoffs(g, d, 0, Move::kLong);
  EXPECT_NEAR(r.follow_payoff, 1.0, 1e-12);
  EXPECT_NEAR(r.deviation_payoff, 1.0, 1e-12);
  EXPECT_TRUE(r.obedient(1e-9));
}

TEST(Correlated, AdviceToShortInChicken) {
  const RefereeDistribution d({1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0});
  const auto c = conditional_advice(d, 2, 0, Move::kShort);
  EXPECT_NEAR(c[0], 1.0, 1e-12);
  EXPECT_NEAR(c[1], 0.0, 1e-12);
  const RefereeDistribution only_long({1.0, 0.0, 0.0, 0.0});
  EXPECT_THROW(conditional_advice(only_long, 2, 0, Move::kShort), std::invalid_argument);
}

TEST(Correlated, PrisonersDilemmasRejectAnyLongAdvice) {
  std::mt19937_64 rng(3);
  for (const char* name : {"pd2", "pd3"}) {
    const auto g = builtin_game(name);
    for (int trial = 0; trial < 1000; ++trial) {
      const RefereeDistribution d(random_simplex(g.outcome_count(), rng));
      EXPECT_FALSE(is_correlated_equilibrium(g, d).equilibrium);
    }
    // Always Short is the only correlated equilibrium.
    const auto all_short = RefereeDistribution::point_mass(g.outcome_count() - 1,
                                                           g.outcome_count());
    EXPECT_TRUE(is_correlated_equilibrium(g, all_short).equilibrium);
  }
}

TEST(Correlated, MatchesLinearInequalityOracle) {
  std::mt19937_64 rng(5);
  const std::vector<double> hd = {4, 6};
  int accepted = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + trial % 2;
    const auto g = trial % 5 == 0 ? builtin_game("hawk_dove", hd)
                                  : trial % 5 == 1 ? builtin_game("chicken")
                                                   : testing::random_game(n, rng);
    auto p = random_simplex(g.outcome_count(), rng);
    // Sparse distributions hit the equilibrium region more often.
    if (trial % 3 == 0) {
      p[rng() % p.size()] = 0.0;
      double total = 0.0;
      for (double x : p) total += x;
      for (auto& x : p) x /= total;
    }
    const RefereeDistribution d(p);
    const bool got = is_correlated_equilibrium(g, d).equilibrium;
    accepted += got;
    EXPECT_EQ(got, testing::is_correlated_oracle(g, p, 1e-9));
  }
  EXPECT_GT(accepted, 10);
}

TEST(Correlated, ViolationsNameTheDeviator) {
  const auto g = builtin_game("pd2");
  const RefereeDistribution d({1.0, 0.0, 0.0, 0.0});
  const auto verdict = is_correlated_equilibrium(g, d);
  ASSERT_EQ(verdict.violations.size(), 2u);
  EXPECT_EQ(verdict.violations[0].advice, Move::kLong);
  EXPECT_EQ(verdict.violations[0].follow_payoff, 3.0);
  EXPECT_EQ(verdict.violations[0].deviation_payoff, 5.0);
  // Zero-marginal advice (Short) is not reported.
  EXPECT_EQ(verdict.reports.size(), 2u);
}

TEST(ParseDistribution, RenormalizesSmallDrift) {
  const auto d = parse_distribution("0.3333333,0.3333333,0.3333334,0", 4);
  double total = 0.0;
  for (double x : d.probabilities()) total += x;
  EXPECT_NEAR(total, 1.0, 1e-15);
  const auto drift = parse_distribution("0.5000004,0.5,0,0", 4);
  EXPECT_NEAR(drift[0], 0.5000004 / 1.0000004, 1e-15);
  EXPECT_THROW(parse_distribution("0.5,0.4,0,0", 4), std::invalid_argument);
  EXPECT_THROW(parse_distribution("0.5,0.5", 4), std::invalid_argument);
  EXPECT_THROW(parse_distribution("0.5,x,0,0.5", 4), std::invalid_argument);
}

}  // namespace
}  // namespace qtrade
