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

#include "qtrade/lab.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrade/errors.h"

namespace qtrade {
namespace {

constexpr double kPi = std::numbers::pi;

NormalFormGame shipped(int n) {
  return load_game_file(std::filesystem::path(QTRADE_GAMES_DIR) /
                        ("pd_n" + std::to_string(n) + ".json"));
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qtrade_lab_" + name);
}

TEST(Axis, EndpointsAreExact) {
  const auto t = theta_axis(21).values();
  ASSERT_EQ(t.size(), 21u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), kPi);
  EXPECT_EQ(phi_axis(21).values().back(), kPi / 2);
  EXPECT_EQ(alpha_axis().values().back(), 2 * kPi);
  EXPECT_EQ(Axis({"theta", 1.0, 1.0, 1}).values(), std::vector<double>{1.0});
}

TEST(Sweep, RejectsBadSpecs) {
  auto spec = du_nash_sweep_spec(builtin_game("pd3"), 5, 5);
  auto bad = spec;
  bad.axes[0].points = 0;
  EXPECT_THROW(run_sweep(bad), std::invalid_argument);
  bad = spec;
  bad.axes[1].hi = kPi;
  EXPECT_THROW(run_sweep(bad), std::invalid_argument);
  bad = spec;
  bad.axes[0] = Axis{"theta", 0.0, 1.0, 1};
  EXPECT_THROW(run_sweep(bad), std::invalid_argument);
  bad = spec;
  bad.fixed.pop_back();
  EXPECT_THROW(run_sweep(bad), std::invalid_argument);
  bad = spec;
  bad.varying_player = 3;
  EXPECT_THROW(run_sweep(bad), std::invalid_argument);
  bad = spec;
  bad.protocol = SweepProtocol::kEwl2;
  EXPECT_THROW(run_sweep(bad), std::invalid_argument);
}

TEST(Sweep, ValuesMatchDirectProtocolRuns) {
  const auto game = builtin_game("pd3");
  const auto spec = du_nash_sweep_spec(game, 7, 5);
  const auto r = run_sweep(spec);
  ASSERT_EQ(r.values.size(), 35u);
  const auto others = QuantumStrategy::du(kPi, 0);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    const auto c = r.coordinates(i);
    const std::vector<QuantumStrategy> s = {QuantumStrategy::du(c[0], c[1]), others, others};
    EXPECT_NEAR(r.values[i], play_du(game, s, 0).payoffs[0], 1e-15);
    EXPECT_EQ(r.values[i], evaluate_point(spec, c));
  }
}

TEST(Sweep, NashPointOfShippedGames) {
  for (int n = 3; n <= 6; ++n) {
    const auto r = run_sweep(du_nash_sweep_spec(shipped(n), 21, 21));
    EXPECT_EQ(r.argmax, (std::vector<std::size_t>{20, 0})) << "n=" << n;
    EXPECT_NEAR(r.argmax_payoff, 1.0, 1e-9);
    const std::vector<double> nash = {kPi, 0.0}, classical = {0.0, 0.0};
    EXPECT_TRUE(verify_nash_point(r, nash));
    EXPECT_FALSE(verify_nash_point(r, classical));
    EXPECT_NEAR(r.values[0], -0.5, 1e-12);
  }
}

TEST(Sweep, NashPointOfBuiltinThreePlayerGame) {
  const auto r = run_sweep(du_nash_sweep_spec(builtin_game("pd3"), 21, 21));
  EXPECT_EQ(r.argmax, (std::vector<std::size_t>{20, 0}));
  EXPECT_NEAR(r.argmax_payoff, 3.0, 1e-9);
  const std::vector<double> off_grid = {1.0, 0.0};
  EXPECT_THROW(verify_nash_point(r, off_grid), std::invalid_argument);
}

TEST(Sweep, QuantumLongIsABestReply) {
  SweepSpec spec{
      .protocol = SweepProtocol::kEwl2,
      .game = builtin_game("pd2"),
      .varying_player = 0,
      .fixed = std::vector<MixedQuantumStrategy>(
          2, MixedQuantumStrategy::pure(QuantumStrategy::named(NamedStrategy::kQuantumLong))),
      .axes = {theta_axis(), phi_axis()},
      .family = ewl_family(),
      .init_bit = std::nullopt,
      .entangler = EwlEntangler::kNegative,
  };
  const auto r = run_sweep(spec);
  for (double v : r.values) EXPECT_LE(v, 3.0 + 1e-9);
  EXPECT_EQ(r.argmax, (std::vector<std::size_t>{0, 20}));
  EXPECT_NEAR(r.argmax_payoff, 3.0, 1e-9);
}

TEST(MixedTheta, CurvesPeakAtTheEquilibrium) {
  const auto game = builtin_game("pd2");
  const auto one = run_mixed_theta_sweep(game, 0);
  EXPECT_EQ(one.argmax, std::vector<std::size_t>{0});
  EXPECT_NEAR(one.values.front(), 2.5, 1e-12);
  EXPECT_NEAR(one.values.back(), 2.0, 1e-12);
  const auto two = run_mixed_theta_sweep(game, 1);
  EXPECT_EQ(two.argmax, std::vector<std::size_t>{40});
  EXPECT_NEAR(two.values.back(), 2.5, 1e-12);
  EXPECT_NEAR(two.values.front(), 2.0, 1e-12);
}

TEST(MixedTheta, TemplateReproducesTheEquilibriumMixture) {
  const auto game = builtin_game("pd2");
  for (int p = 0; p < 2; ++p) {
    const double theta = p == 0 ? 0.0 : kPi;
    const std::vector<double> at = {theta};
    const auto mixed = mixed_theta_family(mixed_equilibrium_phase_template(p)).make(at);
    const auto a = play_mixed_quantum(game, p == 0 ? mixed : mixed_equilibrium_strategy(0),
                                      p == 1 ? mixed : mixed_equilibrium_strategy(1));
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_NEAR(a.distribution[k], k == 1 || k == 2 ? 0.5 : 0.0, 1e-12);
    }
  }
}

TEST(Flatness, PhasesDoNotMatterAtTheEquilibrium) {
  const auto game = builtin_game("pd2");
  EXPECT_LE(flatness_check(game, 0, 0.0), 1e-9);
  EXPECT_LE(flatness_check(game, 1, kPi), 1e-9);
  EXPECT_LE(flatness_check(game, 0, 0.7), 1e-9);
}

TEST(Flatness, DetectsPhaseDependence) {
  const auto vs_short = MixedQuantumStrategy::pure(QuantumStrategy::named(NamedStrategy::kShort));
  EXPECT_GT(flatness_check(builtin_game("pd2"), 0, 0.7, 17, vs_short), 1.0);
}

TEST(Csv, RowMajorThetaOuter) {
  const auto r = run_sweep(du_nash_sweep_spec(shipped(3), 21, 21));
  const std::string text = sweep_csv(r);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theta,phi,payoff");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 441u);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(r.coordinates(1)[0], 0.0);
  EXPECT_GT(r.coordinates(1)[1], 0.0);
  EXPECT_GT(r.coordinates(21)[0], 0.0);
}

TEST(Csv, RoundTripIsBitIdentical) {
  const auto r = run_sweep(du_nash_sweep_spec(shipped(4), 21, 21));
  const auto path = temp_path("roundtrip.csv");
  emit_csv(r, path);
  const auto table = read_csv(path);
  ASSERT_EQ(table.rows.size(), r.values.size());
  EXPECT_EQ(table.header, (std::vector<std::string>{"theta", "phi", "payoff"}));
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    const auto c = r.coordinates(i);
    EXPECT_EQ(table.rows[i][0], c[0]);
    EXPECT_EQ(table.rows[i][1], c[1]);
    EXPECT_EQ(table.rows[i][2], r.values[i]);
  }
  std::filesystem::remove(path);
}

TEST(Csv, ReportsIoFailures) {
  const auto r = run_mixed_theta_sweep(builtin_game("pd2"), 0, 5);
  EXPECT_THROW(emit_csv(r, "/nonexistent/dir/out.csv"), IoError);
  EXPECT_THROW(read_csv("/nonexistent/in.csv"), IoError);
}

}  // namespace
}  // namespace qtrade
