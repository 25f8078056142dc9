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

#ifndef QTRADE_LAB_H_
#define QTRADE_LAB_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtrade/game.h"
#include "qtrade/protocols.h"

namespace qtrade {

inline constexpr std::size_t kDefaultThetaPoints = 41;
inline constexpr std::size_t kDefaultPhiPoints = 21;
inline constexpr std::size_t kDefaultPhasePoints = 17;

// Evenly spaced grid with both endpoints included exactly. The name selects
// the legal domain: theta [0, pi], phi [0, pi/2], alpha and gamma [0, 2pi].
struct Axis {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;

  std::vector<double> values() const;
};

Axis theta_axis(std::size_t points = kDefaultThetaPoints);
Axis phi_axis(std::size_t points = kDefaultPhiPoints);
Axis alpha_axis(std::size_t points = kDefaultPhasePoints);
Axis gamma_axis(std::size_t points = kDefaultPhasePoints);

// Builds the varying player's strategy from one value per axis.
struct StrategyFamily {
  std::string label;
  std::function<MixedQuantumStrategy(std::span<const double>)> make;
};

StrategyFamily ewl_family();                 // axes (theta, phi)
StrategyFamily du_family();                  // axes (theta, phi)
StrategyFamily phase_family(double theta);   // axes (alpha, gamma), full form
// Axis theta. Every component keeps its weight, alpha and gamma; all share
// the swept theta.
StrategyFamily mixed_theta_family(const MixedQuantumStrategy& phase_template);

enum class SweepProtocol { kEwl2, kDu };

struct SweepSpec {
  SweepProtocol protocol = SweepProtocol::kDu;
  NormalFormGame game;
  int varying_player = 0;
  // One entry per player; the varying player's entry is ignored.
  std::vector<MixedQuantumStrategy> fixed;
  std::vector<Axis> axes;
  StrategyFamily family;
  std::optional<int> init_bit;  // du only; default by parity
  EwlEntangler entangler = EwlEntangler::kNegative;
};

struct SweepResult {
  SweepSpec spec;
  // Varying player's payoff, row-major with the first axis outermost.
  std::vector<double> values;
  std::vector<std::size_t> argmax;  // one index per axis
  double argmax_payoff = 0.0;

  std::vector<double> coordinates(std::size_t flat_index) const;
};

SweepResult run_sweep(const SweepSpec& spec);

// Varying player's payoff at a single point of the family.
double evaluate_point(const SweepSpec& spec, std::span<const double> coords);

// True iff the payoff at `candidate` (axis values, matched to grid points
// within 1e-9) is within `tol` of the sweep maximum. Off-grid candidates
// throw std::invalid_argument.
bool verify_nash_point(const SweepResult& result, std::span<const double> candidate,
                       double tol = 1e-9);

// Trader 1 varies (theta, phi) in the n-player protocol against everyone
// else at du(pi, 0).
SweepSpec du_nash_sweep_spec(const NormalFormGame& game,
                             std::size_t theta_points = kDefaultThetaPoints,
                             std::size_t phi_points = kDefaultPhiPoints,
                             std::optional<int> init_bit = std::nullopt);

// The two-trader mixed equilibrium: Trader 1 mixes Long and quantumLong#1,
// Trader 2 mixes Short and quantumShort, half and half.
MixedQuantumStrategy mixed_equilibrium_strategy(int player);

// The same mixtures written in the three-parameter form, with theta left
// free (theta = 0 for Trader 1 and pi for Trader 2 recovers them).
MixedQuantumStrategy mixed_equilibrium_phase_template(int player);

// Theta curve of `varying` against the opponent's equilibrium mixture.
SweepResult run_mixed_theta_sweep(const NormalFormGame& game, int varying,
                                  std::size_t points = kDefaultThetaPoints);

// max - min of the varying player's payoff over the (alpha, gamma) grid at
// fixed theta. The opponent defaults to its equilibrium mixture.
double flatness_check(const NormalFormGame& game, int varying, double theta,
                      std::size_t points = kDefaultPhasePoints,
                      std::optional<MixedQuantumStrategy> opponent = std::nullopt);

// Header of axis names plus "payoff", 17 significant digits, LF endings.
std::string sweep_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace qtrade

#endif  // QTRADE_LAB_H_
