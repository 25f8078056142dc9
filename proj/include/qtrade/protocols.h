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

#ifndef QTRADE_PROTOCOLS_H_
#define QTRADE_PROTOCOLS_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qtrade/game.h"
#include "qtrade/qsim.h"

namespace qtrade {

enum class StrategyForm { kEwl, kDu, kFull, kNamed };

enum class NamedStrategy {
  kLong,           // identity
  kShort,          // D = [[0, 1], [-1, 0]]
  kQuantumLong,    // diag(i, -i)
  kQuantumLong1,   // diag(-i, i)
  kQuantumShort,   // [[0, -i], [-i, 0]]
};

std::string_view named_strategy_name(NamedStrategy s);
NamedStrategy parse_named_strategy(std::string_view name);

// A single-qubit strategy in one of the supported parametrizations. Angles
// are radians.
//
//   ewl(theta, phi)  [[e^{i phi} c, s], [-s, e^{-i phi} c]]
//   du(theta, phi)   [[c, e^{i phi} s], [-e^{-i phi} s, c]]
//   full(a, theta, g) [[e^{i a} c, e^{i g} s], [-e^{-i g} s, e^{-i a} c]]
//
// with c = cos(theta/2), s = sin(theta/2). theta is in [0, pi] and phi in
// [0, pi/2] for ewl/du; alpha and gamma are in [0, 2pi].
class QuantumStrategy {
 public:
  static QuantumStrategy ewl(double theta, double phi);
  static QuantumStrategy du(double theta, double phi);
  static QuantumStrategy full(double alpha, double theta, double gamma);
  static QuantumStrategy named(NamedStrategy name);

  StrategyForm form() const { return form_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }      // ewl, du
  double alpha() const { return alpha_; }  // full
  double gamma() const { return gamma_; }  // full
  NamedStrategy name() const { return name_; }

  // Round-trips through parse_strategy.
  std::string describe() const;

  bool operator==(const QuantumStrategy&) const = default;

 private:
  QuantumStrategy() = default;

  StrategyForm form_ = StrategyForm::kNamed;
  double theta_ = 0.0;
  double phi_ = 0.0;
  double alpha_ = 0.0;
  double gamma_ = 0.0;
  NamedStrategy name_ = NamedStrategy::kLong;
};

UnitaryMatrix strategy_matrix(const QuantumStrategy& s);

struct WeightedStrategy {
  double weight;
  QuantumStrategy strategy;
};

// Probabilistic choice among quantum strategies. Weights are non-negative
// and sum to one within 1e-9.
class MixedQuantumStrategy {
 public:
  explicit MixedQuantumStrategy(std::vector<WeightedStrategy> components);
  static MixedQuantumStrategy pure(const QuantumStrategy& s);

  std::span<const WeightedStrategy> components() const { return components_; }
  bool is_pure() const { return components_.size() == 1; }

 private:
  std::vector<WeightedStrategy> components_;
};

struct ProtocolResult {
  StateVector final_state;
  OutcomeDistribution distribution;
  std::vector<double> payoffs;
};

// Result of classically mixing several protocol runs. There is no single
// final state.
struct MixedProtocolResult {
  OutcomeDistribution distribution;
  std::vector<double> payoffs;
};

// Sign of the exponent in the two-player entangler J = exp(sign i pi/4 D(x)D).
// kNegative maps |00> to (|00> - i|11>)/sqrt2 and is the default.
enum class EwlEntangler { kNegative, kPositive };

// Closed-form final amplitudes (mu1..mu4) over |00>,|01>,|10>,|11> for EWL
// strategies. Under kPositive these are the textbook expressions
//
//   mu1 = cos(phi1+phi2) c1 c2
//   mu2 = -i [sin(phi2) s1 c2 - cos(phi1) c1 s2]
//   mu3 = -i [sin(phi1) c1 s2 - cos(phi2) s1 c2]
//   mu4 = sin(phi1+phi2) c1 c2 + s1 s2
//
// and under kNegative the same expressions with phi -> -phi, conjugated. In
// both cases |mu_k|^2 is exactly the simulated outcome distribution. The
// simulated amplitudes equal diag(1, i, i, 1) mu (kPositive) or
// diag(1, -i, -i, 1) mu (kNegative); the middle phases are not global.
std::array<Complex, 4> ewl_amplitudes_closed_form(
    double theta1, double phi1, double theta2, double phi2,
    EwlEntangler entangler = EwlEntangler::kNegative);

// J^dagger (U1 (x) U2) J |00>, measured and scored.
ProtocolResult play_ewl2(const NormalFormGame& game, const QuantumStrategy& s1,
                         const QuantumStrategy& s2,
                         EwlEntangler entangler = EwlEntangler::kNegative);

// Initial bit used by play_du when none is given: 1 for even n, 0 for odd n.
int default_init_bit(int players);

// J^dagger (U1 (x) ... (x) Un) J |b...b> with J = exp(i pi/4 X^{(x)n}).
ProtocolResult play_du(const NormalFormGame& game,
                       std::span<const QuantumStrategy> strategies,
                       std::optional<int> init_bit = std::nullopt);

// Averages the EWL outcome distributions of every component pair, weighted by
// the product of the component weights.
MixedProtocolResult play_mixed_quantum(
    const NormalFormGame& game, const MixedQuantumStrategy& m1,
    const MixedQuantumStrategy& m2,
    EwlEntangler entangler = EwlEntangler::kNegative);

// Same averaging for the n-player protocol.
MixedProtocolResult play_du_mixed(const NormalFormGame& game,
                                  std::span<const MixedQuantumStrategy> mixes,
                                  std::optional<int> init_bit = std::nullopt);

// "ewl:theta=pi,phi=0", "du:theta=3.14159", "full:alpha=0,theta=pi/2,gamma=0",
// "named:quantumLong". Missing angles default to 0.
QuantumStrategy parse_strategy(std::string_view text);

// [{"weight": w, "strategy": <object or strategy string>}, ...] where a
// strategy object is {"form": "ewl", "theta": t, "phi": p} and so on, or
// {"form": "named", "name": "quantumShort"}.
MixedQuantumStrategy parse_mixed_strategy(std::string_view document);

nlohmann::json strategy_to_json(const QuantumStrategy& s);
nlohmann::json mixed_strategy_to_json(const MixedQuantumStrategy& m);

}  // namespace qtrade

#endif  // QTRADE_PROTOCOLS_H_
