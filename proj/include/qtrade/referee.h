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

#ifndef QTRADE_REFEREE_H_
#define QTRADE_REFEREE_H_

#include <cstddef>
#include <string_view>
#include <vector>

#include "qtrade/game.h"

namespace qtrade {

// A classical referee is fully described by its public distribution over
// outcomes.
using RefereeDistribution = OutcomeDistribution;

inline constexpr double kDefaultEquilibriumTolerance = 1e-9;

struct ObedienceReport {
  int player = 0;
  Move advice = Move::kLong;
  double follow_payoff = 0.0;
  double deviation_payoff = 0.0;
  // Distribution over the opponents' advice, indexed like an outcome of the
  // (n-1)-player game obtained by deleting `player`'s bit.
  std::vector<double> conditional;

  bool obedient(double tol) const { return follow_payoff >= deviation_payoff - tol; }
};

struct CorrelatedVerdict {
  bool equilibrium = true;
  // One report per (player, advice) with positive marginal.
  std::vector<ObedienceReport> reports;
  std::vector<ObedienceReport> violations;
};

// P(opponents' advice | player advised `advice`). Throws std::invalid_argument
// ("advice never issued") when the advice has zero marginal probability.
std::vector<double> conditional_advice(const RefereeDistribution& dist,
                                       int players, int player, Move advice);

ObedienceReport obedience_payoffs(const NormalFormGame& game,
                                  const RefereeDistribution& dist, int player,
                                  Move advice);

// Every positive-marginal advice must be weakly obeyed (within `tol`).
// Zero-marginal advice is skipped.
CorrelatedVerdict is_correlated_equilibrium(
    const NormalFormGame& game, const RefereeDistribution& dist,
    double tol = kDefaultEquilibriumTolerance);

// Comma-separated probabilities in outcome-index order. A total within 1e-6
// of one is renormalized; anything further off is rejected.
RefereeDistribution parse_distribution(std::string_view text,
                                       std::size_t outcomes);

}  // namespace qtrade

#endif  // QTRADE_REFEREE_H_
