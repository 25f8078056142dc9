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

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qtrade/format.h"

namespace qtrade {

namespace {

constexpr double kCliSumTolerance = 1e-6;

void check_player(int players, int player) {
  if (player < 0 || player >= players) {
    throw std::out_of_range("player index " + std::to_string(player) +
                            " out of range");
  }
}

// Removes bit `player` (counted from the most significant of `players` bits).
std::size_t opponents_index(std::size_t outcome, int players, int player) {
  const int shift = players - 1 - player;
  const std::size_t low = outcome & ((std::size_t{1} << shift) - 1);
  const std::size_t high = outcome >> (shift + 1);
  return (high << shift) | low;
}

// Inverse of opponents_index for a fixed move of `player`.
std::size_t insert_move(std::size_t opponents, int players, int player, Move m) {
  const int shift = players - 1 - player;
  const std::size_t low = opponents & ((std::size_t{1} << shift) - 1);
  const std::size_t high = opponents >> shift;
  return (((high << 1) | static_cast<std::size_t>(m)) << shift) | low;
}

double conditional_payoff(const NormalFormGame& game,
                          const std::vector<double>& conditional, int player,
                          Move play) {
  double total = 0.0;
  for (std::size_t k = 0; k < conditional.size(); ++k) {
    if (conditional[k] == 0.0) continue;
    const std::size_t o = insert_move(k, game.players(), player, play);
    total += conditional[k] * game.payoff(o, player);
  }
  return total;
}

}  // namespace

std::vector<double> conditional_advice(const RefereeDistribution& dist,
                                       int players, int player, Move advice) {
  if (dist.size() != (std::size_t{1} << players)) {
    throw std::invalid_argument("distribution length does not match players");
  }
  check_player(players, player);
  std::vector<double> joint(dist.size() / 2, 0.0);
  double marginal = 0.0;
  for (std::size_t o = 0; o < dist.size(); ++o) {
    if (move_of(o, players, player) != advice) continue;
    joint[opponents_index(o, players, player)] = dist[o];
    marginal += dist[o];
  }
  if (!(marginal > 0.0)) {
    throw std::invalid_argument("advice never issued");
  }
  for (double& p : joint) p /= marginal;
  return joint;
}

ObedienceReport obedience_payoffs(const NormalFormGame& game,
                                  const RefereeDistribution& dist, int player,
                                  Move advice) {
  ObedienceReport report;
  report.player = player;
  report.advice = advice;
  report.conditional = conditional_advice(dist, game.players(), player, advice);
  report.follow_payoff =
      conditional_payoff(game, report.conditional, player, advice);
  // Only one alternative exists with two strategies.
  report.deviation_payoff =
      conditional_payoff(game, report.conditional, player, other(advice));
  return report;
}

CorrelatedVerdict is_correlated_equilibrium(const NormalFormGame& game,
                                            const RefereeDistribution& dist,
                                            double tol) {
  if (dist.size() != game.outcome_count()) {
    throw std::invalid_argument("distribution length does not match game");
  }
  CorrelatedVerdict verdict;
  for (int p = 0; p < game.players(); ++p) {
    for (Move advice : {Move::kLong, Move::kShort}) {
      double marginal = 0.0;
      for (std::size_t o = 0; o < dist.size(); ++o) {
        if (move_of(o, game.players(), p) == advice) marginal += dist[o];
      }
      if (!(marginal > 0.0)) continue;
      ObedienceReport report = obedience_payoffs(game, dist, p, advice);
      if (!report.obedient(tol)) {
        verdict.equilibrium = false;
        verdict.violations.push_back(report);
      }
      verdict.reports.push_back(std::move(report));
    }
  }
  return verdict;
}

RefereeDistribution parse_distribution(std::string_view text,
                                       std::size_t outcomes) {
  std::vector<double> values;
  while (true) {
    const auto comma = text.find(',');
    std::string_view token = text.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double v = 0.0;
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (token.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
      throw std::invalid_argument("invalid probability \"" + std::string(token) + "\"");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (values.size() != outcomes) {
    throw std::invalid_argument("distribution needs " + std::to_string(outcomes) +
                                " entries, got " + std::to_string(values.size()));
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  if (std::abs(sum - 1.0) > kCliSumTolerance) {
    throw std::invalid_argument("distribution sums to " + format_double(sum) +
                                ", not 1");
  }
  for (double& v : values) v /= sum;
  return RefereeDistribution(std::move(values));
}

}  // namespace qtrade
