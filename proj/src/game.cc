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

#include "qtrade/game.h"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qtrade/errors.h"
#include "qtrade/format.h"

namespace qtrade {

namespace {

void check_players(int players) {
  if (players < kMinPlayers || players > kMaxPlayers) {
    throw std::invalid_argument("player count must be in [2, 12], got " +
                                std::to_string(players));
  }
}

void check_player_index(const NormalFormGame& game, int player) {
  if (player < 0 || player >= game.players()) {
    throw std::out_of_range("player index " + std::to_string(player) +
                            " out of range for " +
                            std::to_string(game.players()) + " players");
  }
}

std::size_t with_move(std::size_t outcome, int players, int player, Move m) {
  const std::size_t bit = std::size_t{1} << (players - 1 - player);
  return m == Move::kShort ? (outcome | bit) : (outcome & ~bit);
}

// Number of players other than `player` choosing Short.
int others_short(std::size_t outcome, int players, int player) {
  int count = 0;
  for (int j = 0; j < players; ++j) {
    if (j != player && move_of(outcome, players, j) == Move::kShort) ++count;
  }
  return count;
}

NormalFormGame two_by_two(std::string name, std::array<double, 8> cells) {
  return NormalFormGame(std::move(name), 2,
                        {{cells[0], cells[1]},
                         {cells[2], cells[3]},
                         {cells[4], cells[5]},
                         {cells[6], cells[7]}});
}

NormalFormGame make_pd3() {
  constexpr std::array<double, 3> kLong = {3, 2, 0};
  constexpr std::array<double, 3> kShort = {5, 4, 1};
  std::vector<std::vector<double>> payoffs(8, std::vector<double>(3));
  for (std::size_t outcome = 0; outcome < 8; ++outcome) {
    for (int p = 0; p < 3; ++p) {
      const int k = others_short(outcome, 3, p);
      payoffs[outcome][p] =
          move_of(outcome, 3, p) == Move::kLong ? kLong[k] : kShort[k];
    }
  }
  return NormalFormGame("pd3", 3, std::move(payoffs));
}

}  // namespace

std::string_view move_name(Move m) {
  return m == Move::kLong ? "Long" : "Short";
}

Move other(Move m) { return m == Move::kLong ? Move::kShort : Move::kLong; }

std::size_t outcome_index(std::span<const Move> profile) {
  std::size_t index = 0;
  for (Move m : profile) index = (index << 1) | static_cast<std::size_t>(m);
  return index;
}

Profile profile_of(std::size_t outcome, int players) {
  Profile profile(static_cast<std::size_t>(players));
  for (int p = 0; p < players; ++p) profile[p] = move_of(outcome, players, p);
  return profile;
}

Move move_of(std::size_t outcome, int players, int player) {
  return static_cast<Move>((outcome >> (players - 1 - player)) & 1u);
}

std::string outcome_bits(std::size_t outcome, int players) {
  std::string bits(static_cast<std::size_t>(players), '0');
  for (int p = 0; p < players; ++p) {
    if (move_of(outcome, players, p) == Move::kShort) bits[p] = '1';
  }
  return bits;
}

OutcomeDistribution::OutcomeDistribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  const std::size_t n = probabilities_.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument(
        "distribution length must be a power of two, got " +
        std::to_string(n));
  }
  double sum = 0.0;
  for (double& p : probabilities_) {
    if (!std::isfinite(p) || p < -kNegativeSlack) {
      throw std::invalid_argument("distribution has a negative or non-finite entry");
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("distribution is not normalized (sum " +
                                format_double(sum) + ")");
  }
}

OutcomeDistribution OutcomeDistribution::point_mass(std::size_t outcome,
                                                    std::size_t size) {
  if (outcome >= size) throw std::out_of_range("outcome index out of range");
  std::vector<double> p(size, 0.0);
  p[outcome] = 1.0;
  return OutcomeDistribution(std::move(p));
}

OutcomeDistribution OutcomeDistribution::uniform(std::size_t size) {
  return OutcomeDistribution(
      std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

NormalFormGame::NormalFormGame(std::string name, int players,
                               std::vector<std::vector<double>> payoffs)
    : name_(std::move(name)), players_(players) {
  check_players(players);
  if (payoffs.size() != outcome_count()) {
    throw std::invalid_argument("incomplete payoff table: expected " +
                                std::to_string(outcome_count()) +
                                " outcomes, got " +
                                std::to_string(payoffs.size()));
  }
  payoffs_.reserve(outcome_count() * static_cast<std::size_t>(players));
  for (std::size_t o = 0; o < payoffs.size(); ++o) {
    if (payoffs[o].size() != static_cast<std::size_t>(players)) {
      throw std::invalid_argument("outcome " + outcome_bits(o, players) +
                                  " must have exactly " +
                                  std::to_string(players) + " payoffs");
    }
    for (double v : payoffs[o]) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("non-finite payoff at outcome " +
                                    outcome_bits(o, players));
      }
      payoffs_.push_back(v);
    }
  }
}

std::span<const double> NormalFormGame::payoff(std::size_t outcome) const {
  if (outcome >= outcome_count()) {
    throw std::out_of_range("outcome index out of range");
  }
  return std::span<const double>(payoffs_).subspan(
      outcome * static_cast<std::size_t>(players_),
      static_cast<std::size_t>(players_));
}

double NormalFormGame::payoff(std::size_t outcome, int player) const {
  return payoff(outcome)[static_cast<std::size_t>(player)];
}

std::vector<std::string> builtin_game_names() {
  return {"chicken", "pd2", "pd3", "hawk_dove"};
}

NormalFormGame builtin_game(std::string_view name,
                            std::span<const double> params) {
  if (name == "chicken") {
    return two_by_two("chicken", {2, 2, 0, 3, 3, 0, -1, -1});
  }
  if (name == "pd2") {
    return two_by_two("pd2", {3, 3, 0, 5, 5, 0, 1, 1});
  }
  if (name == "pd3") return make_pd3();
  if (name == "hawk_dove") {
    if (params.size() != 2) {
      throw std::invalid_argument("hawk_dove requires parameters V,C");
    }
    const double v = params[0];
    const double c = params[1];
    if (!std::isfinite(v) || !std::isfinite(c) || v <= 0.0 || c <= 0.0) {
      throw std::invalid_argument("hawk_dove requires V > 0 and C > 0");
    }
    // Dove = Long, Hawk = Short. Doves split V, a hawk takes V from a dove,
    // two hawks split V and share the cost C.
    return two_by_two("hawk_dove", {v / 2, v / 2, 0, v, v, 0, (v - c) / 2,
                                    (v - c) / 2});
  }
  throw std::invalid_argument("unknown game: " + std::string(name));
}

NormalFormGame load_game(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed game document: ") +
                                e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("malformed game document: expected an object");
  }
  std::string name = "custom";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      throw std::invalid_argument("malformed game document: name must be a string");
    }
    name = doc["name"].get<std::string>();
  }
  if (!doc.contains("players") || !doc["players"].is_number_integer()) {
    throw std::invalid_argument(
        "malformed game document: players must be an integer");
  }
  const int players = doc["players"].get<int>();
  check_players(players);
  if (!doc.contains("payoffs") || !doc["payoffs"].is_object()) {
    throw std::invalid_argument(
        "malformed game document: payoffs must be an object");
  }

  const std::size_t count = std::size_t{1} << players;
  std::vector<std::vector<double>> payoffs(count);
  std::vector<bool> seen(count, false);
  for (const auto& [key, value] : doc["payoffs"].items()) {
    if (key.size() != static_cast<std::size_t>(players) ||
        key.find_first_not_of("01") != std::string::npos) {
      throw std::invalid_argument("malformed outcome key \"" + key + "\"");
    }
    std::size_t outcome = 0;
    for (char c : key) outcome = (outcome << 1) | static_cast<std::size_t>(c - '0');
    if (!value.is_array()) {
      throw std::invalid_argument("payoffs for \"" + key + "\" must be an array");
    }
    for (const auto& v : value) {
      if (!v.is_number()) {
        throw std::invalid_argument("non-numeric payoff for \"" + key + "\"");
      }
      payoffs[outcome].push_back(v.get<double>());
    }
    seen[outcome] = true;
  }
  for (std::size_t o = 0; o < count; ++o) {
    if (!seen[o]) {
      throw std::invalid_argument("incomplete payoff table: missing outcome \"" +
                                  outcome_bits(o, players) + "\"");
    }
  }
  return NormalFormGame(std::move(name), players, std::move(payoffs));
}

NormalFormGame load_game_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open game file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("cannot read game file " + path.string());
  return load_game(text.str());
}

std::string game_to_json(const NormalFormGame& game) {
  nlohmann::json payoffs = nlohmann::json::object();
  for (std::size_t o = 0; o < game.outcome_count(); ++o) {
    nlohmann::json row = nlohmann::json::array();
    for (double v : game.payoff(o)) row.push_back(v);
    payoffs[outcome_bits(o, game.players())] = std::move(row);
  }
  nlohmann::json doc;
  doc["name"] = game.name();
  doc["players"] = game.players();
  doc["payoffs"] = std::move(payoffs);
  return dump_json(doc);
}

std::vector<double> payoff(const NormalFormGame& game,
                           std::span<const Move> profile) {
  if (profile.size() != static_cast<std::size_t>(game.players())) {
    throw std::invalid_argument("profile length " +
                                std::to_string(profile.size()) +
                                " does not match " +
                                std::to_string(game.players()) + " players");
  }
  auto row = game.payoff(outcome_index(profile));
  return {row.begin(), row.end()};
}

std::vector<double> expected_payoffs(const NormalFormGame& game,
                                     const OutcomeDistribution& dist) {
  if (dist.size() != game.outcome_count()) {
    throw std::invalid_argument("distribution length does not match game");
  }
  std::vector<double> total(static_cast<std::size_t>(game.players()), 0.0);
  for (std::size_t o = 0; o < dist.size(); ++o) {
    if (dist[o] == 0.0) continue;
    auto row = game.payoff(o);
    for (std::size_t p = 0; p < total.size(); ++p) total[p] += dist[o] * row[p];
  }
  return total;
}

std::vector<Profile> pure_nash(const NormalFormGame& game) {
  const int n = game.players();
  std::vector<Profile> equilibria;
  for (std::size_t o = 0; o < game.outcome_count(); ++o) {
    bool stable = true;
    for (int p = 0; p < n && stable; ++p) {
      const std::size_t deviation = with_move(o, n, p, other(move_of(o, n, p)));
      stable = game.payoff(deviation, p) <= game.payoff(o, p);
    }
    if (stable) equilibria.push_back(profile_of(o, n));
  }
  return equilibria;
}

std::vector<double> mixed_payoffs(const NormalFormGame& game,
                                  std::span<const double> prob_long) {
  const int n = game.players();
  if (prob_long.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("mixed profile length does not match game");
  }
  std::vector<double> weights(game.outcome_count());
  for (std::size_t o = 0; o < weights.size(); ++o) {
    double w = 1.0;
    for (int p = 0; p < n; ++p) {
      w *= move_of(o, n, p) == Move::kLong ? prob_long[p] : 1.0 - prob_long[p];
    }
    weights[o] = w;
  }
  std::vector<double> total(static_cast<std::size_t>(n), 0.0);
  for (std::size_t o = 0; o < weights.size(); ++o) {
    for (int p = 0; p < n; ++p) total[p] += weights[o] * game.payoff(o, p);
  }
  return total;
}

MixedNashResult mixed_nash_2p2s(const NormalFormGame& game) {
  if (game.players() != 2) {
    throw std::invalid_argument("mixed_nash_2p2s requires a 2-player game");
  }
  // Probability with which `mixer` plays Long so that `responder` earns the
  // same against either of its pure strategies.
  auto indifference = [&](int mixer, int responder) -> std::optional<double> {
    auto u = [&](Move mixer_move, Move responder_move) {
      Profile profile(2);
      profile[mixer] = mixer_move;
      profile[responder] = responder_move;
      return game.payoff(outcome_index(profile), responder);
    };
    const double long_gap = u(Move::kLong, Move::kLong) - u(Move::kLong, Move::kShort);
    const double short_gap = u(Move::kShort, Move::kLong) - u(Move::kShort, Move::kShort);
    const double denominator = long_gap - short_gap;
    if (denominator == 0.0) return std::nullopt;
    return -short_gap / denominator;
  };

  MixedNashResult result;
  const auto p1 = indifference(0, 1);
  const auto p2 = indifference(1, 0);
  if (!p1 || !p2) {
    result.degenerate = true;
    return result;
  }
  if (!(*p1 > 0.0 && *p1 < 1.0 && *p2 > 0.0 && *p2 < 1.0)) return result;
  result.profile = MixedProfile{{*p1, *p2}};
  result.payoffs = mixed_payoffs(game, result.profile->prob_long);
  return result;
}

std::optional<Move> strictly_dominant(const NormalFormGame& game, int player) {
  check_player_index(game, player);
  const int n = game.players();
  for (Move candidate : {Move::kLong, Move::kShort}) {
    bool dominates = true;
    for (std::size_t o = 0; o < game.outcome_count() && dominates; ++o) {
      if (move_of(o, n, player) != candidate) continue;
      const std::size_t alt = with_move(o, n, player, other(candidate));
      dominates = game.payoff(o, player) > game.payoff(alt, player);
    }
    if (dominates) return candidate;
  }
  return std::nullopt;
}

}  // namespace qtrade
