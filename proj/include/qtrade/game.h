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

#ifndef QTRADE_GAME_H_
#define QTRADE_GAME_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qtrade {

inline constexpr int kMinPlayers = 2;
inline constexpr int kMaxPlayers = 12;

// The two trading strategies. The numeric value is the outcome bit and the
// computational basis state of the trader's qubit.
enum class Move : std::uint8_t { kLong = 0, kShort = 1 };

std::string_view move_name(Move m);
Move other(Move m);

// One strategy per player, Trader 1 first.
using Profile = std::vector<Move>;

// Outcomes are indexed with Trader 1 in the most significant bit, so the
// index of |b1 b2 ... bn> is sum_i b_i * 2^(n-i).
std::size_t outcome_index(std::span<const Move> profile);
Profile profile_of(std::size_t outcome, int players);
Move move_of(std::size_t outcome, int players, int player);
std::string outcome_bits(std::size_t outcome, int players);

// Probability vector over the 2^n outcomes of a game.
//
// Entries down to -1e-12 are clamped to zero; the total must be within 1e-9
// of one. Anything else throws std::invalid_argument.
class OutcomeDistribution {
 public:
  static constexpr double kNegativeSlack = 1e-12;
  static constexpr double kSumTolerance = 1e-9;

  explicit OutcomeDistribution(std::vector<double> probabilities);

  static OutcomeDistribution point_mass(std::size_t outcome, std::size_t size);
  static OutcomeDistribution uniform(std::size_t size);

  std::span<const double> probabilities() const { return probabilities_; }
  double operator[](std::size_t outcome) const { return probabilities_[outcome]; }
  std::size_t size() const { return probabilities_.size(); }

  bool operator==(const OutcomeDistribution&) const = default;

 private:
  std::vector<double> probabilities_;
};

// An n-player, two-strategy normal-form game with a full payoff tensor.
class NormalFormGame {
 public:
  // `payoffs[outcome]` is the payoff vector (one entry per player) for that
  // outcome index. Throws std::invalid_argument on any shape or finiteness
  // violation.
  NormalFormGame(std::string name, int players,
                 std::vector<std::vector<double>> payoffs);

  const std::string& name() const { return name_; }
  int players() const { return players_; }
  std::size_t outcome_count() const { return std::size_t{1} << players_; }

  std::span<const double> payoff(std::size_t outcome) const;
  double payoff(std::size_t outcome, int player) const;

  bool operator==(const NormalFormGame&) const = default;

 private:
  std::string name_;
  int players_;
  std::vector<double> payoffs_;  // outcome-major, players_ entries each
};

std::vector<std::string> builtin_game_names();

// chicken, pd2, pd3, or hawk_dove (params = {V, C}, both positive).
NormalFormGame builtin_game(std::string_view name,
                            std::span<const double> params = {});

// Parses the JSON game document:
//   {"name": str, "players": n, "payoffs": {"<bits>": [p1, ..., pn], ...}}
NormalFormGame load_game(std::string_view document);
NormalFormGame load_game_file(const std::filesystem::path& path);
std::string game_to_json(const NormalFormGame& game);

std::vector<double> payoff(const NormalFormGame& game,
                           std::span<const Move> profile);

std::vector<double> expected_payoffs(const NormalFormGame& game,
                                     const OutcomeDistribution& dist);

// All pure profiles in which every player is weakly best-responding, in
// ascending outcome order.
std::vector<Profile> pure_nash(const NormalFormGame& game);

struct MixedProfile {
  std::vector<double> prob_long;
};

struct MixedNashResult {
  std::optional<MixedProfile> profile;
  std::vector<double> payoffs;  // empty when `profile` is empty
  // True when an indifference equation has a zero denominator, i.e. a
  // player's opponent is indifferent regardless of the mixture.
  bool degenerate = false;
};

// Interior mixed equilibrium of a 2x2 game from the indifference conditions.
MixedNashResult mixed_nash_2p2s(const NormalFormGame& game);

// Expected payoff of each player when player i plays Long with probability
// prob_long[i], independently.
std::vector<double> mixed_payoffs(const NormalFormGame& game,
                                  std::span<const double> prob_long);

std::optional<Move> strictly_dominant(const NormalFormGame& game, int player);

}  // namespace qtrade

#endif  // QTRADE_GAME_H_
