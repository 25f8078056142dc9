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

#include "qtrade/cli.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qtrade/errors.h"
#include "qtrade/format.h"
#include "qtrade/native_compile.h"
#include "qtrade/qsim.h"

namespace qtrade {

namespace {

using nlohmann::json;

constexpr double kVerifyTolerance = 1e-9;

struct Options {
  std::string game = "";
  std::vector<double> params;
  std::string dist;
  std::string protocol = "ewl2";
  std::string sweep_protocol = "du";
  std::string s1;
  std::string s2;
  std::vector<std::string> strategies;
  std::string m1;
  std::string m2;
  std::vector<std::string> mixes;
  std::optional<int> init;
  std::string entangler = "negative";
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  int player = 1;
  std::vector<std::string> fixed;
  std::string kind = "thetaphi";
  std::size_t theta_points = kDefaultThetaPoints;
  std::size_t phi_points = kDefaultPhiPoints;
  std::size_t points = kDefaultPhasePoints;
  std::string theta = "0";
  std::string candidate;
  std::string out_path;
  int players = 0;
  bool dagger = false;
  bool verify = false;
  bool simplify = false;
  bool compile_protocol = false;
  double xx_scale = 1.0;
  std::string emit_path;
  std::string noise;
};

json error_json(std::string_view kind, std::string_view message) {
  return json{{"error", kind}, {"message", message}};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Inline JSON or "@path".
std::string json_argument(const std::string& value) {
  if (!value.empty() && value.front() == '@') return read_text(value.substr(1));
  return value;
}

EwlEntangler parse_entangler(const std::string& text) {
  if (text == "negative") return EwlEntangler::kNegative;
  if (text == "positive") return EwlEntangler::kPositive;
  throw std::invalid_argument("entangler must be negative or positive");
}

int player_index(int one_based, int players) {
  if (one_based < 1 || one_based > players) {
    throw std::out_of_range("player must be between 1 and " + std::to_string(players));
  }
  return one_based - 1;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream cells(text);
  for (std::string cell; std::getline(cells, cell, ',');) {
    values.push_back(parse_angle(cell));
  }
  return values;
}

json move_json(Move m) { return std::string(move_name(m)); }

std::vector<QuantumStrategy> strategies_for(const Options& o, int players) {
  std::vector<std::string> texts = o.strategies;
  if (texts.empty() && !o.s1.empty() && !o.s2.empty()) texts = {o.s1, o.s2};
  if (texts.size() != static_cast<std::size_t>(players)) {
    throw std::invalid_argument("expected " + std::to_string(players) +
                                " strategies, got " + std::to_string(texts.size()));
  }
  std::vector<QuantumStrategy> out;
  for (const auto& t : texts) out.push_back(parse_strategy(t));
  return out;
}

NormalFormGame zero_game(int players) {
  return NormalFormGame("zero", players,
                        std::vector<std::vector<double>>(
                            std::size_t{1} << players,
                            std::vector<double>(static_cast<std::size_t>(players), 0.0)));
}

NoiseOptions parse_noise(const std::string& text, std::uint64_t default_seed) {
  NoiseOptions opts;
  opts.seed = default_seed;
  std::stringstream cells(text);
  for (std::string cell; std::getline(cells, cell, ',');) {
    const auto eq = cell.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("noise option needs key=value");
    const std::string key = cell.substr(0, eq);
    const std::string value = cell.substr(eq + 1);
    std::size_t used = 0;
    if (key == "p") {
      opts.p2q = std::stod(value, &used);
    } else if (key == "trials") {
      opts.trials = std::stoull(value, &used);
    } else if (key == "seed") {
      opts.seed = std::stoull(value, &used);
    } else {
      throw std::invalid_argument("unknown noise option \"" + key + "\"");
    }
    if (used != value.size()) throw std::invalid_argument("bad noise value \"" + value + "\"");
  }
  return opts;
}

void games_list(std::ostream& out) { out << dump_json(builtin_game_names()) << "\n"; }

void games_show(const Options& o, std::ostream& out) {
  out << game_to_json(resolve_game(o.game, o.params)) << "\n";
}

void classical(const std::string& which, const Options& o, std::ostream& out) {
  const NormalFormGame game = resolve_game(o.game, o.params);
  json result;
  if (which == "pure-nash") {
    result = pure_nash_json(game);
  } else if (which == "mixed-nash") {
    result = mixed_nash_json(mixed_nash_2p2s(game));
  } else if (which == "correlated") {
    const RefereeDistribution dist = parse_distribution(o.dist, game.outcome_count());
    result = correlated_json(game, dist, is_correlated_equilibrium(game, dist));
  } else {
    result = dominant_json(game);
  }
  out << dump_json(result) << "\n";
}

void quantum_play(const Options& o, std::ostream& out) {
  const NormalFormGame game = resolve_game(o.game, o.params);
  ProtocolResult r = [&] {
    if (o.protocol == "ewl2") {
      if (game.players() != 2) throw std::invalid_argument("ewl2 needs a 2-player game");
      const auto s = strategies_for(o, 2);
      return play_ewl2(game, s[0], s[1], parse_entangler(o.entangler));
    }
    if (o.protocol == "du") {
      return play_du(game, strategies_for(o, game.players()), o.init);
    }
    throw std::invalid_argument("unknown protocol \"" + o.protocol + "\"");
  }();
  json result = protocol_json(r.distribution, r.payoffs);
  if (o.shots > 0) result["counts"] = sample_counts(r.distribution, o.shots, o.seed);
  out << dump_json(result) << "\n";
}

void quantum_mixed(const Options& o, std::ostream& out) {
  const NormalFormGame game = resolve_game(o.game, o.params);
  std::vector<std::string> texts = o.mixes;
  if (texts.empty() && !o.m1.empty() && !o.m2.empty()) texts = {o.m1, o.m2};
  if (texts.size() != static_cast<std::size_t>(game.players())) {
    throw std::invalid_argument("expected one mixed strategy per player");
  }
  std::vector<MixedQuantumStrategy> mixes;
  for (const auto& t : texts) mixes.push_back(parse_mixed_strategy(json_argument(t)));
  MixedProtocolResult r = [&] {
    if (o.protocol == "ewl2") {
      if (game.players() != 2) throw std::invalid_argument("ewl2 needs a 2-player game");
      return play_mixed_quantum(game, mixes[0], mixes[1], parse_entangler(o.entangler));
    }
    if (o.protocol == "du") return play_du_mixed(game, mixes, o.init);
    throw std::invalid_argument("unknown protocol \"" + o.protocol + "\"");
  }();
  json result = protocol_json(r.distribution, r.payoffs);
  if (o.shots > 0) result["counts"] = sample_counts(r.distribution, o.shots, o.seed);
  out << dump_json(result) << "\n";
}

SweepSpec thetaphi_spec(const Options& o, const NormalFormGame& game) {
  const int n = game.players();
  const int varying = player_index(o.player, n);
  SweepSpec spec{
      .protocol = SweepProtocol::kDu,
      .game = game,
      .varying_player = varying,
      .fixed = {},
      .axes = {theta_axis(o.theta_points), phi_axis(o.phi_points)},
      .family = du_family(),
      .init_bit = o.init,
      .entangler = parse_entangler(o.entangler),
  };
  std::string fallback = "du:theta=pi,phi=0";
  if (o.sweep_protocol == "ewl2") {
    if (n != 2) throw std::invalid_argument("ewl2 needs a 2-player game");
    spec.protocol = SweepProtocol::kEwl2;
    spec.family = ewl_family();
    fallback = "named:quantumLong";
  } else if (o.sweep_protocol != "du") {
    throw std::invalid_argument("unknown protocol \"" + o.sweep_protocol + "\"");
  }
  // One --fixed applies to every other player; otherwise one per other player.
  std::vector<std::string> fixed = o.fixed;
  if (fixed.empty()) fixed = {fallback};
  if (fixed.size() != 1 && fixed.size() != static_cast<std::size_t>(n - 1)) {
    throw std::invalid_argument("--fixed takes one strategy or one per other player");
  }
  std::size_t next = 0;
  for (int p = 0; p < n; ++p) {
    if (p == varying) {
      spec.fixed.push_back(MixedQuantumStrategy::pure(QuantumStrategy::named(NamedStrategy::kLong)));
      continue;
    }
    const std::string& text = fixed.size() == 1 ? fixed[0] : fixed[next++];
    spec.fixed.push_back(MixedQuantumStrategy::pure(parse_strategy(text)));
  }
  return spec;
}

void sweep(const Options& o, std::ostream& out) {
  const NormalFormGame game = resolve_game(o.game, o.params);
  SweepResult result = [&] {
    if (o.kind == "thetaphi") return run_sweep(thetaphi_spec(o, game));
    if (o.kind == "mixed-theta") {
      if (o.sweep_protocol != "ewl2") throw std::invalid_argument("mixed-theta sweeps use ewl2");
      return run_mixed_theta_sweep(game, player_index(o.player, game.players()),
                                   o.theta_points);
    }
    throw std::invalid_argument("unknown sweep kind \"" + o.kind + "\"");
  }();
  json summary = sweep_json(result);
  if (!o.candidate.empty()) {
    summary["nash"] = verify_nash_point(result, parse_list(o.candidate));
  }
  if (!o.out_path.empty()) {
    emit_csv(result, o.out_path);
    summary["csv"] = o.out_path;
  }
  out << dump_json(summary) << "\n";
}

void flatness(const Options& o, std::ostream& out) {
  const NormalFormGame game = resolve_game(o.game, o.params);
  const int varying = player_index(o.player, game.players());
  const double theta = parse_angle(o.theta);
  const double spread = flatness_check(game, varying, theta, o.points);
  out << dump_json(json{{"player", o.player}, {"theta", theta}, {"points", o.points},
                        {"spread", spread}})
      << "\n";
}

void compile(const Options& o, std::ostream& out) {
  const int n = o.players;
  if (n < kMinPlayers || n > kMaxQubits) {
    throw std::out_of_range("--players must be between 2 and 12");
  }
  const int init = o.init.value_or(default_init_bit(n));
  std::optional<std::vector<QuantumStrategy>> strategies;
  Circuit circuit(n, o.xx_scale);
  if (o.compile_protocol) {
    strategies = o.strategies.empty()
                     ? std::vector<QuantumStrategy>(static_cast<std::size_t>(n),
                                                    QuantumStrategy::du(std::numbers::pi, 0.0))
                     : strategies_for(o, n);
    circuit = compile_protocol(n, *strategies, init,
                               ProtocolCompileOptions{o.simplify, o.xx_scale});
  } else {
    circuit = compile_entangler(n, o.dagger, o.xx_scale);
  }

  json result{{"qubits", n},
              {"ops", circuit.ops().size()},
              {"entangling_gates", entangling_gate_count(circuit)}};
  if (o.verify) {
    double deviation = 0.0;
    if (strategies) {
      const ProtocolResult ideal = play_du(zero_game(n), *strategies, init);
      const StateVector state = run_circuit(circuit, state_init(n, 0));
      deviation = max_deviation_up_to_phase(ideal.final_state.amplitudes(),
                                            state.amplitudes());
    } else {
      if (n > kMaxUnitaryQubits) throw std::out_of_range("--verify needs at most 10 qubits");
      deviation = max_deviation_up_to_phase(
          matrix_exponential_entangler(o.dagger ? -1 : 1, n, EntanglerBasis::kPauliX),
          circuit_unitary(circuit));
    }
    result["max_deviation"] = deviation;
    result["verified"] = deviation <= kVerifyTolerance;
  }
  if (!o.noise.empty()) {
    const NoiseOptions noise = parse_noise(o.noise, o.seed);
    // Protocol circuits prepare their own input from |0...0>.
    const OutcomeDistribution dist =
        noisy_run(circuit, strategies ? 0 : init, noise);
    const auto probs = dist.probabilities();
    result["noise"] = json{
        {"p2q", noise.p2q},
        {"trials", noise.trials},
        {"seed", noise.seed},
        {"distribution", std::vector<double>(probs.begin(), probs.end())},
        {"peak", *std::max_element(probs.begin(), probs.end())}};
  }
  if (!o.emit_path.empty()) {
    std::ofstream file(o.emit_path, std::ios::binary);
    if (!file) throw IoError("cannot open " + o.emit_path + " for writing");
    file << circuit_to_json(circuit) << "\n";
    if (!file) throw IoError("failed writing " + o.emit_path);
    result["emitted"] = o.emit_path;
  }
  out << dump_json(result) << "\n";
}

void add_game_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--game", o.game, "built-in name or @file.json")->required();
  cmd->add_option("--params", o.params, "game parameters, e.g. V,C for hawk_dove")
      ->delimiter(',');
}

int fail(std::ostream& err, int code, std::string_view kind, std::string_view message) {
  err << dump_json(error_json(kind, message)) << "\n";
  return code;
}

}  // namespace

NormalFormGame resolve_game(const std::string& ref, const std::vector<double>& params) {
  if (!ref.empty() && ref.front() == '@') {
    if (!params.empty()) throw std::invalid_argument("game files take no parameters");
    return load_game_file(ref.substr(1));
  }
  return builtin_game(ref, params);
}

json pure_nash_json(const NormalFormGame& game) {
  json list = json::array();
  for (const Profile& p : pure_nash(game)) {
    json moves = json::array();
    for (Move m : p) moves.push_back(move_json(m));
    list.push_back(json{{"profile", moves},
                        {"outcome", outcome_bits(outcome_index(p), game.players())},
                        {"payoffs", payoff(game, p)}});
  }
  return json{{"equilibria", list}};
}

json mixed_nash_json(const MixedNashResult& result) {
  if (!result.profile) {
    return json{{"prob_long", nullptr}, {"payoffs", nullptr},
                {"degenerate", result.degenerate}};
  }
  return json{{"prob_long", result.profile->prob_long},
              {"payoffs", result.payoffs},
              {"degenerate", result.degenerate}};
}

json correlated_json(const NormalFormGame& game, const RefereeDistribution& dist,
                     const CorrelatedVerdict& verdict) {
  json result{{"equilibrium", verdict.equilibrium},
              {"payoffs", expected_payoffs(game, dist)}};
  if (!verdict.violations.empty()) {
    json list = json::array();
    for (const auto& v : verdict.violations) {
      list.push_back(json{{"player", v.player + 1},
                          {"advice", move_json(v.advice)},
                          {"follow_payoff", v.follow_payoff},
                          {"deviation_payoff", v.deviation_payoff}});
    }
    result["violations"] = list;
  }
  return result;
}

json dominant_json(const NormalFormGame& game) {
  json list = json::array();
  for (int p = 0; p < game.players(); ++p) {
    const auto m = strictly_dominant(game, p);
    list.push_back(m ? move_json(*m) : json(nullptr));
  }
  return json{{"dominant", list}};
}

json protocol_json(const OutcomeDistribution& dist, const std::vector<double>& payoffs) {
  const auto probs = dist.probabilities();
  return json{{"distribution", std::vector<double>(probs.begin(), probs.end())},
              {"payoffs", payoffs}};
}

json sweep_json(const SweepResult& result) {
  json axes = json::array();
  std::vector<double> argmax;
  for (std::size_t a = 0; a < result.spec.axes.size(); ++a) {
    const Axis& axis = result.spec.axes[a];
    axes.push_back(json{{"name", axis.name}, {"lo", axis.lo}, {"hi", axis.hi},
                        {"points", axis.points}});
    argmax.push_back(axis.values()[result.argmax[a]]);
  }
  return json{{"player", result.spec.varying_player + 1},
              {"axes", axes},
              {"rows", result.values.size()},
              {"argmax", argmax},
              {"argmax_payoff", result.argmax_payoff}};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum and classical trading games", "qtrade"};
  app.require_subcommand(1);
  Options o;

  auto* games = app.add_subcommand("games", "built-in games");
  games->require_subcommand(1);
  auto* games_list_cmd = games->add_subcommand("list", "list built-in game names");
  auto* games_show_cmd = games->add_subcommand("show", "print a game as JSON");
  add_game_options(games_show_cmd, o);

  auto* classical_cmd = app.add_subcommand("classical", "classical equilibria");
  classical_cmd->require_subcommand(1);
  std::vector<CLI::App*> classical_subs;
  for (const char* name : {"pure-nash", "mixed-nash", "correlated", "dominant"}) {
    auto* sub = classical_cmd->add_subcommand(name);
    add_game_options(sub, o);
    if (std::string(name) == "correlated") {
      sub->add_option("--dist", o.dist, "comma-separated outcome probabilities")->required();
    }
    classical_subs.push_back(sub);
  }

  auto* quantum = app.add_subcommand("quantum", "quantum referees");
  quantum->require_subcommand(1);
  auto* play = quantum->add_subcommand("play", "pure quantum strategies");
  auto* mixed = quantum->add_subcommand("mixed", "mixed quantum strategies");
  for (auto* sub : {play, mixed}) {
    add_game_options(sub, o);
    sub->add_option("--protocol", o.protocol, "ewl2 or du");
    sub->add_option("--init", o.init, "initial qubit value for du");
    sub->add_option("--entangler", o.entangler, "negative or positive (ewl2)");
    sub->add_option("--shots", o.shots, "also draw this many samples");
    sub->add_option("--seed", o.seed, "sampling seed");
  }
  play->add_option("--s1", o.s1, "Trader 1 strategy");
  play->add_option("--s2", o.s2, "Trader 2 strategy");
  play->add_option("--strategy", o.strategies, "one per player, in order");
  mixed->add_option("--m1", o.m1, "Trader 1 mixture (JSON or @file)");
  mixed->add_option("--m2", o.m2, "Trader 2 mixture (JSON or @file)");
  mixed->add_option("--mix", o.mixes, "one mixture per player, in order");

  auto* sweep_cmd = app.add_subcommand("sweep", "payoff landscape of one player");
  add_game_options(sweep_cmd, o);
  sweep_cmd->add_option("--protocol", o.sweep_protocol, "du or ewl2");
  sweep_cmd->add_option("--player", o.player, "varying player, from 1");
  sweep_cmd->add_option("--fixed", o.fixed, "other players' strategies");
  sweep_cmd->add_option("--kind", o.kind, "thetaphi or mixed-theta");
  sweep_cmd->add_option("--theta-points", o.theta_points);
  sweep_cmd->add_option("--phi-points", o.phi_points);
  sweep_cmd->add_option("--init", o.init);
  sweep_cmd->add_option("--entangler", o.entangler);
  sweep_cmd->add_option("--candidate", o.candidate, "grid point to test, e.g. pi,0");
  sweep_cmd->add_option("--out", o.out_path, "CSV output path");

  auto* flat_cmd = app.add_subcommand("flatness", "(alpha, gamma) payoff spread");
  add_game_options(flat_cmd, o);
  flat_cmd->add_option("--player", o.player, "varying player, from 1");
  flat_cmd->add_option("--theta", o.theta, "fixed theta");
  flat_cmd->add_option("--points", o.points, "grid points per axis");

  auto* compile_cmd = app.add_subcommand("compile", "native-gate circuits");
  compile_cmd->add_option("--players", o.players)->required();
  compile_cmd->add_flag("--dagger", o.dagger, "inverse entangler");
  compile_cmd->add_flag("--verify", o.verify, "check against the ideal unitary or state");
  compile_cmd->add_flag("--protocol", o.compile_protocol, "compile the whole protocol");
  compile_cmd->add_flag("--simplify", o.simplify, "fold the input preparation");
  compile_cmd->add_option("--strategy", o.strategies, "one per player, in order");
  compile_cmd->add_option("--init", o.init);
  compile_cmd->add_option("--xx-scale", o.xx_scale, "1 or 0.5");
  compile_cmd->add_option("--emit", o.emit_path, "write circuit JSON here");
  compile_cmd->add_option("--noise", o.noise, "p=...,trials=...,seed=...");
  compile_cmd->add_option("--seed", o.seed, "default noise seed");

  static const std::vector<std::string> kCommands = {
      "games", "classical", "quantum", "sweep", "flatness", "compile"};
  if (!args.empty() && args[0].front() != '-' &&
      std::find(kCommands.begin(), kCommands.end(), args[0]) == kCommands.end()) {
    return fail(err, kExitUsage, "usage", "unknown command \"" + args[0] + "\"");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ConversionError& e) {
    return fail(err, kExitValidation, "validation", e.what());
  } catch (const CLI::ValidationError& e) {
    return fail(err, kExitValidation, "validation", e.what());
  } catch (const CLI::ParseError& e) {
    return fail(err, kExitUsage, "usage", e.what());
  }

  try {
    if (games_list_cmd->parsed()) {
      games_list(out);
    } else if (games_show_cmd->parsed()) {
      games_show(o, out);
    } else if (classical_cmd->parsed()) {
      for (auto* sub : classical_subs) {
        if (sub->parsed()) classical(sub->get_name(), o, out);
      }
    } else if (play->parsed()) {
      quantum_play(o, out);
    } else if (mixed->parsed()) {
      quantum_mixed(o, out);
    } else if (sweep_cmd->parsed()) {
      sweep(o, out);
    } else if (flat_cmd->parsed()) {
      flatness(o, out);
    } else if (compile_cmd->parsed()) {
      compile(o, out);
    }
  } catch (const IoError& e) {
    return fail(err, kExitIo, "io", e.what());
  } catch (const std::exception& e) {
    return fail(err, kExitValidation, "validation", e.what());
  }
  return kExitOk;
}

}  // namespace qtrade
