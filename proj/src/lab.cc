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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qtrade/errors.h"
#include "qtrade/format.h"
#include "qtrade/parallel.h"

namespace qtrade {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGridMatch = 1e-9;

void axis_domain(const std::string& name, double& lo, double& hi) {
  if (name == "theta") {
    lo = 0.0;
    hi = kPi;
  } else if (name == "phi") {
    lo = 0.0;
    hi = kPi / 2;
  } else if (name == "alpha" || name == "gamma") {
    lo = 0.0;
    hi = 2 * kPi;
  } else {
    throw std::invalid_argument("unknown axis \"" + name + "\"");
  }
}

void validate(const SweepSpec& spec) {
  const int n = spec.game.players();
  if (spec.varying_player < 0 || spec.varying_player >= n) {
    throw std::invalid_argument("varying player out of range");
  }
  if (spec.fixed.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("sweep needs one fixed strategy slot per player");
  }
  if (spec.protocol == SweepProtocol::kEwl2 && n != 2) {
    throw std::invalid_argument("ewl2 sweeps need a 2-player game");
  }
  if (spec.axes.empty() || spec.axes.size() > 2) {
    throw std::invalid_argument("sweep needs one or two axes");
  }
  for (const auto& axis : spec.axes) {
    if (axis.points == 0) {
      throw std::invalid_argument("axis \"" + axis.name + "\" is empty");
    }
    double lo = 0.0, hi = 0.0;
    axis_domain(axis.name, lo, hi);
    if (axis.lo < lo || axis.hi > hi || axis.lo > axis.hi) {
      throw std::invalid_argument("axis \"" + axis.name + "\" leaves its domain");
    }
    if (axis.points == 1 && axis.lo != axis.hi) {
      throw std::invalid_argument("single-point axis \"" + axis.name +
                                  "\" needs lo == hi");
    }
  }
  if (!spec.family.make) throw std::invalid_argument("sweep has no strategy family");
}

std::size_t grid_size(const std::vector<Axis>& axes) {
  std::size_t size = 1;
  for (const auto& a : axes) size *= a.points;
  return size;
}

std::size_t grid_index(const Axis& axis, double value) {
  const auto values = axis.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - value) <= kGridMatch * std::max(1.0, std::abs(value))) {
      return i;
    }
  }
  throw std::invalid_argument("candidate " + format_double(value) +
                              " is not on the " + axis.name + " grid");
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double steps = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = lo + (hi - lo) * (static_cast<double>(i) / steps);
  }
  out.back() = hi;
  return out;
}

Axis theta_axis(std::size_t points) { return Axis{"theta", 0.0, kPi, points}; }
Axis phi_axis(std::size_t points) { return Axis{"phi", 0.0, kPi / 2, points}; }
Axis alpha_axis(std::size_t points) { return Axis{"alpha", 0.0, 2 * kPi, points}; }
Axis gamma_axis(std::size_t points) { return Axis{"gamma", 0.0, 2 * kPi, points}; }

StrategyFamily ewl_family() {
  return {"ewl(theta,phi)", [](std::span<const double> c) {
            return MixedQuantumStrategy::pure(QuantumStrategy::ewl(c[0], c[1]));
          }};
}

StrategyFamily du_family() {
  return {"du(theta,phi)", [](std::span<const double> c) {
            return MixedQuantumStrategy::pure(QuantumStrategy::du(c[0], c[1]));
          }};
}

StrategyFamily phase_family(double theta) {
  return {"full(alpha," + format_double(theta) + ",gamma)",
          [theta](std::span<const double> c) {
            return MixedQuantumStrategy::pure(QuantumStrategy::full(c[0], theta, c[1]));
          }};
}

StrategyFamily mixed_theta_family(const MixedQuantumStrategy& phase_template) {
  return {"mixed full(alpha_k,theta,gamma_k)",
          [phase_template](std::span<const double> c) {
            std::vector<WeightedStrategy> parts;
            for (const auto& w : phase_template.components()) {
              parts.push_back(WeightedStrategy{
                  w.weight, QuantumStrategy::full(w.strategy.alpha(), c[0],
                                                  w.strategy.gamma())});
            }
            return MixedQuantumStrategy(std::move(parts));
          }};
}

std::vector<double> SweepResult::coordinates(std::size_t flat_index) const {
  std::vector<double> coords(spec.axes.size());
  for (std::size_t a = spec.axes.size(); a-- > 0;) {
    const std::size_t k = spec.axes[a].points;
    coords[a] = spec.axes[a].values()[flat_index % k];
    flat_index /= k;
  }
  return coords;
}

double evaluate_point(const SweepSpec& spec, std::span<const double> coords) {
  std::vector<MixedQuantumStrategy> mixes = spec.fixed;
  mixes[spec.varying_player] = spec.family.make(coords);
  const MixedProtocolResult r =
      spec.protocol == SweepProtocol::kEwl2
          ? play_mixed_quantum(spec.game, mixes[0], mixes[1], spec.entangler)
          : play_du_mixed(spec.game, mixes, spec.init_bit);
  return r.payoffs[spec.varying_player];
}

SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  std::vector<std::vector<double>> axis_values;
  for (const auto& a : spec.axes) axis_values.push_back(a.values());

  const std::size_t total = grid_size(spec.axes);
  std::vector<double> values(total);
  parallel_for(total, [&](std::size_t flat) {
    std::vector<double> coords(spec.axes.size());
    std::size_t rest = flat;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      coords[a] = axis_values[a][rest % spec.axes[a].points];
      rest /= spec.axes[a].points;
    }
    values[flat] = evaluate_point(spec, coords);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i) {
    if (values[i] > values[best]) best = i;
  }
  SweepResult result{spec, std::move(values), {}, 0.0};
  result.argmax.resize(spec.axes.size());
  std::size_t rest = best;
  for (std::size_t a = spec.axes.size(); a-- > 0;) {
    result.argmax[a] = rest % spec.axes[a].points;
    rest /= spec.axes[a].points;
  }
  result.argmax_payoff = result.values[best];
  return result;
}

bool verify_nash_point(const SweepResult& result, std::span<const double> candidate,
                       double tol) {
  const auto& axes = result.spec.axes;
  if (candidate.size() != axes.size()) {
    throw std::invalid_argument("candidate needs one coordinate per axis");
  }
  std::size_t flat = 0;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    flat = flat * axes[a].points + grid_index(axes[a], candidate[a]);
  }
  const double best = *std::max_element(result.values.begin(), result.values.end());
  return result.values[flat] >= best - tol;
}

SweepSpec du_nash_sweep_spec(const NormalFormGame& game, std::size_t theta_points,
                             std::size_t phi_points, std::optional<int> init_bit) {
  const auto at_equilibrium =
      MixedQuantumStrategy::pure(QuantumStrategy::du(kPi, 0.0));
  return SweepSpec{
      .protocol = SweepProtocol::kDu,
      .game = game,
      .varying_player = 0,
      .fixed = std::vector<MixedQuantumStrategy>(
          static_cast<std::size_t>(game.players()), at_equilibrium),
      .axes = {theta_axis(theta_points), phi_axis(phi_points)},
      .family = du_family(),
      .init_bit = init_bit,
      .entangler = EwlEntangler::kNegative,
  };
}

MixedQuantumStrategy mixed_equilibrium_strategy(int player) {
  using enum NamedStrategy;
  if (player == 0) {
    return MixedQuantumStrategy({{0.5, QuantumStrategy::named(kLong)},
                                 {0.5, QuantumStrategy::named(kQuantumLong1)}});
  }
  if (player == 1) {
    return MixedQuantumStrategy({{0.5, QuantumStrategy::named(kShort)},
                                 {0.5, QuantumStrategy::named(kQuantumShort)}});
  }
  throw std::out_of_range("mixed equilibrium is defined for players 0 and 1");
}

MixedQuantumStrategy mixed_equilibrium_phase_template(int player) {
  // Long = full(0, 0, .), quantumLong#1 = full(3pi/2, 0, .),
  // Short = full(., pi, 0), quantumShort = full(., pi, 3pi/2).
  if (player == 0) {
    return MixedQuantumStrategy({{0.5, QuantumStrategy::full(0.0, 0.0, 0.0)},
                                 {0.5, QuantumStrategy::full(1.5 * kPi, 0.0, 0.0)}});
  }
  if (player == 1) {
    return MixedQuantumStrategy({{0.5, QuantumStrategy::full(0.0, kPi, 0.0)},
                                 {0.5, QuantumStrategy::full(0.0, kPi, 1.5 * kPi)}});
  }
  throw std::out_of_range("mixed equilibrium is defined for players 0 and 1");
}

SweepResult run_mixed_theta_sweep(const NormalFormGame& game, int varying,
                                  std::size_t points) {
  if (game.players() != 2) {
    throw std::invalid_argument("mixed theta sweep needs a 2-player game");
  }
  const int opponent = 1 - varying;
  std::vector<MixedQuantumStrategy> fixed(2, mixed_equilibrium_strategy(opponent));
  SweepSpec spec{
      .protocol = SweepProtocol::kEwl2,
      .game = game,
      .varying_player = varying,
      .fixed = std::move(fixed),
      .axes = {theta_axis(points)},
      .family = mixed_theta_family(mixed_equilibrium_phase_template(varying)),
      .init_bit = std::nullopt,
      .entangler = EwlEntangler::kNegative,
  };
  return run_sweep(spec);
}

double flatness_check(const NormalFormGame& game, int varying, double theta,
                      std::size_t points, std::optional<MixedQuantumStrategy> opponent) {
  if (game.players() != 2) {
    throw std::invalid_argument("flatness check needs a 2-player game");
  }
  if (varying != 0 && varying != 1) throw std::out_of_range("varying player must be 0 or 1");
  const MixedQuantumStrategy other =
      opponent ? *opponent : mixed_equilibrium_strategy(1 - varying);
  SweepSpec spec{
      .protocol = SweepProtocol::kEwl2,
      .game = game,
      .varying_player = varying,
      .fixed = std::vector<MixedQuantumStrategy>(2, other),
      .axes = {alpha_axis(points), gamma_axis(points)},
      .family = phase_family(theta),
      .init_bit = std::nullopt,
      .entangler = EwlEntangler::kNegative,
  };
  const SweepResult r = run_sweep(spec);
  const auto [lo, hi] = std::minmax_element(r.values.begin(), r.values.end());
  return *hi - *lo;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out;
  for (const auto& axis : result.spec.axes) out += axis.name + ",";
  out += "payoff\n";
  for (std::size_t i = 0; i < result.values.size(); ++i) {
    for (double c : result.coordinates(i)) out += format_double(c) + ",";
    out += format_double(result.values[i]) + "\n";
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  if (result.values.empty()) throw std::invalid_argument("nothing to emit");
  const std::string text = sweep_csv(result);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV file");
  std::stringstream header(line);
  for (std::string cell; std::getline(header, cell, ',');) table.header.push_back(cell);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) {
      std::size_t used = 0;
      row.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument("bad CSV number " + cell);
    }
    if (row.size() != table.header.size()) {
      throw std::invalid_argument("CSV row width does not match header");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace qtrade
