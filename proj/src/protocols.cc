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

#include "qtrade/protocols.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qtrade/format.h"

namespace qtrade {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRangeSlack = 1e-12;
constexpr Complex kI{0.0, 1.0};

void check_range(std::string_view what, double value, double lo, double hi) {
  if (!std::isfinite(value) || value < lo - kRangeSlack || value > hi + kRangeSlack) {
    throw std::invalid_argument(std::string(what) + " = " + format_double(value) +
                                " outside [" + format_double(lo) + ", " +
                                format_double(hi) + "]");
  }
}

std::string_view form_name(StrategyForm f) {
  switch (f) {
    case StrategyForm::kEwl:
      return "ewl";
    case StrategyForm::kDu:
      return "du";
    case StrategyForm::kFull:
      return "full";
    case StrategyForm::kNamed:
      return "named";
  }
  return "named";
}

double angle_from_json(const nlohmann::json& v, std::string_view key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_angle(v.get<std::string>());
  throw std::invalid_argument("angle \"" + std::string(key) +
                              "\" must be a number or string");
}

QuantumStrategy strategy_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_strategy(j.get<std::string>());
  if (!j.is_object() || !j.contains("form") || !j["form"].is_string()) {
    throw std::invalid_argument("strategy object needs a \"form\"");
  }
  const std::string form = j["form"].get<std::string>();
  auto angle = [&](const char* key) {
    return j.contains(key) ? angle_from_json(j[key], key) : 0.0;
  };
  if (form == "ewl") return QuantumStrategy::ewl(angle("theta"), angle("phi"));
  if (form == "du") return QuantumStrategy::du(angle("theta"), angle("phi"));
  if (form == "full") {
    return QuantumStrategy::full(angle("alpha"), angle("theta"), angle("gamma"));
  }
  if (form == "named") {
    if (!j.contains("name") || !j["name"].is_string()) {
      throw std::invalid_argument("named strategy needs a \"name\"");
    }
    return QuantumStrategy::named(parse_named_strategy(j["name"].get<std::string>()));
  }
  throw std::invalid_argument("unknown strategy form \"" + form + "\"");
}

ProtocolResult score(const NormalFormGame& game, StateVector state) {
  OutcomeDistribution dist = measure_distribution(state);
  std::vector<double> payoffs = expected_payoffs(game, dist);
  return ProtocolResult{std::move(state), std::move(dist), std::move(payoffs)};
}

void accumulate(std::vector<double>& total, double weight,
                const OutcomeDistribution& dist) {
  for (std::size_t o = 0; o < total.size(); ++o) total[o] += weight * dist[o];
}

}  // namespace

std::string_view named_strategy_name(NamedStrategy s) {
  switch (s) {
    case NamedStrategy::kLong:
      return "long";
    case NamedStrategy::kShort:
      return "short";
    case NamedStrategy::kQuantumLong:
      return "quantumLong";
    case NamedStrategy::kQuantumLong1:
      return "quantumLong1";
    case NamedStrategy::kQuantumShort:
      return "quantumShort";
  }
  return "long";
}

NamedStrategy parse_named_strategy(std::string_view name) {
  if (name == "long" || name == "Long" || name == "identity") return NamedStrategy::kLong;
  if (name == "short" || name == "Short" || name == "D") return NamedStrategy::kShort;
  if (name == "quantumLong") return NamedStrategy::kQuantumLong;
  if (name == "quantumLong1" || name == "quantumLong#1") return NamedStrategy::kQuantumLong1;
  if (name == "quantumShort") return NamedStrategy::kQuantumShort;
  throw std::invalid_argument("unknown named strategy \"" + std::string(name) + "\"");
}

QuantumStrategy QuantumStrategy::ewl(double theta, double phi) {
  check_range("theta", theta, 0.0, kPi);
  check_range("phi", phi, 0.0, kPi / 2);
  QuantumStrategy s;
  s.form_ = StrategyForm::kEwl;
  s.theta_ = theta;
  s.phi_ = phi;
  return s;
}

QuantumStrategy QuantumStrategy::du(double theta, double phi) {
  QuantumStrategy s = ewl(theta, phi);
  s.form_ = StrategyForm::kDu;
  return s;
}

QuantumStrategy QuantumStrategy::full(double alpha, double theta, double gamma) {
  check_range("alpha", alpha, 0.0, 2 * kPi);
  check_range("theta", theta, 0.0, kPi);
  check_range("gamma", gamma, 0.0, 2 * kPi);
  QuantumStrategy s;
  s.form_ = StrategyForm::kFull;
  s.alpha_ = alpha;
  s.theta_ = theta;
  s.gamma_ = gamma;
  return s;
}

QuantumStrategy QuantumStrategy::named(NamedStrategy name) {
  QuantumStrategy s;
  s.form_ = StrategyForm::kNamed;
  s.name_ = name;
  return s;
}

std::string QuantumStrategy::describe() const {
  std::string out(form_name(form_));
  out += ':';
  switch (form_) {
    case StrategyForm::kEwl:
    case StrategyForm::kDu:
      out += "theta=" + format_double(theta_) + ",phi=" + format_double(phi_);
      break;
    case StrategyForm::kFull:
      out += "alpha=" + format_double(alpha_) + ",theta=" + format_double(theta_) +
             ",gamma=" + format_double(gamma_);
      break;
    case StrategyForm::kNamed:
      out += named_strategy_name(name_);
      break;
  }
  return out;
}

UnitaryMatrix strategy_matrix(const QuantumStrategy& s) {
  const double c = std::cos(s.theta() / 2);
  const double sn = std::sin(s.theta() / 2);
  switch (s.form()) {
    case StrategyForm::kEwl: {
      const Complex e = std::polar(1.0, s.phi());
      return detail::trusted_unitary(1, {e * c, sn, -sn, std::conj(e) * c});
    }
    case StrategyForm::kDu: {
      const Complex e = std::polar(1.0, s.phi());
      return detail::trusted_unitary(1, {c, e * sn, -std::conj(e) * sn, c});
    }
    case StrategyForm::kFull: {
      const Complex a = std::polar(1.0, s.alpha());
      const Complex g = std::polar(1.0, s.gamma());
      return detail::trusted_unitary(
          1, {a * c, g * sn, -std::conj(g) * sn, std::conj(a) * c});
    }
    case StrategyForm::kNamed:
      break;
  }
  switch (s.name()) {
    case NamedStrategy::kLong:
      return UnitaryMatrix::identity(1);
    case NamedStrategy::kShort:
      return gates::d();
    case NamedStrategy::kQuantumLong:
      return detail::trusted_unitary(1, {kI, 0.0, 0.0, -kI});
    case NamedStrategy::kQuantumLong1:
      return detail::trusted_unitary(1, {-kI, 0.0, 0.0, kI});
    case NamedStrategy::kQuantumShort:
      return detail::trusted_unitary(1, {0.0, -kI, -kI, 0.0});
  }
  throw std::logic_error("unhandled strategy");
}

MixedQuantumStrategy::MixedQuantumStrategy(std::vector<WeightedStrategy> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("mixed strategy needs at least one component");
  }
  double sum = 0.0;
  for (const auto& c : components_) {
    if (!std::isfinite(c.weight) || c.weight < 0.0) {
      throw std::invalid_argument("mixture weights must be non-negative");
    }
    sum += c.weight;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture weights sum to " + format_double(sum) +
                                ", not 1");
  }
}

MixedQuantumStrategy MixedQuantumStrategy::pure(const QuantumStrategy& s) {
  return MixedQuantumStrategy({WeightedStrategy{1.0, s}});
}

std::array<Complex, 4> ewl_amplitudes_closed_form(double theta1, double phi1,
                                                  double theta2, double phi2,
                                                  EwlEntangler entangler) {
  check_range("theta1", theta1, 0.0, kPi);
  check_range("theta2", theta2, 0.0, kPi);
  check_range("phi1", phi1, 0.0, kPi / 2);
  check_range("phi2", phi2, 0.0, kPi / 2);
  const bool negative = entangler == EwlEntangler::kNegative;
  if (negative) {
    phi1 = -phi1;
    phi2 = -phi2;
  }
  const double c1 = std::cos(theta1 / 2);
  const double s1 = std::sin(theta1 / 2);
  const double c2 = std::cos(theta2 / 2);
  const double s2 = std::sin(theta2 / 2);
  std::array<Complex, 4> mu = {
      Complex(std::cos(phi1 + phi2) * c1 * c2),
      -kI * (std::sin(phi2) * s1 * c2 - std::cos(phi1) * c1 * s2),
      -kI * (std::sin(phi1) * c1 * s2 - std::cos(phi2) * s1 * c2),
      Complex(std::sin(phi1 + phi2) * c1 * c2 + s1 * s2),
  };
  if (negative) {
    for (Complex& z : mu) z = std::conj(z);
  }
  return mu;
}

ProtocolResult play_ewl2(const NormalFormGame& game, const QuantumStrategy& s1,
                         const QuantumStrategy& s2, EwlEntangler entangler) {
  if (game.players() != 2) {
    throw std::invalid_argument("EWL protocol needs a 2-player game");
  }
  const int sign = entangler == EwlEntangler::kNegative ? -1 : 1;
  const UnitaryMatrix j = matrix_exponential_entangler(sign, 2, EntanglerBasis::kD);
  static constexpr int kBoth[] = {0, 1};
  static constexpr int kFirst[] = {0};
  static constexpr int kSecond[] = {1};
  StateVector state = state_init(2, 0);
  state.apply_in_place(j, kBoth);
  state.apply_in_place(strategy_matrix(s1), kFirst);
  state.apply_in_place(strategy_matrix(s2), kSecond);
  state.apply_in_place(j.dagger(), kBoth);
  return score(game, std::move(state));
}

int default_init_bit(int players) { return players % 2 == 0 ? 1 : 0; }

ProtocolResult play_du(const NormalFormGame& game,
                       std::span<const QuantumStrategy> strategies,
                       std::optional<int> init_bit) {
  const int n = game.players();
  if (strategies.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("expected " + std::to_string(n) +
                                " strategies, got " +
                                std::to_string(strategies.size()));
  }
  StateVector state = state_init(n, init_bit.value_or(default_init_bit(n)));
  state.apply_x_entangler_in_place(+1);
  for (int q = 0; q < n; ++q) {
    const int target[] = {q};
    state.apply_in_place(strategy_matrix(strategies[q]), target);
  }
  state.apply_x_entangler_in_place(-1);
  return score(game, std::move(state));
}

MixedProtocolResult play_mixed_quantum(const NormalFormGame& game,
                                       const MixedQuantumStrategy& m1,
                                       const MixedQuantumStrategy& m2,
                                       EwlEntangler entangler) {
  std::vector<double> total(game.outcome_count(), 0.0);
  for (const auto& a : m1.components()) {
    for (const auto& b : m2.components()) {
      const double w = a.weight * b.weight;
      if (w == 0.0) continue;
      accumulate(total, w, play_ewl2(game, a.strategy, b.strategy, entangler).distribution);
    }
  }
  OutcomeDistribution dist(std::move(total));
  std::vector<double> payoffs = expected_payoffs(game, dist);
  return MixedProtocolResult{std::move(dist), std::move(payoffs)};
}

MixedProtocolResult play_du_mixed(const NormalFormGame& game,
                                  std::span<const MixedQuantumStrategy> mixes,
                                  std::optional<int> init_bit) {
  const std::size_t n = static_cast<std::size_t>(game.players());
  if (mixes.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) +
                                " strategies, got " + std::to_string(mixes.size()));
  }
  std::vector<double> total(game.outcome_count(), 0.0);
  std::vector<std::size_t> pick(n, 0);
  std::vector<QuantumStrategy> chosen;
  chosen.reserve(n);
  while (true) {
    double w = 1.0;
    chosen.clear();
    for (std::size_t p = 0; p < n; ++p) {
      const auto& c = mixes[p].components()[pick[p]];
      w *= c.weight;
      chosen.push_back(c.strategy);
    }
    if (w != 0.0) accumulate(total, w, play_du(game, chosen, init_bit).distribution);
    // Odometer over component choices, last player fastest.
    std::size_t p = n;
    while (p > 0) {
      --p;
      if (++pick[p] < mixes[p].components().size()) break;
      pick[p] = 0;
      if (p == 0) {
        OutcomeDistribution dist(std::move(total));
        std::vector<double> payoffs = expected_payoffs(game, dist);
        return MixedProtocolResult{std::move(dist), std::move(payoffs)};
      }
    }
  }
}

QuantumStrategy parse_strategy(std::string_view text) {
  const std::string original(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("strategy must look like form:key=value, got \"" +
                                original + "\"");
  }
  const std::string_view form = text.substr(0, colon);
  std::string_view rest = text.substr(colon + 1);
  if (form == "named") return QuantumStrategy::named(parse_named_strategy(rest));

  double theta = 0.0, phi = 0.0, alpha = 0.0, gamma = 0.0;
  const bool is_full = form == "full";
  if (!is_full && form != "ewl" && form != "du") {
    throw std::invalid_argument("unknown strategy form \"" + std::string(form) + "\"");
  }
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view pair = rest.substr(0, comma);
    const auto eq = pair.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("expected key=value in \"" + original + "\"");
    }
    const std::string_view key = pair.substr(0, eq);
    const double value = parse_angle(pair.substr(eq + 1));
    if (key == "theta") {
      theta = value;
    } else if (key == "phi" && !is_full) {
      phi = value;
    } else if (key == "alpha" && is_full) {
      alpha = value;
    } else if (key == "gamma" && is_full) {
      gamma = value;
    } else {
      throw std::invalid_argument("unexpected parameter \"" + std::string(key) +
                                  "\" for form " + std::string(form));
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (is_full) return QuantumStrategy::full(alpha, theta, gamma);
  return form == "ewl" ? QuantumStrategy::ewl(theta, phi) : QuantumStrategy::du(theta, phi);
}

MixedQuantumStrategy parse_mixed_strategy(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed mixed strategy: ") + e.what());
  }
  if (!doc.is_array()) {
    throw std::invalid_argument("mixed strategy must be a JSON array");
  }
  std::vector<WeightedStrategy> components;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("weight") || !item["weight"].is_number() ||
        !item.contains("strategy")) {
      throw std::invalid_argument("mixture entries need \"weight\" and \"strategy\"");
    }
    components.push_back(
        WeightedStrategy{item["weight"].get<double>(), strategy_from_json(item["strategy"])});
  }
  return MixedQuantumStrategy(std::move(components));
}

nlohmann::json strategy_to_json(const QuantumStrategy& s) {
  nlohmann::json j;
  j["form"] = std::string(form_name(s.form()));
  switch (s.form()) {
    case StrategyForm::kEwl:
    case StrategyForm::kDu:
      j["theta"] = s.theta();
      j["phi"] = s.phi();
      break;
    case StrategyForm::kFull:
      j["alpha"] = s.alpha();
      j["theta"] = s.theta();
      j["gamma"] = s.gamma();
      break;
    case StrategyForm::kNamed:
      j["name"] = std::string(named_strategy_name(s.name()));
      break;
  }
  return j;
}

nlohmann::json mixed_strategy_to_json(const MixedQuantumStrategy& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : m.components()) {
    out.push_back({{"weight", c.weight}, {"strategy", strategy_to_json(c.strategy)}});
  }
  return out;
}

}  // namespace qtrade
