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

#include "qtrade/native_compile.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qtrade/format.h"
#include "qtrade/parallel.h"

namespace qtrade {

namespace {

constexpr std::uint64_t kTrialsPerChunk = 256;

void check_entangler_qubits(int qubits) {
  if (qubits < 2 || qubits > kMaxQubits) {
    throw std::invalid_argument("player count must be in [2, 12], got " +
                                std::to_string(qubits));
  }
}

const UnitaryMatrix& pauli(int which) {
  static const UnitaryMatrix kPaulis[] = {gates::pauli_x(), gates::pauli_y(),
                                          gates::pauli_z()};
  return kPaulis[which];
}

void apply_op(const Circuit& circuit, const CircuitOp& op, StateVector& state) {
  switch (op.kind) {
    case OpKind::kXx:
      state.apply_in_place(xx_gate(op.theta, circuit.xx_scale()), op.targets);
      break;
    case OpKind::kCnot: {
      static const UnitaryMatrix kCnot = gates::cnot();
      state.apply_in_place(kCnot, op.targets);
      break;
    }
    case OpKind::kSingle:
      state.apply_in_place(*op.matrix, op.targets);
      break;
  }
}

struct PauliEvent {
  std::size_t after_op;
  int qubit;
  int pauli;
};

struct ChunkSum {
  std::uint64_t clean = 0;
  std::vector<double> noisy;
};

std::string_view kind_name(OpKind k) {
  switch (k) {
    case OpKind::kXx:
      return "xx";
    case OpKind::kCnot:
      return "cnot";
    case OpKind::kSingle:
      return "single";
  }
  return "single";
}

}  // namespace

CircuitOp CircuitOp::xx(int a, int b, double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("XX angle must be finite");
  CircuitOp op;
  op.kind = OpKind::kXx;
  op.targets = {a, b};
  op.theta = theta;
  return op;
}

CircuitOp CircuitOp::cnot(int control, int target) {
  CircuitOp op;
  op.kind = OpKind::kCnot;
  op.targets = {control, target};
  return op;
}

CircuitOp CircuitOp::single(int qubit, UnitaryMatrix matrix) {
  if (matrix.arity() != 1) {
    throw std::invalid_argument("single-qubit op needs a 2x2 matrix");
  }
  CircuitOp op;
  op.kind = OpKind::kSingle;
  op.targets = {qubit};
  op.matrix = std::move(matrix);
  return op;
}

Circuit::Circuit(int qubits, double xx_scale) : qubits_(qubits), xx_scale_(xx_scale) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw std::invalid_argument("circuit qubit count must be in [1, 12]");
  }
  if (!(xx_scale == 1.0 || xx_scale == 0.5)) {
    throw std::invalid_argument("xx_scale must be 1 or 1/2");
  }
}

void Circuit::append(CircuitOp op) {
  const std::size_t expected = op.kind == OpKind::kSingle ? 1 : 2;
  if (op.targets.size() != expected) {
    throw std::invalid_argument(std::string(kind_name(op.kind)) + " op needs " +
                                std::to_string(expected) + " targets");
  }
  for (int t : op.targets) {
    if (t < 0 || t >= qubits_) {
      throw std::out_of_range("target " + std::to_string(t) + " out of range for " +
                              std::to_string(qubits_) + " qubits");
    }
  }
  if (expected == 2 && op.targets[0] == op.targets[1]) {
    throw std::invalid_argument("two-qubit op needs distinct targets");
  }
  if (op.kind == OpKind::kSingle && !op.matrix) {
    throw std::invalid_argument("single-qubit op is missing its matrix");
  }
  ops_.push_back(std::move(op));
}

void Circuit::append(const Circuit& other) {
  if (other.qubits_ != qubits_ || other.xx_scale_ != xx_scale_) {
    throw std::invalid_argument("cannot concatenate circuits of different shape");
  }
  for (const auto& op : other.ops_) ops_.push_back(op);
}

double entangler_xx_angle(bool dagger, double xx_scale) {
  // exp(-i s theta XX) = exp(i pi/4 XX) needs s theta = -pi/4.
  const double angle = std::numbers::pi / 4 / xx_scale;
  return dagger ? angle : -angle;
}

Circuit compile_entangler(int qubits, bool dagger, double xx_scale) {
  check_entangler_qubits(qubits);
  Circuit c(qubits, xx_scale);
  for (int k = qubits - 2; k >= 1; --k) c.append(CircuitOp::cnot(k, k + 1));
  c.append(CircuitOp::xx(0, 1, entangler_xx_angle(dagger, xx_scale)));
  for (int k = 1; k <= qubits - 2; ++k) c.append(CircuitOp::cnot(k, k + 1));
  return c;
}

Circuit compile_protocol(int qubits, std::span<const QuantumStrategy> strategies,
                         int init_bit, const ProtocolCompileOptions& options) {
  check_entangler_qubits(qubits);
  if (strategies.size() != static_cast<std::size_t>(qubits)) {
    throw std::invalid_argument("expected " + std::to_string(qubits) +
                                " strategies, got " +
                                std::to_string(strategies.size()));
  }
  if (init_bit != 0 && init_bit != 1) {
    throw std::invalid_argument("initial bit must be 0 or 1");
  }
  Circuit c(qubits, options.xx_scale);
  const Circuit entangler = compile_entangler(qubits, false, options.xx_scale);
  if (options.simplify) {
    // Push the basis input through the leading CNOTs classically.
    std::vector<int> bits(static_cast<std::size_t>(qubits), init_bit);
    std::size_t first_xx = 0;
    const auto ops = entangler.ops();
    while (ops[first_xx].kind == OpKind::kCnot) {
      bits[ops[first_xx].targets[1]] ^= bits[ops[first_xx].targets[0]];
      ++first_xx;
    }
    for (int q = 0; q < qubits; ++q) {
      if (bits[q]) c.append(CircuitOp::single(q, gates::pauli_x()));
    }
    for (std::size_t i = first_xx; i < ops.size(); ++i) c.append(ops[i]);
  } else {
    if (init_bit == 1) {
      for (int q = 0; q < qubits; ++q) c.append(CircuitOp::single(q, gates::pauli_x()));
    }
    c.append(entangler);
  }
  for (int q = 0; q < qubits; ++q) {
    c.append(CircuitOp::single(q, strategy_matrix(strategies[q])));
  }
  c.append(compile_entangler(qubits, true, options.xx_scale));
  return c;
}

StateVector run_circuit(const Circuit& circuit, StateVector state) {
  if (state.qubit_count() != circuit.qubits()) {
    throw std::invalid_argument("state and circuit qubit counts differ");
  }
  for (const auto& op : circuit.ops()) apply_op(circuit, op, state);
  return state;
}

UnitaryMatrix circuit_unitary(const Circuit& circuit) {
  const int n = circuit.qubits();
  if (n > kMaxUnitaryQubits) {
    throw std::invalid_argument("circuit_unitary supports at most 10 qubits, got " +
                                std::to_string(n));
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> entries(dim * dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const StateVector out = run_circuit(circuit, StateVector::basis(n, col));
    for (std::size_t row = 0; row < dim; ++row) entries[row * dim + col] = out[row];
  }
  return detail::trusted_unitary(n, std::move(entries));
}

std::size_t entangling_gate_count(const Circuit& circuit) {
  return static_cast<std::size_t>(std::count_if(
      circuit.ops().begin(), circuit.ops().end(),
      [](const CircuitOp& op) { return op.entangling(); }));
}

OutcomeDistribution noisy_run(const Circuit& circuit, int init_bit,
                              const NoiseOptions& options) {
  if (!(options.p2q >= 0.0 && options.p2q <= 1.0)) {
    throw std::invalid_argument("p2q must be in [0, 1]");
  }
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");

  const StateVector input = state_init(circuit.qubits(), init_bit);
  const OutcomeDistribution ideal = measure_distribution(run_circuit(circuit, input));
  const auto ops = circuit.ops();

  const std::uint64_t chunks = (options.trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  std::vector<ChunkSum> sums(chunks);
  parallel_for(chunks, [&](std::size_t chunk) {
    ChunkSum& sum = sums[chunk];
    sum.noisy.assign(ideal.size(), 0.0);
    const std::uint64_t begin = chunk * kTrialsPerChunk;
    const std::uint64_t end = std::min(options.trials, begin + kTrialsPerChunk);
    std::vector<PauliEvent> events;
    for (std::uint64_t t = begin; t < end; ++t) {
      std::mt19937_64 rng(options.seed + t);
      events.clear();
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (!ops[i].entangling()) continue;
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (!(u < options.p2q)) continue;
        for (int q : ops[i].targets) {
          events.push_back(PauliEvent{i, q, static_cast<int>(rng() % 3)});
        }
      }
      if (events.empty()) {
        ++sum.clean;
        continue;
      }
      StateVector state = input;
      std::size_t next_event = 0;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        apply_op(circuit, ops[i], state);
        while (next_event < events.size() && events[next_event].after_op == i) {
          const int target[] = {events[next_event].qubit};
          state.apply_in_place(pauli(events[next_event].pauli), target);
          ++next_event;
        }
      }
      for (std::size_t o = 0; o < sum.noisy.size(); ++o) sum.noisy[o] += std::norm(state[o]);
    }
  });

  std::uint64_t clean = 0;
  std::vector<double> noisy(ideal.size(), 0.0);
  for (const auto& s : sums) {
    clean += s.clean;
    for (std::size_t o = 0; o < noisy.size(); ++o) noisy[o] += s.noisy[o];
  }
  if (clean == options.trials) return ideal;
  const double trials = static_cast<double>(options.trials);
  const double clean_weight = static_cast<double>(clean) / trials;
  std::vector<double> out(ideal.size());
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o] = clean_weight * ideal[o] + noisy[o] / trials;
  }
  return OutcomeDistribution(std::move(out));
}

std::string circuit_to_json(const Circuit& circuit) {
  nlohmann::json doc;
  doc["qubits"] = circuit.qubits();
  if (circuit.xx_scale() != 1.0) doc["xx_scale"] = circuit.xx_scale();
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& op : circuit.ops()) {
    nlohmann::json j;
    j["kind"] = std::string(kind_name(op.kind));
    j["targets"] = op.targets;
    if (op.kind == OpKind::kXx) j["theta"] = op.theta;
    if (op.kind == OpKind::kSingle) {
      nlohmann::json m = nlohmann::json::array();
      for (const Complex& z : op.matrix->entries()) m.push_back({z.real(), z.imag()});
      j["matrix"] = std::move(m);
    }
    ops.push_back(std::move(j));
  }
  doc["ops"] = std::move(ops);
  return dump_json(doc);
}

Circuit circuit_from_json(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed circuit document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("qubits") || !doc["qubits"].is_number_integer() ||
      !doc.contains("ops") || !doc["ops"].is_array()) {
    throw std::invalid_argument("circuit document needs integer \"qubits\" and array \"ops\"");
  }
  const double scale = doc.contains("xx_scale") ? doc["xx_scale"].get<double>() : 1.0;
  Circuit circuit(doc["qubits"].get<int>(), scale);
  for (const auto& j : doc["ops"]) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("targets") ||
        !j["targets"].is_array()) {
      throw std::invalid_argument("circuit op needs \"kind\" and \"targets\"");
    }
    const std::string kind = j["kind"].get<std::string>();
    const auto targets = j["targets"].get<std::vector<int>>();
    if (kind == "xx") {
      if (targets.size() != 2 || !j.contains("theta") || !j["theta"].is_number()) {
        throw std::invalid_argument("xx op needs two targets and \"theta\"");
      }
      circuit.append(CircuitOp::xx(targets[0], targets[1], j["theta"].get<double>()));
    } else if (kind == "cnot") {
      if (targets.size() != 2) throw std::invalid_argument("cnot op needs two targets");
      circuit.append(CircuitOp::cnot(targets[0], targets[1]));
    } else if (kind == "single") {
      if (targets.size() != 1 || !j.contains("matrix") || !j["matrix"].is_array() ||
          j["matrix"].size() != 4) {
        throw std::invalid_argument("single op needs one target and a 4-entry \"matrix\"");
      }
      std::vector<Complex> entries;
      for (const auto& z : j["matrix"]) {
        if (!z.is_array() || z.size() != 2) {
          throw std::invalid_argument("matrix entries are [re, im] pairs");
        }
        entries.emplace_back(z[0].get<double>(), z[1].get<double>());
      }
      circuit.append(CircuitOp::single(targets[0], UnitaryMatrix(1, std::move(entries))));
    } else {
      throw std::invalid_argument("unknown op kind \"" + kind + "\"");
    }
  }
  return circuit;
}

}  // namespace qtrade
