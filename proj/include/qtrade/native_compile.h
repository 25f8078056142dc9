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

#ifndef QTRADE_NATIVE_COMPILE_H_
#define QTRADE_NATIVE_COMPILE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtrade/game.h"
#include "qtrade/protocols.h"
#include "qtrade/qsim.h"

namespace qtrade {

inline constexpr int kMaxUnitaryQubits = 10;

enum class OpKind { kXx, kCnot, kSingle };

// One native operation. XX takes `theta`; CNOT lists control then target;
// SINGLE carries a validated 2x2 unitary.
struct CircuitOp {
  OpKind kind = OpKind::kSingle;
  std::vector<int> targets;
  double theta = 0.0;
  std::optional<UnitaryMatrix> matrix;

  static CircuitOp xx(int a, int b, double theta);
  static CircuitOp cnot(int control, int target);
  static CircuitOp single(int qubit, UnitaryMatrix matrix);

  bool entangling() const { return kind != OpKind::kSingle; }
};

// Ordered native operations on `qubits` qubits (0-based targets).
//
// XX angles are interpreted as exp(-i * xx_scale * theta * XX). The default
// scale 1 is the ion-trap definition X(theta) = exp(-i theta XX); with that
// convention the n-qubit entangler uses theta = -pi/4 (its inverse +pi/4).
class Circuit {
 public:
  explicit Circuit(int qubits, double xx_scale = 1.0);

  int qubits() const { return qubits_; }
  double xx_scale() const { return xx_scale_; }
  std::span<const CircuitOp> ops() const { return ops_; }

  // Throws if targets are out of range, repeated, or the wrong count.
  void append(CircuitOp op);
  void append(const Circuit& other);

 private:
  int qubits_;
  double xx_scale_;
  std::vector<CircuitOp> ops_;
};

// XX angle that realizes exp(sign * i pi/4 XX) under the given scale.
double entangler_xx_angle(bool dagger, double xx_scale = 1.0);

// CNOT ladder around one XX gate on qubits (0, 1): CNOT(n-2 -> n-1), ...,
// CNOT(1 -> 2), XX, CNOT(1 -> 2), ..., CNOT(n-2 -> n-1). Equals
// exp(+-i pi/4 X^{(x)n}) exactly.
Circuit compile_entangler(int qubits, bool dagger = false, double xx_scale = 1.0);

struct ProtocolCompileOptions {
  // Replace the X layer and the CNOTs that precede the first XX gate, which
  // only permute the known basis input, with single-qubit X gates.
  bool simplify = false;
  double xx_scale = 1.0;
};

// Full n-player protocol starting from |0...0>: an X layer when init_bit is
// 1, the entangler, the strategy layer, and the inverse entangler.
Circuit compile_protocol(int qubits, std::span<const QuantumStrategy> strategies,
                         int init_bit, const ProtocolCompileOptions& options = {});

StateVector run_circuit(const Circuit& circuit, StateVector state);

// Product of all ops, first op rightmost. Needs qubits <= 10.
UnitaryMatrix circuit_unitary(const Circuit& circuit);

std::size_t entangling_gate_count(const Circuit& circuit);

struct NoiseOptions {
  double p2q = 0.015;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
};

// Monte Carlo two-qubit depolarizing noise. In each trial, after every
// entangling op, with probability p2q a uniformly random non-identity Pauli
// hits each of its targets. Returns the average of the per-trial outcome
// distributions for input |b...b>. Trial t draws from seed + t, so the
// result is reproducible and independent of thread count.
OutcomeDistribution noisy_run(const Circuit& circuit, int init_bit,
                              const NoiseOptions& options);

// {"qubits": n, "ops": [{"kind": "xx"|"cnot"|"single", "targets": [...],
//  "theta": r, "matrix": [[re, im] x 4]}]}; "xx_scale" appears only when it
// differs from 1.
std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(std::string_view document);

}  // namespace qtrade

#endif  // QTRADE_NATIVE_COMPILE_H_
