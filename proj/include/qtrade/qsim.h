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

#ifndef QTRADE_QSIM_H_
#define QTRADE_QSIM_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qtrade/game.h"

namespace qtrade {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 12;

class UnitaryMatrix;

namespace detail {
// Skips the unitarity check. Only for products, tensor products and closed
// forms that are unitary by construction.
UnitaryMatrix trusted_unitary(int arity, std::vector<Complex> entries);
}  // namespace detail

// Dense 2^k x 2^k unitary, row-major. Construction from raw entries checks
// U * U^dagger = I elementwise within kUnitarityTolerance.
class UnitaryMatrix {
 public:
  static constexpr double kUnitarityTolerance = 1e-9;

  UnitaryMatrix(int arity, std::vector<Complex> entries);

  static UnitaryMatrix identity(int arity);

  int arity() const { return arity_; }
  std::size_t dimension() const { return std::size_t{1} << arity_; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dimension() + col];
  }
  std::span<const Complex> entries() const { return entries_; }

  UnitaryMatrix dagger() const;
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;

  // Largest elementwise |a - b|.
  double max_deviation(const UnitaryMatrix& other) const;

 private:
  struct Trusted {};
  UnitaryMatrix(Trusted, int arity, std::vector<Complex> entries);
  friend UnitaryMatrix detail::trusted_unitary(int, std::vector<Complex>);

  int arity_;
  std::vector<Complex> entries_;
};

namespace gates {
UnitaryMatrix pauli_x();
UnitaryMatrix pauli_y();
UnitaryMatrix pauli_z();
// [[0, 1], [-1, 0]], the classical Short move. Equal to i * pauli_y().
UnitaryMatrix d();
// Control is the first target.
UnitaryMatrix cnot();
}  // namespace gates

// Amplitudes over n qubits. Qubit 0 (Trader 1) is the most significant bit of
// the amplitude index, matching outcome_index().
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-9;

  // Throws unless the length is 2^n (1 <= n <= 12) and the norm is one
  // within kNormTolerance.
  explicit StateVector(std::vector<Complex> amplitudes);

  static StateVector basis(int qubits, std::size_t index);

  int qubit_count() const { return qubits_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm_squared() const;

  // Applies `gate` to `targets` (gate-local most significant bit first).
  void apply_in_place(const UnitaryMatrix& gate, std::span<const int> targets);

  // exp(i * sign * pi/4 * X^{(x)n}) on all qubits: |x> -> (|x> + i*sign*|~x>)/sqrt2.
  void apply_x_entangler_in_place(int sign);

  // One line per amplitude: "index bitstring re im", 12 significant digits.
  std::string dump() const;

 private:
  int qubits_;
  std::vector<Complex> amplitudes_;
};

// |bb...b> on n qubits.
StateVector state_init(int qubits, int bit);

StateVector apply(StateVector state, const UnitaryMatrix& gate,
                  std::span<const int> targets);

// Kronecker product; the first factor acts on the most significant qubit.
UnitaryMatrix tensor(std::span<const UnitaryMatrix> factors);

// exp(-i * scale * theta * XX) = cos(scale*theta) I - i sin(scale*theta) XX.
// scale = 1 is the ion-trap definition X(theta) = exp(-i theta XX); scale =
// 1/2 is the half-angle Molmer-Sorensen convention.
UnitaryMatrix xx_gate(double theta, double scale = 1.0);

OutcomeDistribution measure_distribution(const StateVector& state);

enum class EntanglerBasis { kPauliX, kD };

// exp(i * sign * pi/4 * P^{(x)n}) with P = sigma_x or D. Uses the closed form
// cos(pi/4) I + i sign sin(pi/4) P^{(x)n}, valid because the exponent squares
// to the identity. The D basis therefore needs even n.
UnitaryMatrix matrix_exponential_entangler(int sign, int qubits,
                                           EntanglerBasis basis);

// Aligns the global phase of `b` to `a` using the first entry of `b` with
// non-negligible magnitude, then returns the largest elementwise deviation.
double max_deviation_up_to_phase(const UnitaryMatrix& a, const UnitaryMatrix& b);
double max_deviation_up_to_phase(std::span<const Complex> a,
                                 std::span<const Complex> b);

// Multinomial sample of `shots` measurements; deterministic in `seed`.
std::vector<std::uint64_t> sample_counts(const OutcomeDistribution& dist,
                                         std::uint64_t shots,
                                         std::uint64_t seed);

}  // namespace qtrade

#endif  // QTRADE_QSIM_H_
