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

#include "qtrade/qsim.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace qtrade {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_arity(int arity) {
  if (arity < 1 || arity > kMaxQubits) {
    throw std::invalid_argument("matrix arity must be in [1, 12], got " +
                                std::to_string(arity));
  }
}

void check_qubits(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, 12], got " +
                                std::to_string(qubits));
  }
}

int log2_exact(std::size_t n) {
  if (n < 2 || (n & (n - 1)) != 0) return -1;
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace

namespace detail {

UnitaryMatrix trusted_unitary(int arity, std::vector<Complex> entries) {
  return UnitaryMatrix(UnitaryMatrix::Trusted{}, arity, std::move(entries));
}

}  // namespace detail

UnitaryMatrix::UnitaryMatrix(Trusted, int arity, std::vector<Complex> entries)
    : arity_(arity), entries_(std::move(entries)) {}

UnitaryMatrix::UnitaryMatrix(int arity, std::vector<Complex> entries)
    : arity_(arity), entries_(std::move(entries)) {
  check_arity(arity);
  const std::size_t dim = dimension();
  if (entries_.size() != dim * dim) {
    throw std::invalid_argument("matrix of arity " + std::to_string(arity) +
                                " needs " + std::to_string(dim * dim) +
                                " entries");
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("matrix has a non-finite entry");
    }
  }
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        sum += entries_[r * dim + k] * std::conj(entries_[c * dim + k]);
      }
      const Complex expected = r == c ? 1.0 : 0.0;
      if (std::abs(sum - expected) > kUnitarityTolerance) {
        throw std::invalid_argument("matrix is not unitary");
      }
    }
  }
}

UnitaryMatrix UnitaryMatrix::identity(int arity) {
  check_arity(arity);
  const std::size_t dim = std::size_t{1} << arity;
  std::vector<Complex> entries(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) entries[i * dim + i] = 1.0;
  return UnitaryMatrix(Trusted{}, arity, std::move(entries));
}

UnitaryMatrix UnitaryMatrix::dagger() const {
  const std::size_t dim = dimension();
  std::vector<Complex> out(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      out[c * dim + r] = std::conj(entries_[r * dim + c]);
    }
  }
  return UnitaryMatrix(Trusted{}, arity_, std::move(out));
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
  if (arity_ != rhs.arity_) {
    throw std::invalid_argument("matrix product arity mismatch");
  }
  const std::size_t dim = dimension();
  std::vector<Complex> out(dim * dim, 0.0);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex a = entries_[r * dim + k];
      if (a == 0.0) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        out[r * dim + c] += a * rhs.entries_[k * dim + c];
      }
    }
  }
  return UnitaryMatrix(Trusted{}, arity_, std::move(out));
}

double UnitaryMatrix::max_deviation(const UnitaryMatrix& other) const {
  if (arity_ != other.arity_) {
    throw std::invalid_argument("matrix comparison arity mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  }
  return worst;
}

namespace gates {

UnitaryMatrix pauli_x() { return detail::trusted_unitary(1, {0.0, 1.0, 1.0, 0.0}); }
UnitaryMatrix pauli_y() { return detail::trusted_unitary(1, {0.0, -kI, kI, 0.0}); }
UnitaryMatrix pauli_z() { return detail::trusted_unitary(1, {1.0, 0.0, 0.0, -1.0}); }
UnitaryMatrix d() { return detail::trusted_unitary(1, {0.0, 1.0, -1.0, 0.0}); }

UnitaryMatrix cnot() {
  std::vector<Complex> m(16, 0.0);
  m[0 * 4 + 0] = 1.0;
  m[1 * 4 + 1] = 1.0;
  m[2 * 4 + 3] = 1.0;
  m[3 * 4 + 2] = 1.0;
  return detail::trusted_unitary(2, std::move(m));
}

}  // namespace gates

StateVector::StateVector(std::vector<Complex> amplitudes)
    : qubits_(log2_exact(amplitudes.size())), amplitudes_(std::move(amplitudes)) {
  if (qubits_ < 1) {
    throw std::invalid_argument("state length must be a power of two >= 2");
  }
  check_qubits(qubits_);
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
}

StateVector StateVector::basis(int qubits, std::size_t index) {
  check_qubits(qubits);
  const std::size_t dim = std::size_t{1} << qubits;
  if (index >= dim) throw std::out_of_range("basis index out of range");
  std::vector<Complex> amps(dim, 0.0);
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const Complex& a : amplitudes_) total += std::norm(a);
  return total;
}

void StateVector::apply_in_place(const UnitaryMatrix& gate,
                                 std::span<const int> targets) {
  const int k = gate.arity();
  if (static_cast<int>(targets.size()) != k) {
    throw std::invalid_argument("gate arity " + std::to_string(k) +
                                " does not match " +
                                std::to_string(targets.size()) + " targets");
  }
  std::size_t target_mask = 0;
  std::vector<std::size_t> bit(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const int q = targets[j];
    if (q < 0 || q >= qubits_) {
      throw std::out_of_range("target qubit " + std::to_string(q) +
                              " out of range");
    }
    bit[j] = std::size_t{1} << (qubits_ - 1 - q);
    if (target_mask & bit[j]) {
      throw std::invalid_argument("duplicate target qubit " + std::to_string(q));
    }
    target_mask |= bit[j];
  }

  const std::size_t local_dim = gate.dimension();
  std::vector<std::size_t> offset(local_dim, 0);
  for (std::size_t l = 0; l < local_dim; ++l) {
    for (int j = 0; j < k; ++j) {
      if ((l >> (k - 1 - j)) & 1u) offset[l] |= bit[j];
    }
  }

  std::vector<Complex> in(local_dim);
  for (std::size_t base = 0; base < amplitudes_.size(); ++base) {
    if (base & target_mask) continue;
    for (std::size_t l = 0; l < local_dim; ++l) in[l] = amplitudes_[base | offset[l]];
    for (std::size_t r = 0; r < local_dim; ++r) {
      Complex sum = 0.0;
      for (std::size_t c = 0; c < local_dim; ++c) sum += gate(r, c) * in[c];
      amplitudes_[base | offset[r]] = sum;
    }
  }
}

void StateVector::apply_x_entangler_in_place(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const std::size_t mask = amplitudes_.size() - 1;
  const Complex phase = kI * static_cast<double>(sign);
  const double scale = std::numbers::sqrt2 / 2.0;
  for (std::size_t x = 0; x < amplitudes_.size(); ++x) {
    const std::size_t y = x ^ mask;
    if (y < x) continue;
    const Complex ax = amplitudes_[x];
    const Complex ay = amplitudes_[y];
    amplitudes_[x] = scale * (ax + phase * ay);
    amplitudes_[y] = scale * (ay + phase * ax);
  }
}

std::string StateVector::dump() const {
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu %s %.12g %.12g\n", i,
                  outcome_bits(i, qubits_).c_str(), amplitudes_[i].real(),
                  amplitudes_[i].imag());
    out += buf;
  }
  return out;
}

StateVector state_init(int qubits, int bit) {
  check_qubits(qubits);
  if (bit != 0 && bit != 1) throw std::invalid_argument("initial bit must be 0 or 1");
  const std::size_t index = bit == 0 ? 0 : (std::size_t{1} << qubits) - 1;
  return StateVector::basis(qubits, index);
}

StateVector apply(StateVector state, const UnitaryMatrix& gate,
                  std::span<const int> targets) {
  state.apply_in_place(gate, targets);
  return state;
}

UnitaryMatrix tensor(std::span<const UnitaryMatrix> factors) {
  if (factors.empty()) throw std::invalid_argument("tensor of an empty list");
  int arity = 0;
  for (const auto& f : factors) arity += f.arity();
  check_arity(arity);

  std::vector<Complex> acc{1.0};
  std::size_t acc_dim = 1;
  for (const auto& f : factors) {
    const std::size_t fd = f.dimension();
    const std::size_t dim = acc_dim * fd;
    std::vector<Complex> next(dim * dim);
    for (std::size_t r1 = 0; r1 < acc_dim; ++r1) {
      for (std::size_t c1 = 0; c1 < acc_dim; ++c1) {
        const Complex a = acc[r1 * acc_dim + c1];
        for (std::size_t r2 = 0; r2 < fd; ++r2) {
          for (std::size_t c2 = 0; c2 < fd; ++c2) {
            next[(r1 * fd + r2) * dim + (c1 * fd + c2)] = a * f(r2, c2);
          }
        }
      }
    }
    acc = std::move(next);
    acc_dim = dim;
  }
  return detail::trusted_unitary(arity, std::move(acc));
}

UnitaryMatrix xx_gate(double theta, double scale) {
  const double angle = scale * theta;
  const Complex c = std::cos(angle);
  const Complex s = -kI * std::sin(angle);
  return detail::trusted_unitary(2, {c, 0.0, 0.0, s,
                                     0.0, c, s, 0.0,
                                     0.0, s, c, 0.0,
                                     s, 0.0, 0.0, c});
}

OutcomeDistribution measure_distribution(const StateVector& state) {
  std::vector<double> p(state.size());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::norm(state[i]);
    total += p[i];
  }
  // Strip the rounding drift accumulated by the gates.
  for (double& x : p) x /= total;
  return OutcomeDistribution(std::move(p));
}

UnitaryMatrix matrix_exponential_entangler(int sign, int qubits,
                                           EntanglerBasis basis) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (qubits < 2 || qubits > kMaxQubits) {
    throw std::invalid_argument("entangler needs 2..12 qubits");
  }
  if (basis == EntanglerBasis::kD && qubits % 2 != 0) {
    throw std::invalid_argument(
        "D-basis entangler needs an even qubit count (D^(x)n squares to -I otherwise)");
  }
  const UnitaryMatrix p = basis == EntanglerBasis::kPauliX ? gates::pauli_x() : gates::d();
  const UnitaryMatrix power = tensor(std::vector<UnitaryMatrix>(qubits, p));
  const double h = std::numbers::sqrt2 / 2.0;
  const Complex coeff = kI * static_cast<double>(sign) * h;
  std::vector<Complex> entries(power.entries().begin(), power.entries().end());
  const std::size_t dim = power.dimension();
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Complex& e = entries[r * dim + c];
      e = coeff * e + (r == c ? Complex(h) : Complex(0.0));
    }
  }
  return detail::trusted_unitary(qubits, std::move(entries));
}

double max_deviation_up_to_phase(std::span<const Complex> a,
                                 std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  constexpr double kNegligible = 1e-12;
  Complex ratio = 1.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (std::abs(b[i]) > kNegligible) {
      ratio = a[i] / b[i];
      break;
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - ratio * b[i]));
  }
  return worst;
}

double max_deviation_up_to_phase(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("arity mismatch");
  return max_deviation_up_to_phase(a.entries(), b.entries());
}

std::vector<std::uint64_t> sample_counts(const OutcomeDistribution& dist,
                                         std::uint64_t shots,
                                         std::uint64_t seed) {
  std::vector<double> cdf(dist.size());
  double running = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    running += dist[i];
    cdf[i] = running;
  }
  std::vector<std::uint64_t> counts(dist.size(), 0);
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * running;
    std::size_t k = 0;
    while (k + 1 < cdf.size() && !(u < cdf[k])) ++k;
    ++counts[k];
  }
  return counts;
}

}  // namespace qtrade
