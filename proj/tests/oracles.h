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

// Independent reference implementations used by the tests. Everything here is
// deliberately naive: dense matrices, explicit sums, no shared code with the
// library beyond the data types.

#ifndef QTRADE_TESTS_ORACLES_H_
#define QTRADE_TESTS_ORACLES_H_

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "qtrade/game.h"
#include "qtrade/qsim.h"

namespace qtrade::testing {

using Dense = std::vector<Complex>;  // row-major square matrix

inline std::size_t dense_dim(const Dense& m) {
  return static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m.size()))));
}

inline Dense to_dense(const UnitaryMatrix& u) {
  return Dense(u.entries().begin(), u.entries().end());
}

inline Dense dense_identity(std::size_t dim) {
  Dense m(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = 1.0;
  return m;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t d = dense_dim(a);
  Dense c(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) c[i * d + j] += a[i * d + k] * b[k * d + j];
  return c;
}

inline Dense kron(const Dense& a, const Dense& b) {
  const std::size_t da = dense_dim(a), db = dense_dim(b), d = da * db;
  Dense c(d * d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          c[(i * db + k) * d + (j * db + l)] = a[i * da + j] * b[k * db + l];
  return c;
}

inline std::vector<Complex> matvec(const Dense& m, const std::vector<Complex>& v) {
  const std::size_t d = v.size();
  std::vector<Complex> out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i] += m[i * d + j] * v[j];
  return out;
}

// Full 2^n matrix of `gate` acting on `targets` (first target = gate MSB),
// built entry by entry from the definition.
inline Dense embed(const Dense& gate, const std::vector<int>& targets, int n) {
  const std::size_t d = std::size_t{1} << n;
  const std::size_t k = targets.size();
  auto bit = [n](std::size_t index, int q) { return (index >> (n - 1 - q)) & 1u; };
  Dense m(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      bool spectators_match = true;
      for (int q = 0; q < n; ++q) {
        bool is_target = false;
        for (int t : targets) is_target |= (t == q);
        if (!is_target && bit(r, q) != bit(c, q)) spectators_match = false;
      }
      if (!spectators_match) continue;
      std::size_t lr = 0, lc = 0;
      for (std::size_t t = 0; t < k; ++t) {
        lr = (lr << 1) | bit(r, targets[t]);
        lc = (lc << 1) | bit(c, targets[t]);
      }
      m[r * d + c] = gate[lr * (std::size_t{1} << k) + lc];
    }
  }
  return m;
}

// exp(A) by a long Taylor series with scaling and squaring.
inline Dense expm(Dense a) {
  const std::size_t d = dense_dim(a);
  double norm = 0.0;
  for (const auto& x : a) norm = std::max(norm, std::abs(x));
  int squarings = 0;
  while (norm * static_cast<double>(d) > 0.5) {
    norm /= 2;
    ++squarings;
  }
  for (auto& x : a) x /= std::pow(2.0, squarings);
  Dense result = dense_identity(d);
  Dense term = dense_identity(d);
  for (int k = 1; k < 40; ++k) {
    term = matmul(term, a);
    for (auto& x : term) x /= static_cast<double>(k);
    for (std::size_t i = 0; i < result.size(); ++i) result[i] += term[i];
  }
  for (int s = 0; s < squarings; ++s) result = matmul(result, result);
  return result;
}

inline Dense pauli_x_dense() { return {0.0, 1.0, 1.0, 0.0}; }

// i * sign * pi/4 * X^{(x)n}, exponentiated by series.
inline Dense entangler_oracle(int n, int sign) {
  Dense p = pauli_x_dense();
  for (int q = 1; q < n; ++q) p = kron(p, pauli_x_dense());
  for (auto& x : p) x *= Complex(0.0, sign * std::acos(-1.0) / 4);
  return expm(p);
}

inline double max_abs_diff(const Dense& a, const Dense& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
inline Dense random_unitary_dense(int arity, std::mt19937_64& rng) {
  const std::size_t d = std::size_t{1} << arity;
  std::normal_distribution<double> g;
  std::vector<std::vector<Complex>> cols(d, std::vector<Complex>(d));
  for (auto& col : cols)
    for (auto& x : col) x = Complex(g(rng), g(rng));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < d; ++r) dot += std::conj(cols[i][r]) * cols[j][r];
      for (std::size_t r = 0; r < d; ++r) cols[j][r] -= dot * cols[i][r];
    }
    double norm = 0.0;
    for (const auto& x : cols[j]) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (auto& x : cols[j]) x /= norm;
  }
  Dense m(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m[r * d + c] = cols[c][r];
  return m;
}

inline UnitaryMatrix random_unitary(int arity, std::mt19937_64& rng) {
  return UnitaryMatrix(arity, random_unitary_dense(arity, rng));
}

inline std::vector<Complex> random_amplitudes(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& x : v) {
    x = Complex(g(rng), g(rng));
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

// Brute-force pure Nash check straight from the definition.
inline bool is_pure_nash_oracle(const NormalFormGame& game, std::size_t outcome) {
  const int n = game.players();
  for (int p = 0; p < n; ++p) {
    const std::size_t flipped = outcome ^ (std::size_t{1} << (n - 1 - p));
    if (game.payoff(flipped, p) > game.payoff(outcome, p)) return false;
  }
  return true;
}

// Correlated equilibrium as a system of linear inequalities: for every player
// and advice a, sum over outcomes advising a of p(o) (u(o) - u(o flipped)) >= 0.
inline bool is_correlated_oracle(const NormalFormGame& game,
                                 const std::vector<double>& p, double tol) {
  const int n = game.players();
  for (int player = 0; player < n; ++player) {
    const std::size_t mask = std::size_t{1} << (n - 1 - player);
    for (std::size_t advice = 0; advice < 2; ++advice) {
      double slack = 0.0;
      double marginal = 0.0;
      for (std::size_t o = 0; o < p.size(); ++o) {
        if (((o & mask) != 0) != (advice == 1)) continue;
        marginal += p[o];
        slack += p[o] * (game.payoff(o, player) - game.payoff(o ^ mask, player));
      }
      if (marginal > 0.0 && slack / marginal < -tol) return false;
    }
  }
  return true;
}

inline NormalFormGame random_game(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> value(-5, 5);
  std::vector<std::vector<double>> table(std::size_t{1} << n);
  for (auto& row : table) {
    row.resize(static_cast<std::size_t>(n));
    for (auto& x : row) x = value(rng);
  }
  return NormalFormGame("random", n, table);
}

}  // namespace qtrade::testing

#endif  // QTRADE_TESTS_ORACLES_H_
