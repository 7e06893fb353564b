// Copyright 2026 The qgame Authors
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

#ifndef QGAME_QUANTUM_ENGINE_HPP
#define QGAME_QUANTUM_ENGINE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qgame/errors.hpp"
#include "qgame/game_library.hpp"

namespace qgame {

using Complex = std::complex<double>;

inline constexpr double kUnitarityInputTol = 1e-9;
inline constexpr double kUnitarityInternalTol = 1e-12;

/// Entangling angle γ in [0, π/2].
class EntanglementParam {
 public:
  explicit EntanglementParam(double gamma) : gamma_(gamma) {
    constexpr double kSlack = 1e-15;
    if (!(gamma >= -kSlack && gamma <= std::numbers::pi / 2 + kSlack)) {
      throw DomainError("gamma must lie in [0, pi/2], got " + std::to_string(gamma));
    }
    gamma_ = std::clamp(gamma, 0.0, std::numbers::pi / 2);
  }

  /// γ with sin²γ = s, s in [0, 1].
  static EntanglementParam from_sin2(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("sin^2(gamma) must lie in [0, 1], got " + std::to_string(s));
    return EntanglementParam(std::asin(std::sqrt(s)));
  }

  double gamma() const { return gamma_; }
  double sin2() const {
    const double s = std::sin(gamma_);
    return s * s;
  }

 private:
  double gamma_;
};

/// A player's move: a 2x2 unitary, row-major.
class LocalOperator {
 public:
  LocalOperator() : m_{Complex{1}, Complex{0}, Complex{0}, Complex{1}} {}

  /// Validates unitarity to kUnitarityInputTol.
  static LocalOperator from_entries(Complex a, Complex b, Complex c, Complex d) {
    LocalOperator op = unchecked(a, b, c, d);
    if (!op.is_unitary(kUnitarityInputTol)) {
      throw ValidationError("move matrix is not unitary (defect " + std::to_string(op.unitarity_defect()) + ")");
    }
    return op;
  }

  /// For matrices that are unitary by construction.
  static LocalOperator unchecked(Complex a, Complex b, Complex c, Complex d) {
    LocalOperator op;
    op.m_ = {a, b, c, d};
    return op;
  }

  static LocalOperator identity() { return {}; }

  /// iσ_x, the classical "flip" move.
  static LocalOperator flip() { return unchecked(0.0, Complex{0, 1}, Complex{0, 1}, 0.0); }

  Complex operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }
  const std::array<Complex, 4>& entries() const { return m_; }

  LocalOperator adjoint() const {
    return unchecked(std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3]));
  }

  friend LocalOperator operator*(const LocalOperator& x, const LocalOperator& y) {
    return unchecked(x(0, 0) * y(0, 0) + x(0, 1) * y(1, 0), x(0, 0) * y(0, 1) + x(0, 1) * y(1, 1),
                     x(1, 0) * y(0, 0) + x(1, 1) * y(1, 0), x(1, 0) * y(0, 1) + x(1, 1) * y(1, 1));
  }

  /// Largest entrywise |M†M - I|.
  double unitarity_defect() const {
    const LocalOperator p = adjoint() * *this;
    return std::max({std::abs(p.m_[0] - 1.0), std::abs(p.m_[1]), std::abs(p.m_[2]), std::abs(p.m_[3] - 1.0)});
  }

  bool is_unitary(double tol) const {
    for (const auto& z : m_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return unitarity_defect() <= tol;
  }

 private:
  std::array<Complex, 4> m_;
};

/// Joint register of N qubits; amplitude index is the outcome bitstring with
/// player 0 as the most significant bit.
class StateVector {
 public:
  /// |0...0>.
  static StateVector ground(int num_players) { return basis(num_players, 0); }

  static StateVector basis(int num_players, std::size_t index) {
    check_players(num_players);
    StateVector s(num_players);
    if (index >= s.amps_.size()) throw DomainError("basis index out of range");
    s.amps_[index] = 1.0;
    return s;
  }

  static StateVector from_amplitudes(int num_players, std::vector<Complex> amps) {
    check_players(num_players);
    if (amps.size() != outcome_count(num_players)) throw DomainError("amplitude count must be 2^N");
    StateVector s(num_players);
    s.amps_ = std::move(amps);
    if (std::abs(s.norm_squared() - 1.0) > kUnitarityInternalTol * static_cast<double>(s.amps_.size())) {
      throw ValidationError("state is not normalized");
    }
    return s;
  }

  /// Linear piece of a state (no norm check); used to evolve the terms of
  /// a superposition separately.
  static StateVector unnormalized(int num_players, std::vector<Complex> amps) {
    check_players(num_players);
    if (amps.size() != outcome_count(num_players)) throw DomainError("amplitude count must be 2^N");
    StateVector s(num_players);
    s.amps_ = std::move(amps);
    return s;
  }

  int num_players() const { return num_players_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    return std::accumulate(amps_.begin(), amps_.end(), 0.0,
                           [](double acc, Complex z) { return acc + std::norm(z); });
  }

  bool is_finite() const {
    for (const auto& z : amps_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
  }

  /// Applies `op` to the qubit owned by `player`.
  void apply_local(int player, const LocalOperator& op) {
    if (player < 0 || player >= num_players_) throw DomainError("player index out of range");
    const std::size_t mask = player_mask(num_players_, player);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & mask) != 0) continue;
      const Complex a0 = amps_[i];
      const Complex a1 = amps_[i | mask];
      amps_[i] = op(0, 0) * a0 + op(0, 1) * a1;
      amps_[i | mask] = op(1, 0) * a0 + op(1, 1) * a1;
    }
  }

 private:
  explicit StateVector(int num_players)
      : num_players_(num_players), amps_(outcome_count(num_players), Complex{0}) {}

  static void check_players(int n) {
    if (n < 2 || n > kMaxPlayers) throw DomainError("player count must lie in [2, 12]");
  }

  friend class Entangler;

  int num_players_;
  std::vector<Complex> amps_;
};

/// J = cos(γ/2) I^⊗N + i sin(γ/2) σ_x^⊗N. σ_x^⊗N maps index i to its bitwise
/// complement, so J is applied as two structured terms instead of a dense
/// matrix.
class Entangler {
 public:
  Entangler(EntanglementParam gamma, int num_players) : gamma_(gamma), num_players_(num_players) {
    if (num_players < 2 || num_players > kMaxPlayers) {
      throw DomainError("player count must lie in [2, 12], got " + std::to_string(num_players));
    }
    cos_ = std::cos(gamma.gamma() / 2);
    sin_ = std::sin(gamma.gamma() / 2);
  }

  int num_players() const { return num_players_; }
  EntanglementParam gamma() const { return gamma_; }

  void apply(StateVector& state) const { apply_impl(state, sin_); }
  void apply_adjoint(StateVector& state) const { apply_impl(state, -sin_); }

  /// Dense 2^N x 2^N row-major matrix, for inspection and tests.
  std::vector<Complex> dense() const {
    const std::size_t dim = outcome_count(num_players_);
    const std::size_t flip = dim - 1;
    std::vector<Complex> m(dim * dim, Complex{0});
    for (std::size_t i = 0; i < dim; ++i) {
      m[i * dim + i] += cos_;
      m[i * dim + (i ^ flip)] += Complex{0, sin_};
    }
    return m;
  }

 private:
  void apply_impl(StateVector& state, double signed_sin) const {
    if (state.num_players() != num_players_) throw DomainError("entangler and state disagree on N");
    const std::size_t flip = state.size() - 1;
    const Complex is{0, signed_sin};
    // Pairs (i, ~i) mix only with each other.
    for (std::size_t i = 0; i < state.size(); ++i) {
      const std::size_t j = i ^ flip;
      if (j < i) continue;
      const Complex ai = state.amps_[i];
      const Complex aj = state.amps_[j];
      state.amps_[i] = cos_ * ai + is * aj;
      state.amps_[j] = cos_ * aj + is * ai;
    }
  }

  EntanglementParam gamma_;
  int num_players_;
  double cos_ = 1.0;
  double sin_ = 0.0;
};

inline Entangler build_entangler(EntanglementParam gamma, int num_players) { return Entangler(gamma, num_players); }

/// |ψ_f> = J† (⊗ moves) J |0...0>.
inline StateVector final_state(EntanglementParam gamma, std::span<const LocalOperator> moves) {
  const int n = static_cast<int>(moves.size());
  const Entangler j = build_entangler(gamma, n);
  for (std::size_t p = 0; p < moves.size(); ++p) {
    if (!moves[p].is_unitary(kUnitarityInputTol)) {
      throw ValidationError("move of player " + std::to_string(p) + " is not unitary");
    }
  }
  StateVector state = StateVector::ground(n);
  j.apply(state);
  for (int p = 0; p < n; ++p) state.apply_local(p, moves[static_cast<std::size_t>(p)]);
  j.apply_adjoint(state);
  if (!state.is_finite()) throw ValidationError("non-finite amplitude in final state");
  return state;
}

/// Computational-basis measurement statistics, indexed like StateVector.
struct OutcomeDistribution {
  int num_players = 0;
  std::vector<double> probs;

  double total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }
};

inline OutcomeDistribution outcome_probabilities(const StateVector& state) {
  OutcomeDistribution dist{state.num_players(), std::vector<double>(state.size())};
  for (std::size_t i = 0; i < state.size(); ++i) dist.probs[i] = std::norm(state[i]);
  return dist;
}

/// payoff[p] = Σ_outcome prob(outcome) · table(outcome, p).
inline std::vector<double> expected_payoffs(const GameSpec& game, const OutcomeDistribution& dist) {
  if (dist.num_players != game.num_players() || dist.probs.size() != game.num_outcomes()) {
    throw DomainError("game has " + std::to_string(game.num_players()) + " players but distribution has " +
                      std::to_string(dist.num_players));
  }
  std::vector<double> payoffs(static_cast<std::size_t>(game.num_players()), 0.0);
  for (std::size_t o = 0; o < dist.probs.size(); ++o) {
    for (int p = 0; p < game.num_players(); ++p) {
      payoffs[static_cast<std::size_t>(p)] += dist.probs[o] * game.payoff(o, p);
    }
  }
  return payoffs;
}

/// Convenience: expected payoffs of a full move profile.
inline std::vector<double> play(const GameSpec& game, EntanglementParam gamma, std::span<const LocalOperator> moves) {
  return expected_payoffs(game, outcome_probabilities(final_state(gamma, moves)));
}

}  // namespace qgame

#endif  // QGAME_QUANTUM_ENGINE_HPP
