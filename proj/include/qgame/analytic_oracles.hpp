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

#ifndef QGAME_ANALYTIC_ORACLES_HPP
#define QGAME_ANALYTIC_ORACLES_HPP

// Closed-form outcome probabilities, deviation payoffs and entanglement
// thresholds for the two-parameter strategy spaces. These are independent
// of the state-vector simulator and exist to cross-check it.
//
// Conventions: s = sin²γ; two-player outcomes are labelled (Alice, Bob);
// N-player deviation formulas take the deviating player's point of view.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qgame/errors.hpp"
#include "qgame/game_library.hpp"
#include "qgame/strategy_spaces.hpp"

namespace qgame::analytic {

inline double sin2(double gamma) {
  const double s = std::sin(gamma);
  return s * s;
}

/// Half-angle sines and cosines of both players' θ.
struct ShorthandTrig {
  double s_a, c_a, s_b, c_b;

  static ShorthandTrig of(double theta_a, double theta_b) {
    return {std::sin(theta_a / 2), std::cos(theta_a / 2), std::sin(theta_b / 2), std::cos(theta_b / 2)};
  }
};

struct PayoffPair {
  double first;
  double second;
};

// ---------------------------------------------------------------------------
// Outcome probabilities
// ---------------------------------------------------------------------------

struct BosProbs {
  double oo;
  double tt;
};

/// p_OO and p_TT when both players use S1 points.
inline BosProbs bos_probs_s1(double gamma, double theta_a, double phi_a, double theta_b, double phi_b) {
  const auto t = ShorthandTrig::of(theta_a, theta_b);
  const double sum = phi_a + phi_b;
  const double sin_sum2 = std::sin(sum) * std::sin(sum);
  const double cos_sum2 = std::cos(sum) * std::cos(sum);
  const double cg2 = std::cos(gamma) * std::cos(gamma);
  const double sg2 = sin2(gamma);
  const double oo = (cg2 * sin_sum2 + cos_sum2) * t.c_a * t.c_a * t.c_b * t.c_b;
  const double tt = sg2 * sin_sum2 * t.c_a * t.c_a * t.c_b * t.c_b + t.s_a * t.s_a * t.s_b * t.s_b -
                    0.5 * std::sin(gamma) * std::sin(theta_a) * std::sin(theta_b) * std::sin(sum);
  return {oo, tt};
}

struct FourProbs {
  double cc, cd, dc, dd;
  double sum() const { return cc + cd + dc + dd; }
};

/// All four outcome probabilities when both players use S2 points.
inline FourProbs s2_outcome_probs(double gamma, double theta_a, double phi_a, double theta_b, double phi_b) {
  const auto t = ShorthandTrig::of(theta_a, theta_b);
  const double sum = phi_a + phi_b;
  const double sg = std::sin(gamma);
  const double sg2 = sg * sg;
  const double cg2 = 1.0 - sg2;
  const double cross = 0.5 * sg * std::sin(theta_a) * std::sin(theta_b);
  const double ca2 = t.c_a * t.c_a, sa2 = t.s_a * t.s_a, cb2 = t.c_b * t.c_b, sb2 = t.s_b * t.s_b;
  auto sq = [](double x) { return x * x; };

  FourProbs p{};
  p.cc = sg2 * sq(std::sin(sum)) * sa2 * sb2 + ca2 * cb2 + cross * std::sin(sum);
  p.cd = (cg2 * sq(std::sin(phi_b)) + sq(std::cos(phi_b))) * ca2 * sb2 + sg2 * sq(std::sin(phi_a)) * sa2 * cb2 -
         cross * std::sin(phi_a) * std::cos(phi_b);
  p.dc = (cg2 * sq(std::sin(phi_a)) + sq(std::cos(phi_a))) * sa2 * cb2 + sg2 * sq(std::sin(phi_b)) * ca2 * sb2 -
         cross * std::cos(phi_a) * std::sin(phi_b);
  p.dd = (cg2 * sq(std::sin(sum)) + sq(std::cos(sum))) * sa2 * sb2;
  return p;
}

/// Outcome probabilities when Alice plays D' = M2(π, π/4) and Bob plays
/// M2(θ, φ).
///
/// Weights: CC s_θ² s (1 + sin 2φ)/2, CD c_θ² s/2, DC c_θ² (1 - s/2),
/// DD s_θ² (1 - s (1 + sin 2φ)/2), where s_θ = sin(θ/2), c_θ = cos(θ/2).
inline FourProbs dprime_response_probs(double gamma, double theta, double phi) {
  const double s = sin2(gamma);
  const double st2 = std::sin(theta / 2) * std::sin(theta / 2);
  const double ct2 = 1.0 - st2;
  const double lift = 1.0 + std::sin(2 * phi);
  return {st2 * s * lift / 2, ct2 * s / 2, ct2 * (1 - s / 2), st2 * (1 - s * lift / 2)};
}

/// Bob's expected payoff against D' (see dprime_response_probs).
inline double dprime_response_payoff(const GameSpec& game, double gamma, double theta, double phi) {
  const FourProbs p = dprime_response_probs(gamma, theta, phi);
  return p.cc * game.payoff(0b00, 1) + p.cd * game.payoff(0b01, 1) + p.dc * game.payoff(0b10, 1) +
         p.dd * game.payoff(0b11, 1);
}

// ---------------------------------------------------------------------------
// Two-player Prisoners' Dilemma
// ---------------------------------------------------------------------------

enum class PdS1Region { Classical, Asymmetric, Quantum };

struct RegionPayoffs {
  PdS1Region region;
  /// In the asymmetric region: the C' player first, the defector second.
  PayoffPair payoffs;
};

/// NE payoffs of the S1 Prisoners' Dilemma: C'⊗C' (3, 3) for s >= 2/5,
/// C'⊗D (5s, 5(1-s)) for 1/5 <= s < 2/5, D⊗D (1, 1) below.
inline RegionPayoffs pd_s1_region_payoffs(double gamma) {
  const double s = sin2(gamma);
  if (s >= 0.4) return {PdS1Region::Quantum, {3.0, 3.0}};
  if (s >= 0.2) return {PdS1Region::Asymmetric, {5.0 * s, 5.0 * (1.0 - s)}};
  return {PdS1Region::Classical, {1.0, 1.0}};
}

/// D'⊗D' payoff to each player in the S2 Prisoners' Dilemma.
inline double pd_s2_ne_payoff(double gamma) { return 1.0 + 2.0 * sin2(gamma); }

/// Open interval of sin²φ over which a φ_A + φ_B = π/2 pair stays an
/// equilibrium, clipped to [0, 1].
struct PhiInterval {
  double lo;
  double hi;
  /// sin²(π/4), the focal choice φ_A = φ_B = π/4.
  double focal = 0.5;

  bool contains(double sin2phi) const { return sin2phi > lo && sin2phi < hi; }
  bool focal_inside() const { return contains(focal); }
};

inline PhiInterval pd_s2_phi_interval(double gamma) {
  const double s = sin2(gamma);
  if (!(s > 0.0)) throw DomainError("phi interval undefined at sin^2(gamma) = 0");
  const double lo = (3.0 * s - 1.0) / (5.0 * s);
  const double hi = (2.0 * s + 1.0) / (5.0 * s);
  return {std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0)};
}

// ---------------------------------------------------------------------------
// Chicken
// ---------------------------------------------------------------------------

/// Chicken curves for both spaces.
///
/// The asymmetric S1 equilibrium pays the C' player 1 + 3s and the defector
/// 4 - 3s: C' meets D on outcome DC (C' player's 4) with weight s and on
/// CD (C' player's 1) otherwise.
struct ChickenThresholds {
  double threshold = 1.0 / 3.0;
  double s1_mutual = 3.0;

  struct Asymmetric {
    double cprime_player;
    double defector;
  };

  Asymmetric s1_asymmetric(double sin2gamma) const { return {1.0 + 3.0 * sin2gamma, 4.0 - 3.0 * sin2gamma}; }
  double s2_mutual(double sin2gamma) const { return 3.0 * sin2gamma; }

  /// sin²φ window 1/(3s+1) < sin²φ < 3s/(3s+1) for the S2 mutual profile.
  PhiInterval s2_phi_interval(double sin2gamma) const {
    return {1.0 / (3.0 * sin2gamma + 1.0), 3.0 * sin2gamma / (3.0 * sin2gamma + 1.0)};
  }
};

inline ChickenThresholds chicken_thresholds() { return {}; }

/// Sin²γ above which D'⊗D' survives Bob's switch to C in S2 Chicken: the
/// switch pays 4·s/2 + 1·(1 - s/2) = 1 + 3s/2 against the mutual 3s.
inline double chicken_s2_cooperate_deviation_threshold() { return 2.0 / 3.0; }

// ---------------------------------------------------------------------------
// Battle of the Sexes
// ---------------------------------------------------------------------------

struct BosCounter {
  /// Payoffs (Alice, Bob) after the optimal phase counter with θ_A = θ_B = 0.
  PayoffPair counter;
  /// Guaranteed payoff of the countering side under the φ <= π/2 restriction.
  double restricted_bound;
};

/// S1: Bob answers φ_A with π/2 - φ_A, giving (2 - s, 1 + s); Alice's best
/// restricted counter guarantees her at least 2 - s/2. S2 returns the mirror
/// image (1 + s, 2 - s) with Bob guaranteed at least 2 - s/2. The S2 values
/// are the published expressions; the simulator disagrees with them, which
/// `qgame probe --check bos-s2-ne` reports.
inline BosCounter bos_counter_payoffs(double gamma, FamilyTag space) {
  const double s = sin2(gamma);
  if (space == FamilyTag::S1) return {{2.0 - s, 1.0 + s}, 2.0 - 0.5 * s};
  if (space == FamilyTag::S2) return {{1.0 + s, 2.0 - s}, 2.0 - 0.5 * s};
  throw DomainError("bos_counter_payoffs is defined for s1 and s2");
}

// ---------------------------------------------------------------------------
// N-player Prisoners' Dilemma
// ---------------------------------------------------------------------------

struct NpdThresholds {
  double lower_classical;  // 1/(4N-3): below it only mutual defection
  double coop_threshold;   // 4/((4N-3)(1-cos 2π/N)): C_N^⊗N is NE above it
  double asym_upper;       // 1/2: C_2 ⊗ D^⊗(N-1) is NE up to here
};

inline NpdThresholds npd_thresholds(int n) {
  if (n < 2) throw DomainError("npd_thresholds needs n >= 2");
  const double base = 4.0 * n - 3.0;
  return {1.0 / base, 4.0 / (base * (1.0 - std::cos(2.0 * std::numbers::pi / n))), 0.5};
}

/// Last player's payoff for M1(θ, φ) while everyone else plays C_N.
inline double npd_s1_coop_deviation_payoff(int n, double gamma, double theta, double phi) {
  const double s = sin2(gamma);
  const double pi = std::numbers::pi;
  const double ct2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double st2 = 1.0 - ct2;
  const double a = 1.0 - std::cos(2 * phi - 2 * pi / n);
  const double b = 1.0 - std::cos(2 * pi / n);
  return npd_cooperator_payoff(n) * ct2 * (1 - 0.5 * s * a) + npd_defector_payoff(n - 1) * st2 * (1 - 0.5 * s * b) +
         npd_cooperator_payoff(1) * st2 * s * b / 2 + npd_defector_payoff(0) * ct2 * s * a / 2;
}

/// Last player's payoff for M1(θ, φ) while player 0 plays C_2 and the
/// others defect.
inline double npd_s1_asym_larry_payoff(int n, double gamma, double theta, double phi) {
  const double s = sin2(gamma);
  const double ct2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double st2 = 1.0 - ct2;
  const double lift = 1.0 + std::cos(2 * phi);
  return npd_cooperator_payoff(2) * ct2 * (1 - 0.5 * s * lift) + npd_defector_payoff(1) * st2 * (1 - s) +
         npd_cooperator_payoff(n - 1) * st2 * s + npd_defector_payoff(n - 2) * ct2 * s * lift / 2;
}

/// Player 0's payoff for M1(θ, φ) while everyone else defects. The CD...D
/// weight is cos²(θ/2)·[1 - s(1 - cos 2φ)/2] so that the three weights sum
/// to one.
inline double npd_s1_asym_alice_payoff(int n, double gamma, double theta, double phi) {
  const double s = sin2(gamma);
  const double ct2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double st2 = 1.0 - ct2;
  const double drop = 1.0 - std::cos(2 * phi);
  return npd_cooperator_payoff(1) * ct2 * (1 - 0.5 * s * drop) + npd_defector_payoff(n - 1) * ct2 * s * drop / 2 +
         npd_defector_payoff(0) * st2;
}

/// Last player's payoff for M2(θ, φ) while everyone else plays D_2N.
inline double npd_s2_deviation_payoff(int n, double gamma, double theta, double phi) {
  const double s = sin2(gamma);
  const double pi = std::numbers::pi;
  const double ct2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double st2 = 1.0 - ct2;
  const double a = 1.0 + std::cos(2 * phi - pi / n);
  const double b = 1.0 + std::cos(pi / n);
  return npd_cooperator_payoff(n) * st2 * s * a / 2 + npd_defector_payoff(n - 1) * ct2 * s * b / 2 +
         npd_cooperator_payoff(1) * ct2 * (1 - 0.5 * s * b) + npd_defector_payoff(0) * st2 * (1 - 0.5 * s * a);
}

/// The printed N-player S2 condition $_{C..C} s + $_{D..D} >= $_{C..CD}(1 + cos π/N).
/// Kept only so `probe` can show it against the simulator; not used for
/// certification.
inline bool npd_s2_printed_condition(int n, double gamma) {
  return npd_cooperator_payoff(n) * sin2(gamma) + npd_defector_payoff(0) >=
         npd_defector_payoff(n - 1) * (1.0 + std::cos(std::numbers::pi / n));
}

// ---------------------------------------------------------------------------
// Generalized spaces S1k
// ---------------------------------------------------------------------------

/// C_2⊗C_2 is an equilibrium iff s·cos²(kπ/2) >= 2/5.
inline bool s1k_cc_ne_condition(double gamma, double k) {
  const double c = std::cos(k * std::numbers::pi / 2);
  return sin2(gamma) * c * c >= 0.4;
}

/// Variant with cos(kπ/2) unsquared, as printed in the inline condition.
inline bool s1k_cc_ne_condition_unsquared(double gamma, double k) {
  return sin2(gamma) * std::cos(k * std::numbers::pi / 2) >= 0.4;
}

/// Bob's payoff for M1k(π, φ) against C_2 in the Prisoners' Dilemma.
inline double s1k_counter_c2_payoff(double gamma, double k, double phi) {
  // CD pays Bob 5 with weight 1 - w; DC pays him 0 with weight w.
  const double w = sin2(gamma) * std::cos(k * phi) * std::cos(k * phi);
  return 5.0 * (1.0 - w);
}

/// Bob's payoff for M1k(0, φ) against D_4k in the Prisoners' Dilemma. Bob's
/// diagonal phase is φ itself, so the weights depend on sin 2φ.
inline double s1k_cooperate_vs_d4k_payoff(double gamma, double phi) {
  const double w = sin2(gamma) * (1.0 - std::sin(2 * phi)) / 2;
  return 5.0 * w;
}

/// D_4k⊗D_4k payoff: $_CC s + $_DD (1 - s).
inline double s1k_d4k_payoff(double gamma) {
  const double s = sin2(gamma);
  return 3.0 * s + 1.0 * (1.0 - s);
}

/// D_2⊗D_2 payoff: $_CC s(1 - cos 2kπ)/2 + $_DD [1 - s(1 - cos 2kπ)/2].
inline double s1k_d2_payoff(double gamma, double k) {
  const double w = sin2(gamma) * (1.0 - std::cos(2 * k * std::numbers::pi)) / 2;
  return 3.0 * w + 1.0 * (1.0 - w);
}

}  // namespace qgame::analytic

#endif  // QGAME_ANALYTIC_ORACLES_HPP
