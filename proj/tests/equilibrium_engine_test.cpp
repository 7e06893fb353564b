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

#include "qgame/equilibrium_engine.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qgame/analytic_oracles.hpp"
#include "test_support.hpp"

namespace qgame {
namespace {

constexpr double kPi = std::numbers::pi;
const Resolution kCoarse{37, 19, 9};

EntanglementParam s2g(double s) { return EntanglementParam::from_sin2(s); }

TEST(ResponseKernel, MatchesDirectSimulation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> gd(0, kPi / 2);
  for (int n = 2; n <= 5; ++n) {
    const GameSpec game = n_player_pd(n);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<LocalOperator> moves;
      for (int p = 0; p < n; ++p) moves.push_back(testing::random_unitary(rng));
      const EntanglementParam gamma(gd(rng));
      for (int responder = 0; responder < n; ++responder) {
        const ResponseKernel kernel(game, gamma, moves, responder);
        for (int k = 0; k < 5; ++k) {
          const LocalOperator u = testing::random_unitary(rng);
          std::vector<LocalOperator> trial_moves = moves;
          trial_moves[static_cast<std::size_t>(responder)] = u;
          EXPECT_NEAR(kernel.payoff(u), play(game, gamma, trial_moves)[static_cast<std::size_t>(responder)], 1e-11);
        }
      }
    }
  }
}

TEST(ResponseKernel, SpectralOptimumBoundsEverySu2Move) {
  std::mt19937_64 rng(12);
  for (int n = 2; n <= 4; ++n) {
    const GameSpec game = n_player_pd(n);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<LocalOperator> moves;
      for (int p = 0; p < n; ++p) moves.push_back(testing::random_unitary(rng));
      const ResponseKernel kernel(game, EntanglementParam(0.3 * trial / 2), moves, n - 1);
      const BestResponse top = kernel.su2_optimum();
      EXPECT_NO_THROW(check_in_box(StrategyFamily::full3(), top.point));
      EXPECT_NEAR(top.payoff, kernel.payoff(to_matrix(StrategyFamily::full3(), top.point)), 1e-12);
      double sampled = -1e300;
      for (int k = 0; k < 2000; ++k) sampled = std::max(sampled, kernel.payoff(testing::random_unitary(rng)));
      EXPECT_GE(top.payoff, sampled - 1e-12);
      EXPECT_LE(top.payoff - sampled, 0.1);  // the sample gets close to the top
    }
  }
}

TEST(ResponseKernel, ErrorPaths) {
  const std::vector<LocalOperator> moves(2);
  EXPECT_THROW(ResponseKernel(n_player_pd(3), s2g(0.5), moves, 0), DomainError);
  EXPECT_THROW(ResponseKernel(prisoners_dilemma(), s2g(0.5), moves, 2), DomainError);
  EXPECT_THROW(ResponseKernel(prisoners_dilemma(), s2g(0.5), moves, -1), DomainError);
}

TEST(BestResponse, DominatesEveryLatticePoint) {
  const GameSpec pd = prisoners_dilemma();
  std::mt19937_64 rng(8);
  for (const auto& space : {StrategyFamily::s1(), StrategyFamily::s2(), StrategyFamily::s1k(0.6)}) {
    const auto victims = random_strategies(space, 5, 99);
    for (const auto& v : victims) {
      const Profile profile{{v, resolve_named(NamedStrategy::c(), space)}, "x"};
      const EntanglementParam gamma = s2g(0.7);
      const BestResponse br = best_response(pd, gamma, 1, space, profile, kCoarse);
      const ResponseKernel kernel(pd, gamma, profile.moves(), 1);
      for (const auto& p : grid(space, kCoarse.theta_steps, kCoarse.phi_steps)) {
        EXPECT_GE(br.payoff, kernel.payoff(to_matrix(space, p)) - 1e-12);
      }
      EXPECT_NEAR(br.payoff, kernel.payoff(to_matrix(space, br.point)), 1e-12);
      EXPECT_NO_THROW(check_in_box(space, br.point));
    }
  }
}

TEST(BestResponse, NeverWorseThanStayingPut) {
  std::mt19937_64 rng(21);
  for (const auto& space : {StrategyFamily::s1(), StrategyFamily::s2(), StrategyFamily::s2k(0.3), StrategyFamily::full3()}) {
    const auto players = random_strategies(space, 6, 77);
    for (std::size_t i = 0; i + 1 < players.size(); i += 2) {
      const Profile profile{{players[i], players[i + 1]}, "x"};
      const double s = std::uniform_real_distribution<double>(0, 1)(rng);
      const auto current = play(chicken(), s2g(s), profile.moves());
      for (int p = 0; p < 2; ++p) {
        EXPECT_GE(best_response(chicken(), s2g(s), p, space, profile, kCoarse).payoff,
                  current[static_cast<std::size_t>(p)] - 1e-9);
      }
    }
  }
}

TEST(BestResponse, ResolutionConvergence) {
  const GameSpec game = chicken();
  const auto victims = random_strategies(StrategyFamily::s2(), 5, 4);
  for (const auto& v : victims) {
    const Profile profile{{v, resolve_named(NamedStrategy::c(), StrategyFamily::s2())}, "x"};
    const double base = best_response(game, s2g(0.4), 1, StrategyFamily::s2(), profile).payoff;
    const double fine = best_response(game, s2g(0.4), 1, StrategyFamily::s2(), profile, Resolution{}.doubled()).payoff;
    EXPECT_NEAR(base, fine, 1e-6);
  }
}

TEST(VerifyNe, PrisonersDilemmaRegions) {
  const GameSpec pd = prisoners_dilemma();
  const auto s1 = StrategyFamily::s1();
  EXPECT_TRUE(verify_ne(pd, s2g(0.0), parse_profile("dd", s1, 2), s1).is_ne);
  EXPECT_TRUE(verify_ne(pd, s2g(0.1), parse_profile("dd", s1, 2), s1).is_ne);
  EXPECT_FALSE(verify_ne(pd, s2g(0.3), parse_profile("dd", s1, 2), s1).is_ne);
  EXPECT_TRUE(verify_ne(pd, s2g(0.3), parse_profile("cprime-d", s1, 2), s1).is_ne);
  EXPECT_FALSE(verify_ne(pd, s2g(0.3), parse_profile("cprime-cprime", s1, 2), s1).is_ne);
  const NashReport q = verify_ne(pd, s2g(1.0), parse_profile("cprime-cprime", s1, 2), s1);
  EXPECT_TRUE(q.is_ne);
  EXPECT_NEAR(q.payoffs[0], 3.0, 1e-12);
  EXPECT_LE(q.worst_gain(), 1e-9);
  EXPECT_EQ(q.search_resolution, Resolution{});
}

TEST(VerifyNe, ClassicalGameAtZeroEntanglement) {
  // At γ = 0 the S1 family contains the classical pure strategies; D⊗D stays
  // the unique equilibrium, C⊗C gains 2 by defecting.
  const GameSpec pd = prisoners_dilemma();
  const NashReport r = verify_ne(pd, s2g(0.0), parse_profile("cc", StrategyFamily::s1(), 2), StrategyFamily::s1());
  EXPECT_FALSE(r.is_ne);
  EXPECT_NEAR(r.max_gain[0], 2.0, 1e-9);
  EXPECT_NEAR(r.max_gain[1], 2.0, 1e-9);
}

TEST(VerifyNe, PrisonersDilemmaS1RegionsTile) {
  const GameSpec pd = prisoners_dilemma();
  const auto s1 = StrategyFamily::s1();
  const std::vector<Profile> candidates{parse_profile("dd", s1, 2), parse_profile("cprime-d", s1, 2),
                                        parse_profile("cprime-cprime", s1, 2)};
  for (double s : linear_grid(0, 1, 41)) {
    int certified = 0;
    for (const auto& p : candidates) certified += verify_ne(pd, s2g(s), p, s1).is_ne;
    EXPECT_GE(certified, 1) << "s=" << s;
  }
}

TEST(VerifyNe, PrisonersDilemmaS2PhaseWindow) {
  // Non-strict family φ_A + φ_B = π/2 at maximal entanglement: equilibrium
  // for sin²φ_A strictly inside the reported window (0.4, 0.6).
  const GameSpec pd = prisoners_dilemma();
  const auto s2 = StrategyFamily::s2();
  const auto window = analytic::pd_s2_phi_interval(kPi / 2);
  for (double sin2phi : {0.3, 0.45, 0.5, 0.55, 0.7}) {
    const double phi = std::asin(std::sqrt(sin2phi));
    const Profile p{{{s2, StrategyPoint::two_param(kPi, phi)}, {s2, StrategyPoint::two_param(kPi, kPi / 2 - phi)}},
                    "pair"};
    EXPECT_EQ(verify_ne(pd, s2g(1.0), p, s2).is_ne, window.contains(sin2phi)) << "sin2phi=" << sin2phi;
  }
}

TEST(VerifyNe, SymmetricProfilesGiveSymmetricGains) {
  const GameSpec game = chicken();
  const auto s2 = StrategyFamily::s2();
  for (double s : {0.2, 0.5, 0.9}) {
    const NashReport r = verify_ne(game, s2g(s), parse_profile("dprime-dprime", s2, 2), s2);
    EXPECT_NEAR(r.max_gain[0], r.max_gain[1], 1e-9);
    const NashReport a = verify_ne(game, s2g(s), parse_profile("c-dprime", s2, 2), s2);
    const NashReport b = verify_ne(game, s2g(s), parse_profile("dprime-c", s2, 2), s2);
    EXPECT_NEAR(a.max_gain[0], b.max_gain[1], 1e-9);
    EXPECT_NEAR(a.max_gain[1], b.max_gain[0], 1e-9);
  }
}

TEST(VerifyNe, CertificationIsMonotoneInEpsilon) {
  const GameSpec pd = prisoners_dilemma();
  const auto s1 = StrategyFamily::s1();
  const Profile p = parse_profile("cprime-cprime", s1, 2);
  for (double s : {0.35, 0.39, 0.41}) {
    bool previous = false;
    for (double eps : {1e-6, 1e-3, 1e-2, 0.1, 1.0}) {
      const bool now = verify_ne(pd, s2g(s), p, s1, eps).is_ne;
      EXPECT_TRUE(!previous || now) << "s=" << s << " eps=" << eps;
      previous = now;
    }
  }
}

TEST(VerifyNe, ChickenS2CooperateDeviation) {
  const GameSpec game = chicken();
  const auto s2 = StrategyFamily::s2();
  const Profile p = parse_profile("dprime-dprime", s2, 2);
  EXPECT_FALSE(verify_ne(game, s2g(0.5), p, s2).is_ne);
  EXPECT_TRUE(verify_ne(game, s2g(0.75), p, s2).is_ne);
  const NashReport r = verify_ne(game, s2g(0.5), p, s2);
  EXPECT_GE(r.max_gain[1], (1 + 0.75) - 1.5 - 1e-9);  // at least the switch to C
}

TEST(VerifyNe, PerPlayerSpaces) {
  const GameSpec pd = prisoners_dilemma();
  const Profile p = parse_profile("cprime-cprime", StrategyFamily::s1(), 2);
  const std::vector<StrategyFamily> spaces{StrategyFamily::s1(), StrategyFamily::full3()};
  const NashReport r = verify_ne(pd, s2g(1.0), p, spaces, kDefaultEpsilon, kCoarse);
  EXPECT_LE(r.max_gain[0], 1e-9);
  EXPECT_GT(r.max_gain[1], 1.0);  // FULL3 has a counter to C'
  EXPECT_FALSE(r.is_ne);
  EXPECT_THROW(verify_ne(pd, s2g(1.0), p, std::vector<StrategyFamily>{StrategyFamily::s1()}), DomainError);
}

TEST(Threshold, PrisonersDilemmaS1Cooperation) {
  const GameSpec pd = prisoners_dilemma();
  const auto s1 = StrategyFamily::s1();
  const Profile p = parse_profile("cprime-cprime", s1, 2);
  const ThresholdResult r = threshold_bisect(pd, s1, [&](double) { return p; });
  EXPECT_NEAR(r.sin2gamma_star, 0.4, 1e-3);
  EXPECT_FALSE(r.ne_at_lo);
  EXPECT_LE(r.hi - r.lo, 1e-4);
  EXPECT_EQ(r.profile, "cprime-cprime");
  EXPECT_EQ(r.space, "s1");
}

TEST(Threshold, StableUnderDoubledResolution) {
  struct Case {
    GameSpec game;
    StrategyFamily space;
    const char* profile;
  };
  const std::vector<Case> cases{{prisoners_dilemma(), StrategyFamily::s1(), "dd"},
                                {prisoners_dilemma(), StrategyFamily::s1(), "cprime-cprime"},
                                {chicken(), StrategyFamily::s1(), "cprime-cprime"},
                                {chicken(), StrategyFamily::s2(), "dprime-dprime"}};
  for (const auto& c : cases) {
    const Profile p = parse_profile(c.profile, c.space, 2);
    ThresholdOptions fine;
    fine.resolution = Resolution{}.doubled();
    const double base = threshold_bisect(c.game, c.space, [&](double) { return p; }).sin2gamma_star;
    const double doubled = threshold_bisect(c.game, c.space, [&](double) { return p; }, fine).sin2gamma_star;
    EXPECT_LT(std::abs(base - doubled), 1e-4) << c.game.name() << " " << c.profile;
  }
}

TEST(Threshold, ErrorPaths) {
  const GameSpec pd = prisoners_dilemma();
  const auto s1 = StrategyFamily::s1();
  const Profile p = parse_profile("cprime-cprime", s1, 2);
  ThresholdOptions opts;
  opts.lo = 0.6;
  EXPECT_THROW(threshold_bisect(pd, s1, [&](double) { return p; }, opts), NoThresholdError);
  opts.lo = 0.9;
  opts.hi = 0.1;
  EXPECT_THROW(threshold_bisect(pd, s1, [&](double) { return p; }, opts), DomainError);
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  SweepConfig cfg;
  cfg.space = FamilyTag::S1K;
  cfg.k_grid = {0.0, 0.5, 1.0};
  cfg.sin2_grid = linear_grid(0, 1, 4);
  cfg.profiles = {"c2-c2", "dd"};
  cfg.resolution = kCoarse;
  cfg.threads = 1;
  const auto a = sweep(prisoners_dilemma(), cfg);
  cfg.threads = 4;
  const auto b = sweep(prisoners_dilemma(), cfg);
  ASSERT_EQ(a.size(), 24u);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].profile, b[i].profile);
    EXPECT_EQ(a[i].k, b[i].k);
    EXPECT_EQ(a[i].sin2gamma, b[i].sin2gamma);
    EXPECT_EQ(a[i].payoffs, b[i].payoffs);
    EXPECT_EQ(a[i].is_ne, b[i].is_ne);
    EXPECT_EQ(a[i].max_gain, b[i].max_gain);
  }
  EXPECT_EQ(a[0].k, 0.0);
  EXPECT_EQ(a[0].profile, "c2-c2");
  EXPECT_EQ(a[1].profile, "dd");
  EXPECT_EQ(a.back().k, 1.0);
}

TEST(Sweep, ErrorPaths) {
  SweepConfig cfg;
  cfg.sin2_grid = {0.5};
  EXPECT_THROW(sweep(prisoners_dilemma(), cfg), DomainError);
  cfg.profiles = {"dd"};
  cfg.space = FamilyTag::S2K;
  EXPECT_THROW(sweep(prisoners_dilemma(), cfg), DomainError);
  cfg.space = FamilyTag::S1;
  cfg.sin2_grid = {1.5};
  EXPECT_THROW(sweep(prisoners_dilemma(), cfg), DomainError);
  EXPECT_EQ(linear_grid(0, 1, 3), (std::vector<double>{0, 0.5, 1}));
  EXPECT_THROW(linear_grid(0, 1, 0), DomainError);
}

TEST(NpdMap, CandidateNames) {
  EXPECT_EQ(npd_candidate_profiles(4, FamilyTag::S1),
            (std::vector<std::string>{"c4^4", "c2-d^3", "d^4", "c2^2-d^2", "c3^3-d^1"}));
  EXPECT_EQ(npd_candidate_profiles(3, FamilyTag::S2), (std::vector<std::string>{"d6_s2^3", "d^3"}));
}

TEST(NpdMap, ThreePlayerRegions) {
  const auto t = analytic::npd_thresholds(3);
  const std::vector<double> grid{t.lower_classical / 2, 0.5 * (t.coop_threshold + t.asym_upper), 0.9};
  const auto rows = npd_ne_map(3, FamilyTag::S1, grid, kDefaultEpsilon, kCoarse, 2);
  const std::size_t per = npd_candidate_profiles(3, FamilyTag::S1).size();
  ASSERT_EQ(rows.size(), grid.size() * per);
  auto verdict = [&](std::size_t gi, std::size_t pi) { return rows[gi * per + pi].is_ne; };
  EXPECT_FALSE(verdict(0, 0));
  EXPECT_FALSE(verdict(0, 1));
  EXPECT_TRUE(verdict(0, 2));
  EXPECT_TRUE(verdict(1, 0));
  EXPECT_TRUE(verdict(1, 1));
  EXPECT_TRUE(verdict(2, 0));
  EXPECT_FALSE(verdict(2, 1));
  EXPECT_FALSE(verdict(2, 2));
  EXPECT_THROW(npd_ne_map(10, FamilyTag::S1, grid), DomainError);
  EXPECT_THROW(npd_ne_map(3, FamilyTag::Full3, grid), DomainError);
}

TEST(BestResponse, Full3PhasesWrapAcrossTheBoxEdge) {
  // The optimum sits at β ≈ 3.04 while the best lattice point is its image
  // at β = -π; the polish has to cross the ±π seam to reach it.
  const GameSpec pd = prisoners_dilemma();
  const auto full3 = StrategyFamily::full3();
  const PlayerStrategy victim{full3, StrategyPoint::three_param(0.657259, 3.03822, 2.95997)};
  const Profile profile{{victim, resolve_named(NamedStrategy::c(), full3)}, "x"};
  Resolution lattice_only;
  lattice_only.full3_spectral = false;
  const BestResponse br = best_response(pd, EntanglementParam(kPi / 2), 1, full3, profile, lattice_only);
  EXPECT_NEAR(br.payoff, 5.0, 1e-6);
  EXPECT_NO_THROW(check_in_box(full3, br.point));
}

TEST(BestResponse, Full3SpectralCandidateNeverLosesToTheLattice) {
  const GameSpec pd = prisoners_dilemma();
  const auto full3 = StrategyFamily::full3();
  Resolution lattice_only;
  lattice_only.full3_spectral = false;
  for (const auto& v : random_strategies(full3, 20, 1)) {
    const Profile profile{{v, resolve_named(NamedStrategy::c(), full3)}, "x"};
    const double with = best_response(pd, EntanglementParam(kPi / 2), 1, full3, profile).payoff;
    const double without = best_response(pd, EntanglementParam(kPi / 2), 1, full3, profile, lattice_only).payoff;
    EXPECT_GE(with, without - 1e-12);
    EXPECT_NEAR(with, 5.0, 1e-9);
  }
}

TEST(NpdMap, ThreeCooperatorsAndOneDefectorIsCertifiedAtHighEntanglement) {
  // C_3^3 ⊗ D in the four-player game: the defector already has the top
  // payoff 13 and no S1 deviation lifts a cooperator above 7 once
  // sin²γ is large enough.
  const GameSpec game = n_player_pd(4);
  const auto s1 = StrategyFamily::s1();
  const Profile p = parse_profile("c3^3-d", s1, 4);
  const NashReport high = verify_ne(game, s2g(0.6), p, s1);
  EXPECT_TRUE(high.is_ne);
  EXPECT_NEAR(high.payoffs[0], 7.0, 1e-12);
  EXPECT_NEAR(high.payoffs[3], 13.0, 1e-12);
  EXPECT_FALSE(verify_ne(game, s2g(0.3), p, s1).is_ne);
}

TEST(Counter, SeededDrawsAreReproducible) {
  const auto a = random_strategies(StrategyFamily::full3(), 20, 42);
  const auto b = random_strategies(StrategyFamily::full3(), 20, 42);
  const auto c = random_strategies(StrategyFamily::full3(), 20, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& s : a) EXPECT_NO_THROW(s.matrix());
}

TEST(Counter, SpecExamples) {
  const GameSpec pd = prisoners_dilemma();
  const std::vector<PlayerStrategy> c{resolve_named(NamedStrategy::c())};
  EXPECT_NEAR(counter_strategy_check(pd, EntanglementParam(0.0), c, StrategyFamily::full3()).min_payoff, 5.0, 1e-12);
  const std::vector<PlayerStrategy> cp{resolve_named(NamedStrategy::cprime())};
  EXPECT_NEAR(counter_strategy_check(pd, EntanglementParam(kPi / 2), cp, StrategyFamily::s1()).min_payoff, 3.0, 1e-9);
  EXPECT_NEAR(counter_strategy_check(pd, EntanglementParam(kPi / 2), cp, StrategyFamily::full3()).min_payoff, 5.0, 1e-9);
}

TEST(Counter, Full3ResponderExploitsVictims) {
  const GameSpec pd = prisoners_dilemma();
  const auto victims = random_strategies(StrategyFamily::full3(), 4, 5);
  const CounterResult r = counter_strategy_check(pd, s2g(1.0), victims, StrategyFamily::full3(), {}, 2);
  ASSERT_EQ(r.payoffs.size(), 4u);
  EXPECT_GE(r.min_payoff, 5.0 - 1e-3);
  EXPECT_EQ(r.payoffs[r.worst_index], r.min_payoff);
  EXPECT_THROW(counter_strategy_check(n_player_pd(3), s2g(1.0), victims, StrategyFamily::full3()), DomainError);
  EXPECT_THROW(counter_strategy_check(pd, s2g(1.0), std::vector<PlayerStrategy>{}, StrategyFamily::full3()),
               DomainError);
}

}  // namespace
}  // namespace qgame
