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

#ifndef QGAME_GAME_LIBRARY_HPP
#define QGAME_GAME_LIBRARY_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgame/errors.hpp"

namespace qgame {

inline constexpr int kMaxPlayers = 12;

/// Number of outcomes of an N-player binary-move game.
constexpr std::size_t outcome_count(int num_players) { return std::size_t{1} << num_players; }

/// Bit mask of `player` inside an outcome index. Player 0 is the most
/// significant bit, so outcome "CD" (Alice C, Bob D) is index 0b01.
constexpr std::size_t player_mask(int num_players, int player) {
  return std::size_t{1} << (num_players - 1 - player);
}

/// Move (0 or 1) of `player` in `outcome`.
constexpr int move_of(std::size_t outcome, int num_players, int player) {
  return (outcome & player_mask(num_players, player)) != 0 ? 1 : 0;
}

inline std::vector<int> outcome_moves(std::size_t outcome, int num_players) {
  std::vector<int> moves(static_cast<std::size_t>(num_players));
  for (int p = 0; p < num_players; ++p) moves[static_cast<std::size_t>(p)] = move_of(outcome, num_players, p);
  return moves;
}

inline std::size_t outcome_index(const std::vector<int>& moves) {
  std::size_t index = 0;
  for (int m : moves) index = (index << 1) | static_cast<std::size_t>(m != 0);
  return index;
}

/// Payoff table of a binary-move game: every (outcome, player) pair is
/// materialized. Move labels are cosmetic aliases for bits 0 and 1.
class GameSpec {
 public:
  GameSpec(std::string name, int num_players, std::array<char, 2> labels = {'C', 'D'})
      : name_(std::move(name)), num_players_(num_players), labels_(labels) {
    if (num_players < 2 || num_players > kMaxPlayers) {
      throw DomainError("player count must lie in [2, " + std::to_string(kMaxPlayers) +
                        "], got " + std::to_string(num_players));
    }
    table_.assign(outcome_count(num_players) * static_cast<std::size_t>(num_players), 0.0);
  }

  const std::string& name() const { return name_; }
  int num_players() const { return num_players_; }
  std::size_t num_outcomes() const { return outcome_count(num_players_); }
  std::array<char, 2> labels() const { return labels_; }

  double payoff(std::size_t outcome, int player) const { return table_[slot(outcome, player)]; }

  void set_payoff(std::size_t outcome, int player, double value) {
    if (!std::isfinite(value)) throw DomainError("payoff must be finite");
    table_[slot(outcome, player)] = value;
  }

  /// Outcome rendered with the game's move labels, player 0 first.
  std::string outcome_label(std::size_t outcome) const {
    std::string s;
    for (int p = 0; p < num_players_; ++p) s.push_back(labels_[static_cast<std::size_t>(move_of(outcome, num_players_, p))]);
    return s;
  }

  /// Inverse of outcome_label.
  std::size_t parse_outcome(std::string_view label) const {
    if (label.size() != static_cast<std::size_t>(num_players_)) {
      throw DomainError("outcome label '" + std::string(label) + "' has wrong length");
    }
    std::size_t index = 0;
    for (char ch : label) {
      int bit;
      if (ch == labels_[0] || ch == '0') bit = 0;
      else if (ch == labels_[1] || ch == '1') bit = 1;
      else throw DomainError("bad move label '" + std::string(1, ch) + "'");
      index = (index << 1) | static_cast<std::size_t>(bit);
    }
    return index;
  }

 private:
  std::size_t slot(std::size_t outcome, int player) const {
    if (outcome >= num_outcomes() || player < 0 || player >= num_players_) {
      throw DomainError("payoff index out of range");
    }
    return outcome * static_cast<std::size_t>(num_players_) + static_cast<std::size_t>(player);
  }

  std::string name_;
  int num_players_;
  std::array<char, 2> labels_;
  std::vector<double> table_;
};

namespace detail {

inline GameSpec two_player(std::string name, std::array<std::pair<double, double>, 4> cells,
                           std::array<char, 2> labels) {
  GameSpec game(std::move(name), 2, labels);
  for (std::size_t outcome = 0; outcome < 4; ++outcome) {
    game.set_payoff(outcome, 0, cells[outcome].first);
    game.set_payoff(outcome, 1, cells[outcome].second);
  }
  return game;
}

}  // namespace detail

/// CC (3,3), CD (0,5), DC (5,0), DD (1,1).
inline GameSpec prisoners_dilemma() {
  return detail::two_player("pd", {{{3, 3}, {0, 5}, {5, 0}, {1, 1}}}, {'C', 'D'});
}

/// Mutual defection is the worst outcome.
inline GameSpec chicken() {
  return detail::two_player("chicken", {{{3, 3}, {1, 4}, {4, 1}, {0, 0}}}, {'C', 'D'});
}

/// Opera is bit 0, television bit 1. Alice prefers opera.
inline GameSpec battle_of_sexes() {
  return detail::two_player("bos", {{{2, 1}, {0, 0}, {0, 0}, {1, 2}}}, {'O', 'T'});
}

/// Cooperator payoff with `cooperators` players cooperating in total.
constexpr double npd_cooperator_payoff(int cooperators) {
  return cooperators == 1 ? 0.0 : 3.0 + 4.0 * (cooperators - 2);
}

/// Defector payoff with `cooperators` players cooperating in total.
constexpr double npd_defector_payoff(int cooperators) { return 5.0 + 4.0 * (cooperators - 1); }

/// N-player mutual Prisoners' Dilemma. A cooperator receives 0 when alone and
/// 3 + 4(m-2) otherwise; a defector receives 5 + 4(m-1), m = number of
/// cooperators.
inline GameSpec n_player_pd(int n) {
  if (n < 2 || n > kMaxPlayers) {
    throw DomainError("npd player count must lie in [2, " + std::to_string(kMaxPlayers) + "], got " +
                      std::to_string(n));
  }
  GameSpec game("npd:" + std::to_string(n), n, {'C', 'D'});
  for (std::size_t outcome = 0; outcome < game.num_outcomes(); ++outcome) {
    int cooperators = 0;
    for (int p = 0; p < n; ++p) cooperators += move_of(outcome, n, p) == 0 ? 1 : 0;
    for (int p = 0; p < n; ++p) {
      game.set_payoff(outcome, p,
                      move_of(outcome, n, p) == 0 ? npd_cooperator_payoff(cooperators)
                                                  : npd_defector_payoff(cooperators));
    }
  }
  return game;
}

/// Game names accepted on the command line: pd, chicken, bos, npd:<N>.
inline GameSpec game_by_name(std::string_view name) {
  if (name == "pd") return prisoners_dilemma();
  if (name == "chicken") return chicken();
  if (name == "bos") return battle_of_sexes();
  if (name.substr(0, 4) == "npd:") {
    const std::string_view digits = name.substr(4);
    int n = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || end != digits.data() + digits.size()) {
      throw DomainError("bad player count in game name '" + std::string(name) + "'");
    }
    return n_player_pd(n);
  }
  throw DomainError("unknown game '" + std::string(name) + "'");
}

/// One failed N-player PD axiom with the outcome that witnesses it.
struct AxiomViolation {
  char axiom;            // 'a' dominance, 'b' monotonicity, 'c' 2x2 restriction
  std::size_t outcome;   // witness outcome index
  int player;
  int other = -1;        // second player involved, for 'b' and 'c'
  std::string message;
};

struct NpdVerdict {
  std::vector<AxiomViolation> violations;
  bool passed() const { return violations.empty(); }
  bool axiom_holds(char axiom) const {
    for (const auto& v : violations) {
      if (v.axiom == axiom) return false;
    }
    return true;
  }
};

/// Exhaustively checks the three N-player Prisoners' Dilemma axioms:
///  (a) defection strictly dominates cooperation for every player;
///  (b) a player's payoff strictly increases when any other player switches
///      from defection to cooperation;
///  (c) every 2x2 restriction (two players free, the rest fixed) has the PD
///      ordering T > R > P > S for both free players.
inline NpdVerdict validate_npd(const GameSpec& game) {
  NpdVerdict verdict;
  const int n = game.num_players();
  auto witness = [&](char axiom, std::size_t outcome, int player, int other, const std::string& what) {
    verdict.violations.push_back({axiom, outcome, player, other,
                                  std::string("axiom (") + axiom + ") fails at outcome " +
                                      game.outcome_label(outcome) + " for player " + std::to_string(player) +
                                      ": " + what});
  };

  for (std::size_t outcome = 0; outcome < game.num_outcomes(); ++outcome) {
    for (int p = 0; p < n; ++p) {
      const std::size_t pm = player_mask(n, p);
      if ((outcome & pm) == 0) {
        const std::size_t defect = outcome | pm;
        if (!(game.payoff(defect, p) > game.payoff(outcome, p))) {
          witness('a', outcome, p, -1, "cooperating pays at least as much as defecting");
        }
      }
      for (int q = 0; q < n; ++q) {
        const std::size_t qm = player_mask(n, q);
        if (q == p || (outcome & qm) == 0) continue;
        const std::size_t flipped = outcome & ~qm;
        if (!(game.payoff(flipped, p) > game.payoff(outcome, p))) {
          witness('b', outcome, p, q, "another cooperator does not raise the payoff");
        }
      }
    }
  }

  // Restriction: enumerate outcomes where both free players cooperate.
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const std::size_t pm = player_mask(n, p);
      const std::size_t qm = player_mask(n, q);
      for (std::size_t base = 0; base < game.num_outcomes(); ++base) {
        if ((base & (pm | qm)) != 0) continue;
        for (auto [me, them] : {std::pair{p, q}, std::pair{q, p}}) {
          const std::size_t mm = player_mask(n, me);
          const std::size_t tm = player_mask(n, them);
          const double reward = game.payoff(base, me);
          const double temptation = game.payoff(base | mm, me);
          const double punishment = game.payoff(base | mm | tm, me);
          const double sucker = game.payoff(base | tm, me);
          if (!(temptation > reward && reward > punishment && punishment > sucker)) {
            witness('c', base, me, them, "restricted 2x2 game is not ordered T > R > P > S");
          }
        }
      }
    }
  }
  return verdict;
}

}  // namespace qgame

#endif  // QGAME_GAME_LIBRARY_HPP
