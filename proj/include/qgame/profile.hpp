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

#ifndef QGAME_PROFILE_HPP
#define QGAME_PROFILE_HPP

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "qgame/errors.hpp"
#include "qgame/strategy_spaces.hpp"

namespace qgame {

/// One strategy per player, plus the name it was built from.
struct Profile {
  std::vector<PlayerStrategy> players;
  std::string name;

  int size() const { return static_cast<int>(players.size()); }

  std::vector<LocalOperator> moves() const {
    std::vector<LocalOperator> ops;
    ops.reserve(players.size());
    for (const auto& p : players) ops.push_back(p.matrix());
    return ops;
  }
};

/// Splits a profile name into one strategy token per player.
///
/// Tokens are separated by '-'; "x^m" repeats token x m times. A single
/// hyphen-free token made only of the letters c, d, o, t (e.g. "dd", "ot")
/// is read one letter per player.
inline std::vector<std::string> expand_profile_tokens(std::string_view spec) {
  std::vector<std::string> out;
  if (spec.empty()) throw DomainError("empty profile name");
  const bool letters_only = spec.size() > 1 && spec.find_first_not_of("cdot") == std::string_view::npos;
  if (letters_only) {
    for (char ch : spec) out.emplace_back(1, ch);
    return out;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t dash = spec.find('-', start);
    const std::string_view part = spec.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start);
    if (part.empty()) throw DomainError("empty strategy token in profile '" + std::string(spec) + "'");
    const std::size_t caret = part.find('^');
    if (caret == std::string_view::npos) {
      out.emplace_back(part);
    } else {
      const std::string_view count_text = part.substr(caret + 1);
      int count = 0;
      const auto [end, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
      if (ec != std::errc{} || end != count_text.data() + count_text.size() || count < 1) {
        throw DomainError("bad repetition count in profile '" + std::string(spec) + "'");
      }
      for (int i = 0; i < count; ++i) out.emplace_back(part.substr(0, caret));
    }
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return out;
}

/// Resolves a profile name in the context of a strategy family.
inline Profile parse_profile(std::string_view spec, const StrategyFamily& family, int num_players) {
  const std::vector<std::string> tokens = expand_profile_tokens(spec);
  if (static_cast<int>(tokens.size()) != num_players) {
    throw DomainError("profile '" + std::string(spec) + "' names " + std::to_string(tokens.size()) +
                      " strategies for a " + std::to_string(num_players) + "-player game");
  }
  Profile profile;
  profile.name = std::string(spec);
  for (const auto& token : tokens) {
    profile.players.push_back(resolve_named(parse_named(token, num_players, family.k()), family));
  }
  return profile;
}

/// Profile where every player uses `strategy`.
inline Profile uniform_profile(const PlayerStrategy& strategy, int num_players, std::string name) {
  return Profile{std::vector<PlayerStrategy>(static_cast<std::size_t>(num_players), strategy), std::move(name)};
}

}  // namespace qgame

#endif  // QGAME_PROFILE_HPP
