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

#ifndef QGAME_STRATEGY_SPACES_HPP
#define QGAME_STRATEGY_SPACES_HPP

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgame/errors.hpp"
#include "qgame/quantum_engine.hpp"

namespace qgame {

enum class FamilyTag { S1, S2, S1K, S2K, Full3 };

/// A two-parameter slice of SU(2) (optionally with a fixed exponent k), or
/// the full three-parameter group.
class StrategyFamily {
 public:
  static StrategyFamily s1() { return StrategyFamily(FamilyTag::S1, 0.0); }
  static StrategyFamily s2() { return StrategyFamily(FamilyTag::S2, 0.0); }
  static StrategyFamily full3() { return StrategyFamily(FamilyTag::Full3, 0.0); }
  static StrategyFamily s1k(double k) { return StrategyFamily(FamilyTag::S1K, checked_k(k)); }
  static StrategyFamily s2k(double k) { return StrategyFamily(FamilyTag::S2K, checked_k(k)); }

  static StrategyFamily make(FamilyTag tag, double k = 0.0) {
    switch (tag) {
      case FamilyTag::S1: return s1();
      case FamilyTag::S2: return s2();
      case FamilyTag::S1K: return s1k(k);
      case FamilyTag::S2K: return s2k(k);
      case FamilyTag::Full3: return full3();
    }
    throw DomainError("unknown family tag");
  }

  FamilyTag tag() const { return tag_; }
  bool has_k() const { return tag_ == FamilyTag::S1K || tag_ == FamilyTag::S2K; }
  /// Fixed exponent; zero for families without one.
  double k() const { return k_; }
  int dimension() const { return tag_ == FamilyTag::Full3 ? 3 : 2; }

  std::string name() const {
    switch (tag_) {
      case FamilyTag::S1: return "s1";
      case FamilyTag::S2: return "s2";
      case FamilyTag::S1K: return "s1k";
      case FamilyTag::S2K: return "s2k";
      case FamilyTag::Full3: return "full3";
    }
    return "?";
  }

  friend bool operator==(const StrategyFamily&, const StrategyFamily&) = default;

 private:
  StrategyFamily(FamilyTag tag, double k) : tag_(tag), k_(k) {}

  static double checked_k(double k) {
    if (!(k >= 0.0 && k <= 1.0)) throw DomainError("k must lie in [0, 1], got " + std::to_string(k));
    return k;
  }

  FamilyTag tag_;
  double k_;
};

/// Parses s1, s2, s1k, s2k, full3. `k` is used by s1k and s2k only.
inline StrategyFamily family_by_name(std::string_view name, double k = 0.0) {
  if (name == "s1") return StrategyFamily::s1();
  if (name == "s2") return StrategyFamily::s2();
  if (name == "s1k") return StrategyFamily::s1k(k);
  if (name == "s2k") return StrategyFamily::s2k(k);
  if (name == "full3") return StrategyFamily::full3();
  throw DomainError("unknown strategy space '" + std::string(name) + "'");
}

/// Coordinates in a strategy box. Two-parameter families use (theta, phi);
/// FULL3 uses (theta, alpha, beta). Unused coordinates stay zero.
struct StrategyPoint {
  double theta = 0.0;
  double phi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  static StrategyPoint two_param(double theta, double phi) { return {theta, phi, 0.0, 0.0}; }
  static StrategyPoint three_param(double theta, double alpha, double beta) { return {theta, 0.0, alpha, beta}; }

  friend bool operator==(const StrategyPoint&, const StrategyPoint&) = default;
};

/// Lower and upper bound of coordinate `axis` of a family's box. Axis order:
/// (theta, phi) or (theta, alpha, beta).
inline std::pair<double, double> axis_bounds(const StrategyFamily& family, int axis) {
  constexpr double pi = std::numbers::pi;
  if (axis == 0) return {0.0, pi};
  if (family.tag() == FamilyTag::Full3) return {-pi, pi};
  return {0.0, pi / 2};
}

inline double coordinate(const StrategyFamily& family, const StrategyPoint& point, int axis) {
  if (axis == 0) return point.theta;
  if (family.tag() == FamilyTag::Full3) return axis == 1 ? point.alpha : point.beta;
  return point.phi;
}

inline void set_coordinate(const StrategyFamily& family, StrategyPoint& point, int axis, double value) {
  if (axis == 0) point.theta = value;
  else if (family.tag() == FamilyTag::Full3) (axis == 1 ? point.alpha : point.beta) = value;
  else point.phi = value;
}

/// Throws DomainError when `point` lies outside the family's box or sets a
/// coordinate the family does not use.
inline void check_in_box(const StrategyFamily& family, const StrategyPoint& point) {
  constexpr double kSlack = 1e-12;
  for (int axis = 0; axis < family.dimension(); ++axis) {
    const auto [lo, hi] = axis_bounds(family, axis);
    const double x = coordinate(family, point, axis);
    if (!(x >= lo - kSlack && x <= hi + kSlack)) {
      throw DomainError("coordinate " + std::to_string(axis) + " = " + std::to_string(x) + " outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "] for family " + family.name());
    }
  }
  const bool full3 = family.tag() == FamilyTag::Full3;
  if ((full3 && point.phi != 0.0) || (!full3 && (point.alpha != 0.0 || point.beta != 0.0))) {
    throw DomainError("point sets coordinates unused by family " + family.name());
  }
}

/// [[e^{iα} cos(θ/2), i e^{iβ} sin(θ/2)], [i e^{-iβ} sin(θ/2), e^{-iα} cos(θ/2)]].
/// Every family is a slice of this map.
inline LocalOperator su2_matrix(double theta, double alpha, double beta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const Complex i{0, 1};
  return LocalOperator::unchecked(std::polar(c, alpha), i * std::polar(s, beta), i * std::polar(s, -beta),
                                  std::polar(c, -alpha));
}

/// Diagonal and off-diagonal phases (α, β) of a family point.
inline std::pair<double, double> phases(const StrategyFamily& family, const StrategyPoint& point) {
  switch (family.tag()) {
    case FamilyTag::S1: return {point.phi, 0.0};
    case FamilyTag::S2: return {0.0, point.phi};
    case FamilyTag::S1K: return {point.phi, family.k() * point.phi};
    case FamilyTag::S2K: return {family.k() * point.phi, point.phi};
    case FamilyTag::Full3: return {point.alpha, point.beta};
  }
  return {0.0, 0.0};
}

/// Matrix without box validation, for hot loops over points already known
/// to be in-box.
inline LocalOperator to_matrix_unchecked(const StrategyFamily& family, const StrategyPoint& point) {
  const auto [alpha, beta] = phases(family, point);
  return su2_matrix(point.theta, alpha, beta);
}

inline LocalOperator to_matrix(const StrategyFamily& family, const StrategyPoint& point) {
  check_in_box(family, point);
  return to_matrix_unchecked(family, point);
}

/// Inclusive uniform lattice over the family box. FULL3 adds a third axis
/// over β with `steps_beta` points (defaults to `steps_phi`); `steps_phi`
/// then drives α.
inline std::vector<StrategyPoint> grid(const StrategyFamily& family, int steps_theta, int steps_phi,
                                       std::optional<int> steps_beta = std::nullopt) {
  const int steps_third = steps_beta.value_or(steps_phi);
  if (steps_theta < 2 || steps_phi < 2 || steps_third < 2) throw DomainError("grid counts must be >= 2");
  auto lattice = [&](int axis, int steps, int i) {
    const auto [lo, hi] = axis_bounds(family, axis);
    return i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1);
  };
  std::vector<StrategyPoint> points;
  if (family.tag() == FamilyTag::Full3) {
    points.reserve(static_cast<std::size_t>(steps_theta) * steps_phi * steps_third);
    for (int a = 0; a < steps_theta; ++a)
      for (int b = 0; b < steps_phi; ++b)
        for (int c = 0; c < steps_third; ++c)
          points.push_back(StrategyPoint::three_param(lattice(0, steps_theta, a), lattice(1, steps_phi, b),
                                                      lattice(2, steps_third, c)));
  } else {
    points.reserve(static_cast<std::size_t>(steps_theta) * steps_phi);
    for (int a = 0; a < steps_theta; ++a)
      for (int b = 0; b < steps_phi; ++b)
        points.push_back(StrategyPoint::two_param(lattice(0, steps_theta, a), lattice(1, steps_phi, b)));
  }
  return points;
}

// ---------------------------------------------------------------------------
// Named strategies
// ---------------------------------------------------------------------------

/// Strategies that the analysis refers to by name.
///  - C, D: classical cooperate (θ=0) and defect (θ=π), all phases zero.
///  - Cprime: M1(0, π/2) = diag(i, -i). Equal to C_n(2) and to C2.
///  - Dprime: M2(π, π/4).
///  - Cn: M1(0, π/n).
///  - DnS2: M2(π, π/n); the N-player S2 equilibrium strategy uses n = 2N.
///  - DnS1K: M1k(π, π/n); D2 is n = 2.
///  - D4k: M1k(π, π/(4k)), which needs k >= 1/2 to keep φ <= π/2.
enum class NamedKind { C, D, Cprime, Dprime, Cn, DnS2, DnS1K, D4k };

struct NamedStrategy {
  NamedKind kind;
  int n = 0;       // for Cn, DnS2, DnS1K
  double k = 0.0;  // for D4k and DnS1K outside an S1K context

  static NamedStrategy c() { return {NamedKind::C}; }
  static NamedStrategy d() { return {NamedKind::D}; }
  static NamedStrategy cprime() { return {NamedKind::Cprime}; }
  static NamedStrategy dprime() { return {NamedKind::Dprime}; }
  static NamedStrategy c_n(int n) { return {NamedKind::Cn, n}; }
  static NamedStrategy d2n_s2(int num_players) { return {NamedKind::DnS2, 2 * num_players}; }
  static NamedStrategy d_n_s2(int n) { return {NamedKind::DnS2, n}; }
  static NamedStrategy d_n_s1k(int n, double k) { return {NamedKind::DnS1K, n, k}; }
  static NamedStrategy d4k(double k) { return {NamedKind::D4k, 0, k}; }
  static NamedStrategy c2() { return c_n(2); }
  static NamedStrategy d2(double k) { return d_n_s1k(2, k); }
};

struct PlayerStrategy {
  StrategyFamily family;
  StrategyPoint point;

  LocalOperator matrix() const { return to_matrix(family, point); }
  friend bool operator==(const PlayerStrategy&, const PlayerStrategy&) = default;
};

namespace detail {

[[noreturn]] inline void not_in_family(std::string_view what, const StrategyFamily& family) {
  throw DomainError(std::string(what) + " is not expressible in family " + family.name());
}

inline StrategyFamily home_family(const NamedStrategy& s) {
  switch (s.kind) {
    case NamedKind::C:
    case NamedKind::D:
    case NamedKind::Cprime:
    case NamedKind::Cn: return StrategyFamily::s1();
    case NamedKind::Dprime:
    case NamedKind::DnS2: return StrategyFamily::s2();
    case NamedKind::DnS1K:
    case NamedKind::D4k: return StrategyFamily::s1k(s.k);
  }
  return StrategyFamily::s1();
}

}  // namespace detail

/// Resolves a named strategy to a point of `context` (or of the strategy's
/// home family when no context is given). Names outside the context family
/// raise DomainError.
inline PlayerStrategy resolve_named(const NamedStrategy& s, std::optional<StrategyFamily> context = std::nullopt) {
  constexpr double pi = std::numbers::pi;
  const StrategyFamily family = context.value_or(detail::home_family(s));
  const FamilyTag tag = family.tag();
  const bool full3 = tag == FamilyTag::Full3;

  auto make = [&](double theta, double phi, double alpha = 0.0, double beta = 0.0) {
    const StrategyPoint p = full3 ? StrategyPoint::three_param(theta, alpha, beta) : StrategyPoint::two_param(theta, phi);
    check_in_box(family, p);
    return PlayerStrategy{family, p};
  };

  switch (s.kind) {
    case NamedKind::C: return make(0.0, 0.0);
    case NamedKind::D: return make(pi, 0.0);
    case NamedKind::Cprime:
    case NamedKind::Cn: {
      const int n = s.kind == NamedKind::Cprime ? 2 : s.n;
      if (n < 2) throw DomainError("C_n needs n >= 2 so that pi/n <= pi/2");
      if (tag != FamilyTag::S1 && tag != FamilyTag::S1K && !full3) detail::not_in_family("C_n", family);
      return make(0.0, pi / n, pi / n, 0.0);
    }
    case NamedKind::Dprime:
    case NamedKind::DnS2: {
      const int n = s.kind == NamedKind::Dprime ? 4 : s.n;
      if (n < 2) throw DomainError("D_n (S2) needs n >= 2 so that pi/n <= pi/2");
      if (tag != FamilyTag::S2 && tag != FamilyTag::S2K && !full3) detail::not_in_family("D_n (S2)", family);
      return make(pi, pi / n, 0.0, pi / n);
    }
    case NamedKind::DnS1K: {
      if (s.n < 2) throw DomainError("D_n (S1k) needs n >= 2 so that pi/n <= pi/2");
      if (tag != FamilyTag::S1K && tag != FamilyTag::S1) detail::not_in_family("D_n (S1k)", family);
      return make(pi, pi / s.n);
    }
    case NamedKind::D4k: {
      const double k = tag == FamilyTag::S1K ? family.k() : s.k;
      if (tag != FamilyTag::S1K) detail::not_in_family("D_4k", family);
      if (k < 0.5) throw DomainError("D_4k can only be chosen when k >= 1/2 (phi = pi/(4k) must not exceed pi/2)");
      return make(pi, pi / (4 * k));
    }
  }
  throw DomainError("unknown named strategy");
}

/// Parses one strategy token: c, d, o, t, cprime, dprime, cn, d2n_s2, d4k,
/// c<n>, d<n> (S1k family, so d2 is D2) and d<n>_s2. `num_players` resolves
/// cn and d2n_s2; `k` is the context exponent.
inline NamedStrategy parse_named(std::string_view token, int num_players, double k = 0.0) {
  if (token == "c" || token == "o") return NamedStrategy::c();
  if (token == "d" || token == "t") return NamedStrategy::d();
  if (token == "cprime") return NamedStrategy::cprime();
  if (token == "dprime") return NamedStrategy::dprime();
  if (token == "cn") return NamedStrategy::c_n(num_players);
  if (token == "d2n_s2") return NamedStrategy::d2n_s2(num_players);
  if (token == "d4k") return NamedStrategy::d4k(k);
  auto parse_int = [&](std::string_view digits) {
    int n = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size()) {
      throw DomainError("unknown strategy name '" + std::string(token) + "'");
    }
    return n;
  };
  if (token.size() > 1 && token[0] == 'c') return NamedStrategy::c_n(parse_int(token.substr(1)));
  if (token.size() > 1 && token[0] == 'd') {
    std::string_view rest = token.substr(1);
    if (rest.size() > 3 && rest.substr(rest.size() - 3) == "_s2") {
      return NamedStrategy::d_n_s2(parse_int(rest.substr(0, rest.size() - 3)));
    }
    return NamedStrategy::d_n_s1k(parse_int(rest), k);
  }
  throw DomainError("unknown strategy name '" + std::string(token) + "'");
}

}  // namespace qgame

#endif  // QGAME_STRATEGY_SPACES_HPP
