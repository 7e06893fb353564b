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

#ifndef QGAME_EQUILIBRIUM_ENGINE_HPP
#define QGAME_EQUILIBRIUM_ENGINE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qgame/errors.hpp"
#include "qgame/game_library.hpp"
#include "qgame/golden_section.hpp"
#include "qgame/parallel.hpp"
#include "qgame/profile.hpp"
#include "qgame/quantum_engine.hpp"
#include "qgame/strategy_spaces.hpp"

namespace qgame {

inline constexpr double kDefaultEpsilon = 1e-3;
inline constexpr double kPolishTolerance = 1e-6;

/// Deviation lattice sizes. The defaults give 1 degree spacing in θ and φ.
struct Resolution {
  int theta_steps = 181;
  int phi_steps = 91;
  int full3_steps = 31;
  /// FULL3 only: let the exact spectral optimum (ResponseKernel::su2_optimum)
  /// compete with the lattice optimum before polishing.
  bool full3_spectral = true;

  Resolution doubled() const {
    return {2 * theta_steps - 1, 2 * phi_steps - 1, 2 * full3_steps - 1, full3_spectral};
  }
  friend bool operator==(const Resolution&, const Resolution&) = default;
};

struct BestResponse {
  StrategyPoint point;
  double payoff = 0.0;
};

/// Responder payoff as a function of the responder's 2x2 move with every
/// other move held fixed.
///
/// The final state is linear in the four entries u of the responder's
/// matrix, so the payoff is the Hermitian form u† Q u. Q is built once from
/// four partial evolutions; each evaluation afterwards costs O(1) instead of
/// O(2^N).
class ResponseKernel {
 public:
  ResponseKernel(const GameSpec& game, EntanglementParam gamma, std::span<const LocalOperator> moves, int responder)
      : responder_(responder) {
    const int n = game.num_players();
    if (static_cast<int>(moves.size()) != n) throw DomainError("profile size does not match the game");
    if (responder < 0 || responder >= n) throw DomainError("responder index out of range");
    const Entangler j = build_entangler(gamma, n);

    StateVector chi = StateVector::ground(n);
    j.apply(chi);
    for (int p = 0; p < n; ++p) {
      if (p != responder) chi.apply_local(p, moves[static_cast<std::size_t>(p)]);
    }

    const std::size_t mask = player_mask(n, responder);
    const std::size_t dim = chi.size();
    std::array<std::vector<Complex>, 4> partial;
    for (int r = 0; r < 4; ++r) {
      const std::size_t row_bit = (r >> 1) != 0 ? mask : 0;
      const std::size_t col_bit = (r & 1) != 0 ? mask : 0;
      std::vector<Complex> amps(dim, Complex{0});
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask) == row_bit) amps[i] = chi[(i & ~mask) | col_bit];
      }
      StateVector v = StateVector::unnormalized(n, std::move(amps));
      j.apply_adjoint(v);
      partial[static_cast<std::size_t>(r)].assign(v.amplitudes().begin(), v.amplitudes().end());
    }

    for (int r = 0; r < 4; ++r) {
      for (int s = 0; s < 4; ++s) {
        Complex acc{0};
        for (std::size_t i = 0; i < dim; ++i) {
          acc += game.payoff(i, responder) * std::conj(partial[static_cast<std::size_t>(r)][i]) *
                 partial[static_cast<std::size_t>(s)][i];
        }
        q_[static_cast<std::size_t>(4 * r + s)] = acc;
      }
    }
  }

  int responder() const { return responder_; }

  /// Exact maximum over all of SU(2).
  ///
  /// An SU(2) matrix [[A, B], [-B̄, Ā]] is real-linear in v = (Re A, Im A,
  /// Re B, Im B) with |v| = 1, so the payoff is a real quadratic form v'Mv on
  /// the unit 3-sphere and its maximum is the top eigenvalue of M.
  BestResponse su2_optimum() const;

  double payoff(const LocalOperator& u) const {
    const auto& e = u.entries();
    double total = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
      total += q_[5 * r].real() * std::norm(e[r]);
      for (std::size_t s = r + 1; s < 4; ++s) total += 2.0 * (std::conj(e[r]) * e[s] * q_[4 * r + s]).real();
    }
    return total;
  }

 private:
  int responder_;
  std::array<Complex, 16> q_{};
};


inline BestResponse ResponseKernel::su2_optimum() const {
  auto form = [&](const std::array<double, 4>& v) {
    const Complex a{v[0], v[1]}, b{v[2], v[3]};
    return payoff(LocalOperator::unchecked(a, b, -std::conj(b), std::conj(a)));
  };
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      std::array<double, 4> plus{}, minus{};
      plus[static_cast<std::size_t>(i)] += 1;
      plus[static_cast<std::size_t>(j)] += 1;
      minus[static_cast<std::size_t>(i)] += 1;
      minus[static_cast<std::size_t>(j)] -= 1;
      m(i, j) = m(j, i) = i == j ? form(plus) / 4 : (form(plus) - form(minus)) / 4;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(m);
  const Eigen::Vector4d v = solver.eigenvectors().col(3);
  const Complex a{v(0), v(1)}, b{v(2), v(3)};
  // b = i e^{iβ} sin(θ/2), a = e^{iα} cos(θ/2).
  const double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  const double alpha = std::abs(a) > 0 ? std::arg(a) : 0.0;
  const double beta = std::abs(b) > 0 ? std::remainder(std::arg(b) - std::numbers::pi / 2, 2 * std::numbers::pi) : 0.0;
  const StrategyPoint point = StrategyPoint::three_param(std::clamp(theta, 0.0, std::numbers::pi), alpha, beta);
  return {point, payoff(su2_matrix(point.theta, alpha, beta))};
}

namespace detail {

/// Lattice search plus coordinate-wise golden-section polish over a family
/// box. The lowest lattice index wins ties. `seeds`, when given, compete
/// with the lattice optimum (in order, strict improvement only) before
/// polishing.
template <typename Objective>
BestResponse maximize_over_family(const StrategyFamily& family, const Resolution& res, Objective&& objective,
                                  const std::vector<StrategyPoint>& seeds = {}) {
  const bool full3 = family.tag() == FamilyTag::Full3;
  const std::vector<StrategyPoint> lattice =
      full3 ? grid(family, res.full3_steps, res.full3_steps, res.full3_steps)
            : grid(family, res.theta_steps, res.phi_steps);

  BestResponse best{lattice.front(), -std::numeric_limits<double>::infinity()};
  for (const auto& point : lattice) {
    const double value = objective(point);
    if (value > best.payoff) best = {point, value};
  }
  for (const auto& seed : seeds) {
    const double value = objective(seed);
    if (value > best.payoff) best = {seed, value};
  }

  const int dims = family.dimension();
  std::array<double, 3> step{};
  for (int axis = 0; axis < dims; ++axis) {
    const auto [lo, hi] = axis_bounds(family, axis);
    const int steps = full3 ? res.full3_steps : (axis == 0 ? res.theta_steps : res.phi_steps);
    step[static_cast<std::size_t>(axis)] = (hi - lo) / (steps - 1);
  }

  constexpr int kMaxPasses = 30;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    const double before = best.payoff;
    for (int axis = 0; axis < dims; ++axis) {
      const auto [lo, hi] = axis_bounds(family, axis);
      // FULL3 phases are angles: the search window wraps across ±π instead
      // of stopping at the box edge.
      const bool periodic = full3 && axis > 0;
      auto wrap = [&](double v) { return periodic ? std::remainder(v, hi - lo) : v; };  // box is [-π, π]
      const double x0 = coordinate(family, best.point, axis);
      const double a = periodic ? x0 - step[static_cast<std::size_t>(axis)] : std::max(lo, x0 - step[static_cast<std::size_t>(axis)]);
      const double b = periodic ? x0 + step[static_cast<std::size_t>(axis)] : std::min(hi, x0 + step[static_cast<std::size_t>(axis)]);
      StrategyPoint trial = best.point;
      const auto [x, fx] = golden_section_max(
          [&](double v) {
            set_coordinate(family, trial, axis, wrap(v));
            return objective(trial);
          },
          a, b, kPolishTolerance);
      if (fx > best.payoff) {
        set_coordinate(family, best.point, axis, wrap(x));
        best.payoff = fx;
      }
    }
    if (best.payoff - before <= 1e-14) break;
  }
  return best;
}

}  // namespace detail

/// Best unilateral response of `responder` within `space` while every other
/// player keeps their strategy from `profile`.
inline BestResponse best_response(const GameSpec& game, EntanglementParam gamma, int responder,
                                  const StrategyFamily& space, const Profile& profile,
                                  const Resolution& res = {}) {
  if (profile.size() != game.num_players()) throw DomainError("profile size does not match the game");
  const std::vector<LocalOperator> moves = profile.moves();
  const ResponseKernel kernel(game, gamma, moves, responder);
  std::vector<StrategyPoint> seeds;
  const PlayerStrategy& current = profile.players[static_cast<std::size_t>(responder)];
  if (current.family == space) seeds.push_back(current.point);
  if (space.tag() == FamilyTag::Full3 && res.full3_spectral) seeds.push_back(kernel.su2_optimum().point);
  return detail::maximize_over_family(
      space, res, [&](const StrategyPoint& p) { return kernel.payoff(to_matrix_unchecked(space, p)); }, seeds);
}

struct NashReport {
  Profile profile;
  std::vector<double> payoffs;
  /// Per player: best deviation payoff found minus current payoff.
  std::vector<double> max_gain;
  std::vector<StrategyPoint> best_points;
  double epsilon = kDefaultEpsilon;
  bool is_ne = false;
  Resolution search_resolution;

  double worst_gain() const { return *std::max_element(max_gain.begin(), max_gain.end()); }
};

/// ε-Nash certification: every player's best response within their space
/// improves on the current payoff by at most `epsilon`.
inline NashReport verify_ne(const GameSpec& game, EntanglementParam gamma, const Profile& profile,
                            std::span<const StrategyFamily> spaces, double epsilon = kDefaultEpsilon,
                            const Resolution& res = {}) {
  const int n = game.num_players();
  if (profile.size() != n || static_cast<int>(spaces.size()) != n) {
    throw DomainError("profile and spaces must have one entry per player");
  }
  NashReport report;
  report.profile = profile;
  report.epsilon = epsilon;
  report.search_resolution = res;
  const std::vector<LocalOperator> moves = profile.moves();
  report.payoffs = play(game, gamma, moves);
  for (int p = 0; p < n; ++p) {
    const BestResponse br = best_response(game, gamma, p, spaces[static_cast<std::size_t>(p)], profile, res);
    report.max_gain.push_back(br.payoff - report.payoffs[static_cast<std::size_t>(p)]);
    report.best_points.push_back(br.point);
  }
  report.is_ne = report.worst_gain() <= epsilon;
  return report;
}

/// Same deviation space for every player.
inline NashReport verify_ne(const GameSpec& game, EntanglementParam gamma, const Profile& profile,
                            const StrategyFamily& space, double epsilon = kDefaultEpsilon,
                            const Resolution& res = {}) {
  const std::vector<StrategyFamily> spaces(static_cast<std::size_t>(game.num_players()), space);
  return verify_ne(game, gamma, profile, spaces, epsilon, res);
}

// ---------------------------------------------------------------------------
// Threshold bisection
// ---------------------------------------------------------------------------

using ProfileGenerator = std::function<Profile(double sin2gamma)>;

struct ThresholdOptions {
  double lo = 0.0;  // sin²γ
  double hi = 1.0;
  double epsilon = kDefaultEpsilon;
  double tolerance = 1e-4;
  Resolution resolution;
};

struct ThresholdResult {
  std::string game;
  std::string space;
  std::string profile;
  double sin2gamma_star = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double tolerance = 0.0;
  bool ne_at_lo = false;
};

/// Bisects sin²γ for the point where the NE verdict of the generated
/// profile flips.
inline ThresholdResult threshold_bisect(const GameSpec& game, std::span<const StrategyFamily> spaces,
                                        const ProfileGenerator& generator, const ThresholdOptions& opts = {}) {
  if (!(opts.lo >= 0.0 && opts.hi <= 1.0 && opts.lo < opts.hi)) throw DomainError("need 0 <= lo < hi <= 1");
  if (!(opts.tolerance > 0.0)) throw DomainError("tolerance must be positive");
  auto is_ne = [&](double s) {
    return verify_ne(game, EntanglementParam::from_sin2(s), generator(s), spaces, opts.epsilon, opts.resolution).is_ne;
  };
  double lo = opts.lo;
  double hi = opts.hi;
  const bool at_lo = is_ne(lo);
  if (is_ne(hi) == at_lo) {
    throw NoThresholdError("NE verdict is " + std::string(at_lo ? "true" : "false") + " at both sin^2(gamma) = " +
                           std::to_string(lo) + " and " + std::to_string(hi));
  }
  while (hi - lo > opts.tolerance) {
    const double mid = 0.5 * (lo + hi);
    (is_ne(mid) == at_lo ? lo : hi) = mid;
  }
  ThresholdResult result;
  result.game = game.name();
  result.space = spaces.empty() ? "" : spaces.front().name();
  result.profile = generator(lo).name;
  result.sin2gamma_star = 0.5 * (lo + hi);
  result.lo = lo;
  result.hi = hi;
  result.tolerance = opts.tolerance;
  result.ne_at_lo = at_lo;
  return result;
}

inline ThresholdResult threshold_bisect(const GameSpec& game, const StrategyFamily& space,
                                        const ProfileGenerator& generator, const ThresholdOptions& opts = {}) {
  const std::vector<StrategyFamily> spaces(static_cast<std::size_t>(game.num_players()), space);
  return threshold_bisect(game, spaces, generator, opts);
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepRow {
  std::string game;
  std::string space;
  std::optional<double> k;
  double gamma = 0.0;
  double sin2gamma = 0.0;
  std::string profile;
  std::vector<double> payoffs;
  bool is_ne = false;
  double max_gain = 0.0;
};

struct SweepConfig {
  FamilyTag space = FamilyTag::S1;
  /// Exponents for S1K/S2K; ignored by the other families.
  std::vector<double> k_grid;
  std::vector<double> sin2_grid;
  std::vector<std::string> profiles;
  double epsilon = kDefaultEpsilon;
  Resolution resolution;
  int threads = 1;
};

/// `lo:hi:count` style inclusive grid.
inline std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1) throw DomainError("grid count must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = i == count - 1 ? hi : lo + (hi - lo) * i / (count - 1);
  return g;
}

namespace detail {

inline SweepRow make_row(const GameSpec& game, const StrategyFamily& family, double s, const NashReport& report) {
  SweepRow row;
  row.game = game.name();
  row.space = family.name();
  if (family.has_k()) row.k = family.k();
  row.gamma = EntanglementParam::from_sin2(s).gamma();
  row.sin2gamma = s;
  row.profile = report.profile.name;
  row.payoffs = report.payoffs;
  row.is_ne = report.is_ne;
  row.max_gain = report.worst_gain();
  return row;
}

}  // namespace detail

/// Certifies every candidate profile at every grid point. Rows are ordered
/// by (k, sin²γ, profile) whatever the thread count.
inline std::vector<SweepRow> sweep(const GameSpec& game, const SweepConfig& cfg) {
  if (cfg.sin2_grid.empty() || cfg.profiles.empty()) throw DomainError("sweep needs a gamma grid and profiles");
  const bool uses_k = cfg.space == FamilyTag::S1K || cfg.space == FamilyTag::S2K;
  if (uses_k && cfg.k_grid.empty()) throw DomainError("space " + StrategyFamily::make(cfg.space, 0).name() + " needs a k grid");
  const std::vector<double> ks = uses_k ? cfg.k_grid : std::vector<double>{0.0};

  struct Task {
    StrategyFamily family;
    double s;
    Profile profile;
  };
  std::vector<Task> tasks;
  for (double k : ks) {
    const StrategyFamily family = StrategyFamily::make(cfg.space, k);
    std::vector<Profile> resolved;
    for (const auto& name : cfg.profiles) resolved.push_back(parse_profile(name, family, game.num_players()));
    for (double s : cfg.sin2_grid) {
      EntanglementParam::from_sin2(s);  // validate before spawning workers
      for (const auto& profile : resolved) tasks.push_back({family, s, profile});
    }
  }

  std::vector<SweepRow> rows(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    const NashReport report =
        verify_ne(game, EntanglementParam::from_sin2(t.s), t.profile, t.family, cfg.epsilon, cfg.resolution);
    rows[i] = detail::make_row(game, t.family, t.s, report);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// N-player Prisoners' Dilemma region map
// ---------------------------------------------------------------------------

/// Candidate profiles checked by npd_ne_map, in report order.
///
/// S1: mutual cooperation C_N^⊗N, the asymmetric C_2 ⊗ D^⊗(N-1) (all N
/// placements), mutual defection, and the scan C_m^⊗m ⊗ D^⊗(N-m) for
/// 2 <= m < N. S2: D_2N^⊗N and mutual defection.
inline std::vector<std::string> npd_candidate_profiles(int n, FamilyTag space) {
  const std::string ns = std::to_string(n);
  std::vector<std::string> names;
  if (space == FamilyTag::S2) {
    names.push_back("d" + std::to_string(2 * n) + "_s2^" + ns);
    names.push_back("d^" + ns);
    return names;
  }
  names.push_back("c" + ns + "^" + ns);
  names.push_back("c2-d^" + std::to_string(n - 1));
  names.push_back("d^" + ns);
  for (int m = 2; m < n; ++m) {
    names.push_back("c" + std::to_string(m) + "^" + std::to_string(m) + "-d^" + std::to_string(n - m));
  }
  return names;
}

/// Moves token 0 of an asymmetric "x-y^(N-1)" profile to position `slot`.
inline Profile rotate_lone_player(const Profile& profile, int slot) {
  Profile out = profile;
  std::swap(out.players[0], out.players[static_cast<std::size_t>(slot)]);
  return out;
}

/// NE verdicts for the N-player PD candidates at each sin²γ. The
/// asymmetric C_2 ⊗ D^⊗(N-1) row is certified only if every placement of the
/// C_2 player is an ε-NE; payoffs are those of the first placement.
inline std::vector<SweepRow> npd_ne_map(int n, FamilyTag space, const std::vector<double>& sin2_grid,
                                        double epsilon = kDefaultEpsilon, const Resolution& res = {},
                                        int threads = 1) {
  if (n < 2 || n > 9) throw DomainError("npd_ne_map supports 2 <= n <= 9");
  if (space != FamilyTag::S1 && space != FamilyTag::S2) throw DomainError("npd_ne_map supports s1 and s2");
  const GameSpec game = n_player_pd(n);
  const StrategyFamily family = StrategyFamily::make(space);
  std::vector<Profile> candidates;
  for (const auto& name : npd_candidate_profiles(n, space)) candidates.push_back(parse_profile(name, family, n));
  const std::string asym_name = "c2-d^" + std::to_string(n - 1);

  std::vector<SweepRow> rows(sin2_grid.size() * candidates.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double s = sin2_grid[i / candidates.size()];
    const Profile& profile = candidates[i % candidates.size()];
    const EntanglementParam gamma = EntanglementParam::from_sin2(s);
    NashReport report = verify_ne(game, gamma, profile, family, epsilon, res);
    SweepRow row = detail::make_row(game, family, s, report);
    if (profile.name == asym_name) {
      for (int slot = 1; slot < n; ++slot) {
        const NashReport other = verify_ne(game, gamma, rotate_lone_player(profile, slot), family, epsilon, res);
        row.is_ne = row.is_ne && other.is_ne;
        row.max_gain = std::max(row.max_gain, other.worst_gain());
      }
    }
    rows[i] = std::move(row);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Counter strategies
// ---------------------------------------------------------------------------

struct CounterResult {
  double min_payoff = 0.0;
  std::size_t worst_index = 0;
  std::vector<double> payoffs;  // responder best-response payoff per victim
};

/// Uniform draws from a family box, reproducible for a given seed.
inline std::vector<PlayerStrategy> random_strategies(const StrategyFamily& family, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PlayerStrategy> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    StrategyPoint p;
    for (int axis = 0; axis < family.dimension(); ++axis) {
      const auto [lo, hi] = axis_bounds(family, axis);
      set_coordinate(family, p, axis, std::uniform_real_distribution<double>(lo, hi)(rng));
    }
    out.push_back({family, p});
  }
  return out;
}

/// Player 0 plays each victim strategy in turn; player 1 best-responds in
/// `responder_space`. Returns the worst case over victims of the responder's
/// best-response payoff.
inline CounterResult counter_strategy_check(const GameSpec& game, EntanglementParam gamma,
                                            std::span<const PlayerStrategy> victims,
                                            const StrategyFamily& responder_space, const Resolution& res = {},
                                            int threads = 1) {
  if (game.num_players() != 2) throw DomainError("counter_strategy_check is defined for two-player games");
  if (victims.empty()) throw DomainError("need at least one victim strategy");
  CounterResult result;
  result.payoffs.resize(victims.size());
  const PlayerStrategy placeholder = resolve_named(NamedStrategy::c(), responder_space);
  parallel_for(victims.size(), threads, [&](std::size_t i) {
    const Profile profile{{victims[i], placeholder}, "victim"};
    result.payoffs[i] = best_response(game, gamma, 1, responder_space, profile, res).payoff;
  });
  const auto worst = std::min_element(result.payoffs.begin(), result.payoffs.end());
  result.min_payoff = *worst;
  result.worst_index = static_cast<std::size_t>(worst - result.payoffs.begin());
  return result;
}

}  // namespace qgame

#endif  // QGAME_EQUILIBRIUM_ENGINE_HPP
