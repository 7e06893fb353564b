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

#ifndef QGAME_CLI_HPP
#define QGAME_CLI_HPP

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qgame/analytic_oracles.hpp"
#include "qgame/csv.hpp"
#include "qgame/equilibrium_engine.hpp"
#include "qgame/errors.hpp"
#include "qgame/game_library.hpp"
#include "qgame/parallel.hpp"
#include "qgame/profile.hpp"
#include "qgame/quantum_engine.hpp"
#include "qgame/strategy_spaces.hpp"

namespace qgame::cli {

enum ExitCode : int { kOk = 0, kNotNash = 1, kUsage = 2, kNumerical = 3 };

/// Raised for flag values that parse but do not make sense.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Parsed command-line state shared by every subcommand.
struct RunConfig {
  std::string command;
  std::string game = "pd";
  std::string space = "s1";
  int n = 4;
  double k = 0.0;
  std::string sin2gamma;    // "lo:hi:count" or a single value
  std::string k_grid;       // "lo:hi:count"
  std::string range = "0:1";
  std::vector<std::string> profiles;
  std::string profile;
  std::string check;
  double epsilon = kDefaultEpsilon;
  double tolerance = 1e-4;
  Resolution resolution;
  std::string out = "-";
  std::uint64_t seed = 7;
  int trials = 1000;
  int nmax = 9;
  int threads = 0;
};

inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : text) {
    if (ch == ':') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(current);
  try {
    if (fields.size() == 1) return {csv::parse_number(fields[0])};
    if (fields.size() == 3) {
      const int count = std::stoi(fields[2]);
      return linear_grid(csv::parse_number(fields[0]), csv::parse_number(fields[1]), count);
    }
  } catch (const std::exception& e) {
    throw UsageError("bad grid '" + text + "': " + e.what());
  }
  throw UsageError("grid must be 'value' or 'lo:hi:count', got '" + text + "'");
}

inline std::pair<double, double> parse_range(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("range must be 'lo:hi', got '" + text + "'");
  try {
    return {csv::parse_number(text.substr(0, colon)), csv::parse_number(text.substr(colon + 1))};
  } catch (const std::exception& e) {
    throw UsageError("bad range '" + text + "': " + e.what());
  }
}

inline int effective_threads(int requested) {
  const int available = default_thread_count();
  return requested > 0 ? std::min(requested, available) : available;
}

namespace detail {

inline std::optional<double> k_of(const StrategyFamily& f) {
  return f.has_k() ? std::optional<double>(f.k()) : std::nullopt;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const GameSpec game = game_by_name(cfg.game);
  SweepConfig sc;
  sc.space = family_by_name(cfg.space, cfg.k).tag();
  sc.k_grid = cfg.k_grid.empty() ? std::vector<double>{cfg.k} : parse_grid(cfg.k_grid);
  sc.sin2_grid = parse_grid(cfg.sin2gamma);
  sc.profiles = cfg.profiles;
  sc.epsilon = cfg.epsilon;
  sc.resolution = cfg.resolution;
  sc.threads = effective_threads(cfg.threads);
  csv::write_sweep(out, sweep(game, sc), game.num_players());
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const GameSpec game = game_by_name(cfg.game);
  const StrategyFamily family = family_by_name(cfg.space, cfg.k);
  const std::vector<double> s = parse_grid(cfg.sin2gamma);
  if (s.size() != 1) throw UsageError("verify takes a single --sin2gamma value");
  const Profile profile = parse_profile(cfg.profile, family, game.num_players());
  const NashReport report =
      verify_ne(game, EntanglementParam::from_sin2(s[0]), profile, family, cfg.epsilon, cfg.resolution);
  out << csv::sweep_header(game.num_players()) << '\n'
      << csv::sweep_row(qgame::detail::make_row(game, family, s[0], report)) << '\n';
  return report.is_ne ? kOk : kNotNash;
}

inline int cmd_threshold(const RunConfig& cfg, std::ostream& out) {
  const GameSpec game = game_by_name(cfg.game);
  const StrategyFamily family = family_by_name(cfg.space, cfg.k);
  const Profile profile = parse_profile(cfg.profile, family, game.num_players());
  ThresholdOptions opts;
  std::tie(opts.lo, opts.hi) = parse_range(cfg.range);
  opts.epsilon = cfg.epsilon;
  opts.tolerance = cfg.tolerance;
  opts.resolution = cfg.resolution;
  const ThresholdResult r = threshold_bisect(game, family, [&](double) { return profile; }, opts);
  out << csv::threshold_header() << '\n' << csv::threshold_row(r, k_of(family)) << '\n';
  return kOk;
}

inline int cmd_npd_map(const RunConfig& cfg, std::ostream& out) {
  const FamilyTag tag = family_by_name(cfg.space).tag();
  const std::vector<SweepRow> rows =
      npd_ne_map(cfg.n, tag, parse_grid(cfg.sin2gamma), cfg.epsilon, cfg.resolution, effective_threads(cfg.threads));
  csv::write_sweep(out, rows, cfg.n);
  return kOk;
}

// --- probes ---------------------------------------------------------------

inline int probe_probabilities(const RunConfig& cfg, std::ostream& out, bool s2) {
  const StrategyFamily family = s2 ? StrategyFamily::s2() : StrategyFamily::s1();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> gamma_dist(0.0, std::numbers::pi / 2);
  const std::vector<PlayerStrategy> a = random_strategies(family, cfg.trials, cfg.seed + 1);
  const std::vector<PlayerStrategy> b = random_strategies(family, cfg.trials, cfg.seed + 2);
  double max_dev = 0.0;
  double max_sum_err = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    const double g = gamma_dist(rng);
    const auto& pa = a[static_cast<std::size_t>(t)].point;
    const auto& pb = b[static_cast<std::size_t>(t)].point;
    const std::vector<LocalOperator> moves{to_matrix(family, pa), to_matrix(family, pb)};
    const OutcomeDistribution dist = outcome_probabilities(final_state(EntanglementParam(g), moves));
    max_sum_err = std::max(max_sum_err, std::abs(dist.total() - 1.0));
    if (s2) {
      const auto p = analytic::s2_outcome_probs(g, pa.theta, pa.phi, pb.theta, pb.phi);
      for (auto [f, sim] : {std::pair{p.cc, dist.probs[0]}, std::pair{p.cd, dist.probs[1]},
                            std::pair{p.dc, dist.probs[2]}, std::pair{p.dd, dist.probs[3]}}) {
        max_dev = std::max(max_dev, std::abs(f - sim));
      }
      max_sum_err = std::max(max_sum_err, std::abs(p.sum() - 1.0));
    } else {
      const auto p = analytic::bos_probs_s1(g, pa.theta, pa.phi, pb.theta, pb.phi);
      max_dev = std::max({max_dev, std::abs(p.oo - dist.probs[0]), std::abs(p.tt - dist.probs[3])});
    }
  }
  const bool pass = max_dev < 1e-10 && max_sum_err < 1e-10;
  out << "check,trials,seed,max_abs_deviation,max_sum_error,pass\n"
      << cfg.check << ',' << cfg.trials << ',' << cfg.seed << ',' << csv::number(max_dev) << ','
      << csv::number(max_sum_err) << ',' << csv::boolean(pass) << '\n';
  return pass ? kOk : kNumerical;
}

inline int probe_bos_s2(const RunConfig& cfg, std::ostream& out) {
  const GameSpec game = battle_of_sexes();
  const std::vector<double> grid = parse_grid(cfg.sin2gamma.empty() ? "0:1:11" : cfg.sin2gamma);
  out << "space,sin2gamma,profile,is_ne,payoff_0,payoff_1,claimed_0,claimed_1\n";
  for (const StrategyFamily& family : {StrategyFamily::s1(), StrategyFamily::s2()}) {
    for (double s : grid) {
      const EntanglementParam g = EntanglementParam::from_sin2(s);
      const auto claimed = analytic::bos_counter_payoffs(g.gamma(), family.tag()).counter;
      for (const char* name : {"o-o", "t-t"}) {
        const NashReport r = verify_ne(game, g, parse_profile(name, family, 2), family, cfg.epsilon, cfg.resolution);
        // The published S1 NE is T⊗T with (1, 2); the S2 claim is O⊗O with (1+s, 2-s).
        const bool claimed_row = (family.tag() == FamilyTag::S1) == (std::string(name) == "t-t");
        const double c0 = family.tag() == FamilyTag::S1 ? 1.0 : claimed.first;
        const double c1 = family.tag() == FamilyTag::S1 ? 2.0 : claimed.second;
        out << family.name() << ',' << csv::number(s) << ',' << name << ',' << csv::boolean(r.is_ne) << ','
            << csv::number(r.payoffs[0]) << ',' << csv::number(r.payoffs[1]) << ','
            << (claimed_row ? csv::number(c0) : std::string()) << ','
            << (claimed_row ? csv::number(c1) : std::string()) << '\n';
      }
    }
  }
  return kOk;
}

inline int probe_gammak(const RunConfig& cfg, std::ostream& out) {
  const GameSpec game = prisoners_dilemma();
  const std::vector<double> sgrid = parse_grid(cfg.sin2gamma.empty() ? "0:1:21" : cfg.sin2gamma);
  const std::vector<double> kgrid = parse_grid(cfg.k_grid.empty() ? "0:1:21" : cfg.k_grid);
  struct Cell {
    double k, s;
    bool engine, squared, unsquared;
    double gain;
  };
  std::vector<Cell> cells(sgrid.size() * kgrid.size());
  parallel_for(cells.size(), effective_threads(cfg.threads), [&](std::size_t i) {
    const double k = kgrid[i / sgrid.size()];
    const double s = sgrid[i % sgrid.size()];
    const StrategyFamily family = StrategyFamily::s1k(k);
    const EntanglementParam g = EntanglementParam::from_sin2(s);
    const NashReport r = verify_ne(game, g, parse_profile("c2-c2", family, 2), family, cfg.epsilon, cfg.resolution);
    cells[i] = {k, s, r.is_ne, analytic::s1k_cc_ne_condition(g.gamma(), k),
                analytic::s1k_cc_ne_condition_unsquared(g.gamma(), k), r.worst_gain()};
  });
  int miss_sq = 0;
  int miss_unsq = 0;
  out << "k,sin2gamma,engine_ne,max_gain,cos2_condition,cos_condition\n";
  for (const auto& c : cells) {
    miss_sq += c.engine != c.squared;
    miss_unsq += c.engine != c.unsquared;
    out << csv::number(c.k) << ',' << csv::number(c.s) << ',' << csv::boolean(c.engine) << ','
        << csv::number(c.gain) << ',' << csv::boolean(c.squared) << ',' << csv::boolean(c.unsquared) << '\n';
  }
  out << "# disagreements: cos^2 " << miss_sq << ", cos " << miss_unsq << " of " << cells.size() << '\n';
  return kOk;
}

inline int probe_npd_s2(const RunConfig& cfg, std::ostream& out) {
  if (cfg.nmax < 2 || cfg.nmax > 9) throw UsageError("--nmax must lie in [2, 9]");
  const std::vector<double> grid = parse_grid(cfg.sin2gamma.empty() ? "0:1:21" : cfg.sin2gamma);
  struct Cell {
    int n;
    double s;
    bool engine;
    double gain;
    bool printed;
  };
  std::vector<Cell> cells;
  for (int n = 2; n <= cfg.nmax; ++n)
    for (double s : grid) cells.push_back({n, s, false, 0.0, false});
  parallel_for(cells.size(), effective_threads(cfg.threads), [&](std::size_t i) {
    Cell& c = cells[i];
    const GameSpec game = n_player_pd(c.n);
    const StrategyFamily family = StrategyFamily::s2();
    const EntanglementParam g = EntanglementParam::from_sin2(c.s);
    const Profile profile = parse_profile("d2n_s2^" + std::to_string(c.n), family, c.n);
    const NashReport r = verify_ne(game, g, profile, family, cfg.epsilon, cfg.resolution);
    c.engine = r.is_ne;
    c.gain = r.worst_gain();
    c.printed = analytic::npd_s2_printed_condition(c.n, g.gamma());
  });
  out << "n,sin2gamma,engine_ne,max_gain,printed_condition\n";
  for (const auto& c : cells) {
    out << c.n << ',' << csv::number(c.s) << ',' << csv::boolean(c.engine) << ',' << csv::number(c.gain) << ','
        << csv::boolean(c.printed) << '\n';
  }
  for (int n = 2; n <= cfg.nmax; ++n) {
    std::optional<double> first_fail;
    for (const auto& c : cells) {
      if (c.n == n && !c.engine && !first_fail) first_fail = c.s;
    }
    out << "# n=" << n << ": "
        << (first_fail ? "not NE from sin2gamma=" + csv::number(*first_fail) : std::string("NE on the whole grid"))
        << '\n';
  }
  return kOk;
}

inline int probe_chicken_s2(const RunConfig& cfg, std::ostream& out) {
  const GameSpec game = chicken();
  const StrategyFamily family = StrategyFamily::s2();
  const Profile profile = parse_profile("dprime-dprime", family, 2);
  ThresholdOptions opts;
  opts.epsilon = cfg.epsilon;
  opts.tolerance = cfg.tolerance;
  opts.resolution = cfg.resolution;
  const ThresholdResult r = threshold_bisect(game, family, [&](double) { return profile; }, opts);
  out << "profile,measured_sin2gamma_star,claimed,cooperate_deviation_threshold\n"
      << r.profile << ',' << csv::number(r.sin2gamma_star) << ',' << csv::number(analytic::chicken_thresholds().threshold)
      << ',' << csv::number(analytic::chicken_s2_cooperate_deviation_threshold()) << '\n';
  return kOk;
}

inline int probe_counter(const RunConfig& cfg, std::ostream& out) {
  const GameSpec game = prisoners_dilemma();
  const std::vector<double> s = parse_grid(cfg.sin2gamma.empty() ? "1" : cfg.sin2gamma);
  const std::vector<PlayerStrategy> victims = random_strategies(StrategyFamily::s1(), cfg.trials, cfg.seed);
  const CounterResult r = counter_strategy_check(game, EntanglementParam::from_sin2(s.at(0)), victims,
                                                 StrategyFamily::full3(), cfg.resolution, effective_threads(cfg.threads));
  out << "sin2gamma,trials,seed,min_best_response,worst_victim\n"
      << csv::number(s[0]) << ',' << cfg.trials << ',' << cfg.seed << ',' << csv::number(r.min_payoff) << ','
      << r.worst_index << '\n';
  return kOk;
}

inline int cmd_probe(const RunConfig& cfg, std::ostream& out) {
  if (cfg.check == "s1-probs" || cfg.check == "bos-probs") return probe_probabilities(cfg, out, false);
  if (cfg.check == "s2-probs") return probe_probabilities(cfg, out, true);
  if (cfg.check == "bos-s2-ne") return probe_bos_s2(cfg, out);
  if (cfg.check == "gammak") return probe_gammak(cfg, out);
  if (cfg.check == "npd-s2-breakdown") return probe_npd_s2(cfg, out);
  if (cfg.check == "chicken-s2") return probe_chicken_s2(cfg, out);
  if (cfg.check == "counter") return probe_counter(cfg, out);
  throw UsageError("unknown probe check '" + cfg.check + "'");
}

}  // namespace detail

inline void add_resolution_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--epsilon", cfg.epsilon, "epsilon-NE tolerance in payoff units")->check(CLI::PositiveNumber);
  cmd->add_option("--theta-steps", cfg.resolution.theta_steps, "deviation lattice points in theta")->check(CLI::Range(2, 100000));
  cmd->add_option("--phi-steps", cfg.resolution.phi_steps, "deviation lattice points in phi")->check(CLI::Range(2, 100000));
  cmd->add_option("--full3-steps", cfg.resolution.full3_steps, "lattice points per axis for full3")->check(CLI::Range(2, 1000));
  cmd->add_option("--threads", cfg.threads, "worker threads (capped by QGAME_THREADS)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", cfg.out, "output file, '-' for standard output");
}

/// Entry point shared by the `qgame` binary and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Nash equilibria of quantized 2x2 games", "qgame"};
  app.require_subcommand(1);

  auto* sweep_cmd = app.add_subcommand("sweep", "certify candidate profiles over a sin^2(gamma) grid");
  sweep_cmd->add_option("--game", cfg.game, "pd, chicken, bos or npd:<N>")->required();
  sweep_cmd->add_option("--space", cfg.space, "s1, s2, s1k, s2k or full3")->required();
  sweep_cmd->add_option("--k", cfg.k, "fixed exponent for s1k/s2k");
  sweep_cmd->add_option("--k-grid", cfg.k_grid, "lo:hi:count grid of k for s1k/s2k");
  sweep_cmd->add_option("--sin2gamma", cfg.sin2gamma, "lo:hi:count")->required();
  sweep_cmd->add_option("--profiles", cfg.profiles, "comma-separated profile names")->required()->delimiter(',');
  add_resolution_flags(sweep_cmd, cfg);

  auto* verify_cmd = app.add_subcommand("verify", "certify one profile; exit 0 iff it is an epsilon-NE");
  verify_cmd->add_option("--game", cfg.game)->required();
  verify_cmd->add_option("--space", cfg.space)->required();
  verify_cmd->add_option("--k", cfg.k);
  verify_cmd->add_option("--sin2gamma", cfg.sin2gamma)->required();
  verify_cmd->add_option("--profile", cfg.profile)->required();
  add_resolution_flags(verify_cmd, cfg);

  auto* threshold_cmd = app.add_subcommand("threshold", "bisect the sin^2(gamma) where a profile stops being NE");
  threshold_cmd->add_option("--game", cfg.game)->required();
  threshold_cmd->add_option("--space", cfg.space)->required();
  threshold_cmd->add_option("--k", cfg.k);
  threshold_cmd->add_option("--profile", cfg.profile)->required();
  threshold_cmd->add_option("--range", cfg.range, "lo:hi in sin^2(gamma)");
  threshold_cmd->add_option("--tolerance", cfg.tolerance, "bracket width")->check(CLI::PositiveNumber);
  add_resolution_flags(threshold_cmd, cfg);

  auto* npd_cmd = app.add_subcommand("npd-map", "N-player Prisoners' Dilemma equilibrium regions");
  npd_cmd->add_option("--n", cfg.n, "player count")->required()->check(CLI::Range(2, 9));
  npd_cmd->add_option("--space", cfg.space, "s1 or s2");
  npd_cmd->add_option("--sin2gamma", cfg.sin2gamma)->required();
  add_resolution_flags(npd_cmd, cfg);

  auto* probe_cmd = app.add_subcommand("probe", "compare closed forms with the simulator");
  probe_cmd->add_option("--check", cfg.check,
                        "s1-probs, s2-probs, bos-s2-ne, gammak, npd-s2-breakdown, chicken-s2 or counter")
      ->required();
  probe_cmd->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  probe_cmd->add_option("--seed", cfg.seed);
  probe_cmd->add_option("--nmax", cfg.nmax);
  probe_cmd->add_option("--sin2gamma", cfg.sin2gamma);
  probe_cmd->add_option("--k-grid", cfg.k_grid);
  probe_cmd->add_option("--tolerance", cfg.tolerance)->check(CLI::PositiveNumber);
  add_resolution_flags(probe_cmd, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::ostringstream buffer;
  try {
    int code = kOk;
    if (sweep_cmd->parsed()) code = detail::cmd_sweep(cfg, buffer);
    else if (verify_cmd->parsed()) code = detail::cmd_verify(cfg, buffer);
    else if (threshold_cmd->parsed()) code = detail::cmd_threshold(cfg, buffer);
    else if (npd_cmd->parsed()) code = detail::cmd_npd_map(cfg, buffer);
    else if (probe_cmd->parsed()) code = detail::cmd_probe(cfg, buffer);
    if (cfg.out == "-") {
      out << buffer.str();
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw UsageError("cannot open output file '" + cfg.out + "'");
      f << buffer.str();
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace qgame::cli

#endif  // QGAME_CLI_HPP
