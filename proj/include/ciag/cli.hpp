#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ciag/errors.hpp"
#include "ciag/montecarlo.hpp"
#include "ciag/oracle.hpp"
#include "ciag/report.hpp"
#include "ciag/scenario.hpp"

namespace ciag {

namespace cli_detail {

struct Options {
  std::string scenario_path;
  std::string preset;
  std::string out_path;
  std::string format;  // empty = per-command default
  std::string axis;
  std::string values;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> reps;
  int grid_n = 101;
};

inline Scenario load_scenario(const Options& o) {
  std::optional<Scenario> base;
  if (!o.preset.empty()) base = lookup_preset(o.preset);

  Scenario s;
  if (!o.scenario_path.empty()) {
    std::ifstream f(o.scenario_path);
    if (!f)
      throw Error(Errc::ParseError,
                  "cannot read scenario file '" + o.scenario_path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    s = parse_scenario(ss.str(), base);
  } else if (base) {
    s = *base;
  } else {
    throw Error(Errc::ParseError, "need --scenario FILE or --preset NAME");
  }

  if (o.seed) s.config.master_seed = *o.seed;
  if (o.reps) {
    if (*o.reps < 1)
      throw Error(Errc::ValidationError, "repetitions must be >= 1");
    s.config.repetitions = *o.reps;
  }
  return s;
}

inline void with_output(const std::string& out_path, std::ostream& fallback,
                        const std::function<void(std::ostream&)>& fn) {
  if (out_path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw Error(Errc::ParseError, "cannot write '" + out_path + "'");
  fn(f);
}

/// Expands "5000,20000" and range forms "5000..100000" or "5000..100000:20"
/// (count points, evenly spaced, endpoints included; bare ranges get 11).
inline std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  auto parse_num = [](const std::string& tok) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad value '" + tok + "' in --values");
    }
  };
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok =
        text.substr(start, comma == std::string::npos ? std::string::npos
                                                      : comma - start);
    if (!tok.empty()) {
      const std::size_t dots = tok.find("..");
      if (dots == std::string::npos) {
        out.push_back(parse_num(tok));
      } else {
        const std::string lo_s = tok.substr(0, dots);
        std::string hi_s = tok.substr(dots + 2);
        long count = 11;
        const std::size_t colon = hi_s.find(':');
        if (colon != std::string::npos) {
          count = std::strtol(hi_s.c_str() + colon + 1, nullptr, 10);
          if (count < 2)
            throw Error(Errc::ParseError, "range count must be >= 2");
          hi_s = hi_s.substr(0, colon);
        }
        const double lo = parse_num(lo_s);
        const double hi = parse_num(hi_s);
        for (long i = 0; i < count; ++i)
          out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                 static_cast<double>(count - 1));
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty())
    throw Error(Errc::ParseError, "--values must list at least one value");
  return out;
}

inline std::string gt_delta_path(const std::string& out_path) {
  const std::size_t dot = out_path.rfind('.');
  const std::size_t slash = out_path.find_last_of("/\\");
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash))
    return out_path + "_gt_delta";
  return out_path.substr(0, dot) + "_gt_delta" + out_path.substr(dot);
}

struct VerifyOutcome {
  bool all_passed = true;
};

inline void check(std::ostream& os, VerifyOutcome& v, bool ok,
                  const std::string& what, const std::string& detail) {
  os << (ok ? "[PASS] " : "[FAIL] ") << what;
  if (!detail.empty()) os << " (" << detail << ")";
  os << "\n";
  if (!ok) v.all_passed = false;
}

inline bool run_verify(const Scenario& s, int grid_n, std::ostream& os) {
  const GameParams& g = s.config.params;
  const UtilitySpec& u = s.config.utility;
  VerifyOutcome v;

  const PbeSolution sol = solve_pbe(g, u);
  os << "region " << region_name(sol.region) << ", phi_star "
     << fmt_prob(sol.phi_star);
  if (!sol.notes.empty()) os << ", notes: " << sol.notes;
  os << "\n";

  const double tol_money = 1e-9 * std::max(1.0, g.loss.usd());
  const double tol_utils = 1e-9 * std::max(1.0, std::abs(u(g.wealth.usd())));

  check(os, v, sol.ph.claim_prob_secure == 1.0, "secure type always claims",
        "claim_prob_secure = " + fmt_prob(sol.ph.claim_prob_secure));
  check(os, v, sol.ins.audit_prob_given_nc == 0.0,
        "never audit without a claim",
        "audit_prob_given_nc = " + fmt_prob(sol.ins.audit_prob_given_nc));

  if (sol.beliefs.mu.has_value()) {
    const CdInfosetValues cv = cd_infoset_insurer_payoffs(*sol.beliefs.mu, g);
    const double q = sol.ins.audit_prob_given_cd;
    const bool ok = q == 0.0 ? cv.no_audit_usd >= cv.audit_usd
                             : cv.audit_usd >= cv.no_audit_usd;
    check(os, v, ok, "claim-infoset action attains the belief argmax",
          "audit " + fmt_exact(cv.audit_usd) + " vs no-audit " +
              fmt_exact(cv.no_audit_usd) + " at mu = " +
              fmt_prob(*sol.beliefs.mu));
  } else {
    check(os, v, false, "claim-infoset belief is on path", "mu off path");
  }

  const StrategyProfile profile{sol.ph, sol.ins};
  const DeviationReport dev = deviation_gaps(profile, g, u, grid_n);
  check(os, v, dev.ph_secure_gap <= tol_utils,
        "secure policyholder deviation gap",
        fmt_exact(dev.ph_secure_gap) + " <= " + fmt_exact(tol_utils));
  check(os, v, dev.ph_nonsecure_gap <= tol_utils,
        "non-secure policyholder deviation gap",
        fmt_exact(dev.ph_nonsecure_gap) + " <= " + fmt_exact(tol_utils));
  check(os, v, dev.insurer_gap_paper <= tol_money,
        "insurer deviation gap, breach-conditioned accounting",
        fmt_exact(dev.insurer_gap_paper) + " <= " + fmt_exact(tol_money));

  if (sol.region == PbeRegion::Pbe3Mixed) {
    const IndifferenceResiduals res = indifference_residuals(sol, g, u);
    check(os, v, std::abs(res.ph_residual_utils) <= tol_utils,
          "non-secure claim indifference residual",
          fmt_exact(res.ph_residual_utils) + " within " +
              fmt_exact(tol_utils));
    check(os, v, std::abs(res.insurer_residual_usd) <= tol_money,
          "insurer audit indifference residual",
          fmt_exact(res.insurer_residual_usd) + " within " +
              fmt_exact(tol_money));
  }

  os << "info: true-measure insurer gap " << fmt_exact(dev.insurer_gap_true)
     << " (best audit_cd = " << fmt_prob(dev.insurer_best_cd)
     << ", audit_nc = " << fmt_prob(dev.insurer_best_nc) << ")\n";
  os << "RESULT: " << (v.all_passed ? "PASS" : "FAIL") << "\n";
  return v.all_passed;
}

}  // namespace cli_detail

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name. Exit codes: 0 success, 1 usage or parse error,
/// 2 validation error, 3 verification failure.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  using cli_detail::Options;

  CLI::App app{"Cyber insurance audit game: equilibrium solver, verifier and "
               "Monte Carlo simulator"};
  app.name("ciag");
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--scenario", opt.scenario_path, "Scenario file");
    cmd->add_option("--preset", opt.preset, "Built-in scenario name");
    cmd->add_option("--seed", opt.seed, "Master seed override");
    cmd->add_option("--reps", opt.reps, "Repetitions override");
    cmd->add_option("--out", opt.out_path, "Output file (default stdout)");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve and print the equilibrium");
  add_common(solve);
  solve->add_option("--format", opt.format, "human or csv");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run the Monte Carlo comparison");
  add_common(simulate);
  simulate->add_option("--format", opt.format, "csv or human");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Sweep one parameter axis and emit CSV");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--axis", opt.axis,
                        "audit-cost | discount | loss | repetitions | prior")
      ->required();
  sweep_cmd->add_option("--values", opt.values,
                        "Comma list; ranges lo..hi or lo..hi:count")
      ->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "Check equilibrium invariants and residuals");
  add_common(verify);
  verify->add_option("--grid", opt.grid_n, "Deviation grid size (default 101)");

  std::vector<const char*> argv;
  argv.push_back("ciag");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (!opt.format.empty() && opt.format != "csv" && opt.format != "human")
      throw Error(Errc::ParseError,
                  "--format must be csv or human, got '" + opt.format + "'");
    const Scenario scenario = cli_detail::load_scenario(opt);

    if (solve->parsed()) {
      const PbeSolution sol =
          solve_pbe(scenario.config.params, scenario.config.utility);
      cli_detail::with_output(opt.out_path, out, [&](std::ostream& os) {
        if (opt.format == "csv")
          write_solution_csv(os, sol);
        else
          write_solution_human(os, sol);
      });
      return 0;
    }

    if (simulate->parsed()) {
      const SimulationSummary summary = run_simulation(scenario.config);
      const bool human = opt.format == "human";
      cli_detail::with_output(opt.out_path, out, [&](std::ostream& os) {
        if (human)
          write_summary_human(os, summary);
        else
          write_summary_csv(os, summary);
      });
      return 0;
    }

    if (sweep_cmd->parsed()) {
      const SweepAxis axis = parse_axis(opt.axis);
      const std::vector<double> values = cli_detail::parse_values(opt.values);
      const SweepTable table = sweep(scenario.config, axis, values);
      cli_detail::with_output(opt.out_path, out, [&](std::ostream& os) {
        write_sweep_csv(os, table);
      });
      const bool has_pair =
          std::any_of(table.points.begin(), table.points.end(),
                      [](const SweepPoint& pt) {
                        return pt.summary.has_value() &&
                               pt.summary->gt_minus_never_audit.has_value();
                      });
      if (!opt.out_path.empty() && has_pair) {
        cli_detail::with_output(
            cli_detail::gt_delta_path(opt.out_path), out,
            [&](std::ostream& os) {
              write_gt_delta_csv(os, table, scenario.config.params.premium);
            });
      }
      return 0;
    }

    if (verify->parsed()) {
      bool ok = true;
      cli_detail::with_output(opt.out_path, out, [&](std::ostream& os) {
        ok = cli_detail::run_verify(scenario, opt.grid_n, os);
      });
      return ok ? 0 : 3;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::ParseError ? 1 : 2;
  }
  return 1;
}

}  // namespace ciag
