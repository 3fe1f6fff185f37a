#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ciag/csv.hpp"
#include "ciag/equilibrium.hpp"
#include "ciag/montecarlo.hpp"

namespace ciag {

// One schema serves plain simulations (empty axis_value) and every sweep.
inline const std::vector<std::string>& summary_csv_header() {
  static const std::vector<std::string> header = {
      "axis_value",     "model",
      "mean_insurer_payoff", "std_error",
      "mean_ph_secure_utility", "mean_ph_nonsecure_utility",
      "claims",         "breaches",
      "audits",         "denials",
      "pbe_region",     "theta",
      "delta",          "phi_star",
  };
  return header;
}

inline std::vector<std::string> model_row_cells(const std::string& axis_value,
                                                const ModelSummary& s,
                                                const PbeSolution& sol) {
  return {
      axis_value,
      model_name(s.model),
      fmt_exact(s.mean_insurer_payoff),
      fmt_exact(s.std_error),
      fmt_exact(s.mean_ph_secure_utils),
      fmt_exact(s.mean_ph_nonsecure_utils),
      fmt_count(s.claims),
      fmt_count(s.breaches),
      fmt_count(s.audits),
      fmt_count(s.denials),
      region_name(sol.region),
      sol.theta ? fmt_prob(*sol.theta) : "",
      sol.delta ? fmt_prob(*sol.delta) : "",
      fmt_prob(sol.phi_star),
  };
}

inline void write_summary_csv(std::ostream& os, const SimulationSummary& sum,
                              const std::string& axis_value = "") {
  os << csv_row(summary_csv_header());
  for (const ModelSummary& s : sum.models)
    os << csv_row(model_row_cells(axis_value, s, sum.solution));
}

inline void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  os << csv_row(summary_csv_header());
  for (const SweepPoint& pt : table.points) {
    const std::string axis_value = fmt_exact(pt.axis_value);
    if (!pt.summary.has_value()) {
      std::vector<std::string> cells(summary_csv_header().size());
      cells[0] = axis_value;
      cells[10] = "error:" + pt.error_code;
      os << csv_row(cells);
      continue;
    }
    for (const ModelSummary& s : pt.summary->models)
      os << csv_row(model_row_cells(axis_value, s, pt.summary->solution));
  }
}

/// Companion table for sweeps: the paired GT minus NeverAudit payoff
/// difference per axis value, also expressed in units of the annual premium.
inline void write_gt_delta_csv(std::ostream& os, const SweepTable& table,
                               Money premium) {
  os << csv_row({"axis_value", "gt_mean_insurer_payoff",
                 "never_audit_mean_insurer_payoff", "difference",
                 "difference_std_error", "difference_premium_units"});
  for (const SweepPoint& pt : table.points) {
    if (!pt.summary.has_value() || !pt.summary->gt_minus_never_audit)
      continue;
    double gt_mean = 0.0, na_mean = 0.0;
    for (const ModelSummary& s : pt.summary->models) {
      if (s.model == StrategyModel::GT) gt_mean = s.mean_insurer_payoff;
      if (s.model == StrategyModel::NeverAudit) na_mean = s.mean_insurer_payoff;
    }
    const PairedDifference& d = *pt.summary->gt_minus_never_audit;
    os << csv_row({fmt_exact(pt.axis_value), fmt_exact(gt_mean),
                   fmt_exact(na_mean), fmt_exact(d.mean_usd),
                   fmt_exact(d.std_error_usd),
                   fmt_exact(d.mean_usd / premium.usd())});
  }
}

inline std::string belief_str(const std::optional<double>& b) {
  return b ? fmt_prob(*b) : "offpath";
}

inline void write_solution_csv(std::ostream& os, const PbeSolution& sol) {
  os << csv_row({"region", "claim_prob_secure", "claim_prob_nonsecure",
                 "audit_prob_given_cd", "audit_prob_given_nc", "mu", "lambda",
                 "phi_star", "theta", "delta", "notes"});
  os << csv_row({
      region_name(sol.region),
      fmt_prob(sol.ph.claim_prob_secure),
      fmt_prob(sol.ph.claim_prob_nonsecure),
      fmt_prob(sol.ins.audit_prob_given_cd),
      fmt_prob(sol.ins.audit_prob_given_nc),
      belief_str(sol.beliefs.mu),
      belief_str(sol.beliefs.lambda),
      fmt_prob(sol.phi_star),
      sol.theta ? fmt_prob(*sol.theta) : "",
      sol.delta ? fmt_prob(*sol.delta) : "",
      sol.notes,
  });
}

inline void write_solution_human(std::ostream& os, const PbeSolution& sol) {
  os << "region:               " << region_name(sol.region) << "\n"
     << "phi_star:             " << fmt_prob(sol.phi_star) << "\n"
     << "claim_prob_secure:    " << fmt_prob(sol.ph.claim_prob_secure) << "\n"
     << "claim_prob_nonsecure: " << fmt_prob(sol.ph.claim_prob_nonsecure)
     << "\n"
     << "audit_prob_given_cd:  " << fmt_prob(sol.ins.audit_prob_given_cd)
     << "\n"
     << "audit_prob_given_nc:  " << fmt_prob(sol.ins.audit_prob_given_nc)
     << "\n"
     << "mu:                   " << belief_str(sol.beliefs.mu) << "\n"
     << "lambda:               " << belief_str(sol.beliefs.lambda) << "\n";
  if (sol.theta) os << "theta:                " << fmt_prob(*sol.theta) << "\n";
  if (sol.delta) os << "delta:                " << fmt_prob(*sol.delta) << "\n";
  if (!sol.notes.empty()) os << "notes:                " << sol.notes << "\n";
}

inline void write_summary_human(std::ostream& os,
                                const SimulationSummary& sum) {
  os << "equilibrium " << region_name(sum.solution.region) << ", "
     << sum.repetitions << " repetitions, common_random_numbers="
     << (sum.common_random_numbers ? "true" : "false") << "\n";
  for (const ModelSummary& s : sum.models) {
    os << "  " << model_name(s.model) << ": mean_insurer_payoff="
       << fmt_exact(s.mean_insurer_payoff) << " se=" << fmt_exact(s.std_error)
       << " claims=" << s.claims << " breaches=" << s.breaches
       << " audits=" << s.audits << " denials=" << s.denials << "\n";
  }
  if (sum.gt_minus_never_audit) {
    os << "  GT - NeverAudit: " << fmt_exact(sum.gt_minus_never_audit->mean_usd)
       << " se=" << fmt_exact(sum.gt_minus_never_audit->std_error_usd) << "\n";
  }
}

}  // namespace ciag
