#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "ciag/equilibrium.hpp"
#include "ciag/errors.hpp"
#include "ciag/game_tree.hpp"
#include "ciag/params.hpp"
#include "ciag/utility.hpp"

namespace ciag {

struct StrategyProfile {
  PolicyholderStrategy ph;
  InsurerStrategy ins;
};

inline void require_valid(const StrategyProfile& s) {
  if (!is_probability(s.ph.claim_prob_secure) ||
      !is_probability(s.ph.claim_prob_nonsecure) ||
      !is_probability(s.ins.audit_prob_given_cd) ||
      !is_probability(s.ins.audit_prob_given_nc))
    throw Error(Errc::InvalidConfig, "strategy probabilities must lie in [0,1]");
}

/// Exact expectations under the true chance measure: type ~ prior, breach ~
/// the type's breach probability, insurer moves only on breach. Policyholder
/// values condition on the type; the insurer value is ex ante.
struct ExpectedPayoffs {
  double ph_secure_utils;
  double ph_nonsecure_utils;
  double insurer_usd;
};

namespace detail {

// Reusable per-call tables: utilities and insurer dollars for all 12 leaves.
struct LeafTables {
  std::array<double, kLeafCount> ph_utils{};
  std::array<double, kLeafCount> ins_usd{};
  std::array<std::int64_t, kLeafCount> ins_cents{};

  LeafTables(const GameParams& g, const UtilitySpec& u) {
    const auto& leaves = all_leaves();
    for (int i = 0; i < kLeafCount; ++i) {
      ph_utils[i] = policyholder_utility(leaves[i], g, u);
      const Money m = insurer_payoff(leaves[i], g);
      ins_usd[i] = m.usd();
      ins_cents[i] = m.cents();
    }
  }
};

inline double type_breach_prob(PolicyholderType t, const GameParams& g) {
  return t == PolicyholderType::Secure ? g.breach_prob_invested
                                       : g.breach_prob;
}

// Expected utility of one policyholder type playing claim probability q
// against a fixed insurer strategy.
inline double ph_type_value(PolicyholderType t, double q,
                            const InsurerStrategy& ins, const GameParams& g,
                            const LeafTables& tab) {
  const double beta = type_breach_prob(t, g);
  auto branch = [&](ClaimAction act, double q_audit) {
    const int i_a = leaf_index(t, act, BreachOutcome::Breach, AuditAction::Audit);
    const int i_na =
        leaf_index(t, act, BreachOutcome::Breach, AuditAction::NoAudit);
    const int i_nb = leaf_index(t, act, BreachOutcome::NoBreach);
    return beta * (q_audit * tab.ph_utils[i_a] +
                   (1.0 - q_audit) * tab.ph_utils[i_na]) +
           (1.0 - beta) * tab.ph_utils[i_nb];
  };
  return q * branch(ClaimAction::ClaimDiscount, ins.audit_prob_given_cd) +
         (1.0 - q) * branch(ClaimAction::NoClaim, ins.audit_prob_given_nc);
}

// Insurer ex-ante value, affine in the two audit probabilities:
// value = base + q_cd * coef_cd + q_nc * coef_nc.
struct InsurerAffine {
  double base = 0.0;
  double coef_cd = 0.0;
  double coef_nc = 0.0;

  [[nodiscard]] double at(double q_cd, double q_nc) const {
    return base + q_cd * coef_cd + q_nc * coef_nc;
  }
};

inline InsurerAffine insurer_affine(const PolicyholderStrategy& ph,
                                    const GameParams& g,
                                    const LeafTables& tab) {
  InsurerAffine f;
  for (auto t : {PolicyholderType::Secure, PolicyholderType::NonSecure}) {
    const double p_type =
        t == PolicyholderType::Secure ? g.prior : 1.0 - g.prior;
    const double q = t == PolicyholderType::Secure ? ph.claim_prob_secure
                                                   : ph.claim_prob_nonsecure;
    const double beta = type_breach_prob(t, g);
    for (auto act : {ClaimAction::ClaimDiscount, ClaimAction::NoClaim}) {
      const double reach =
          p_type * (act == ClaimAction::ClaimDiscount ? q : 1.0 - q);
      const int i_a = leaf_index(t, act, BreachOutcome::Breach, AuditAction::Audit);
      const int i_na =
          leaf_index(t, act, BreachOutcome::Breach, AuditAction::NoAudit);
      const int i_nb = leaf_index(t, act, BreachOutcome::NoBreach);
      f.base += reach * (beta * tab.ins_usd[i_na] +
                         (1.0 - beta) * tab.ins_usd[i_nb]);
      const double swing = reach * beta * (tab.ins_usd[i_a] - tab.ins_usd[i_na]);
      if (act == ClaimAction::ClaimDiscount)
        f.coef_cd += swing;
      else
        f.coef_nc += swing;
    }
  }
  return f;
}

// The proof-style accounting behind the mixed equilibrium: condition on a
// breach having happened (no breach-probability weighting) and compare the
// audit-everywhere policy against the never-audit policy. The insurer's
// strategy is the scalar mixing weight on the former.
struct BreachConditionedMix {
  double audit_policy_usd;     // value of auditing at both infosets
  double no_audit_policy_usd;  // value of never auditing

  [[nodiscard]] double at(double mix) const {
    return mix * audit_policy_usd + (1.0 - mix) * no_audit_policy_usd;
  }
};

inline BreachConditionedMix breach_conditioned_mix(
    const PolicyholderStrategy& ph, const GameParams& g,
    const LeafTables& tab) {
  BreachConditionedMix m{0.0, 0.0};
  for (auto t : {PolicyholderType::Secure, PolicyholderType::NonSecure}) {
    const double p_type =
        t == PolicyholderType::Secure ? g.prior : 1.0 - g.prior;
    const double q = t == PolicyholderType::Secure ? ph.claim_prob_secure
                                                   : ph.claim_prob_nonsecure;
    for (auto act : {ClaimAction::ClaimDiscount, ClaimAction::NoClaim}) {
      const double reach =
          p_type * (act == ClaimAction::ClaimDiscount ? q : 1.0 - q);
      m.audit_policy_usd +=
          reach * tab.ins_usd[leaf_index(t, act, BreachOutcome::Breach,
                                         AuditAction::Audit)];
      m.no_audit_policy_usd +=
          reach * tab.ins_usd[leaf_index(t, act, BreachOutcome::Breach,
                                         AuditAction::NoAudit)];
    }
  }
  return m;
}

}  // namespace detail

inline ExpectedPayoffs expected_payoffs(const StrategyProfile& profile,
                                        const GameParams& g,
                                        const UtilitySpec& u) {
  require_valid(g);
  require_valid(profile);
  const detail::LeafTables tab(g, u);
  const detail::InsurerAffine f = detail::insurer_affine(profile.ph, g, tab);
  return {
      detail::ph_type_value(PolicyholderType::Secure,
                            profile.ph.claim_prob_secure, profile.ins, g, tab),
      detail::ph_type_value(PolicyholderType::NonSecure,
                            profile.ph.claim_prob_nonsecure, profile.ins, g,
                            tab),
      f.at(profile.ins.audit_prob_given_cd, profile.ins.audit_prob_given_nc),
  };
}

/// Best-response gaps under unilateral grid deviations, holding the opponent
/// fixed. Policyholder gaps coincide under both accountings (each type knows
/// its own breach probability). The insurer gap is reported twice: under the
/// true chance measure, and under the breach-conditioned accounting that the
/// mixed-equilibrium derivation uses.
struct DeviationReport {
  double ph_secure_gap = 0.0;       // utils
  double ph_secure_best = 0.0;      // claim probability attaining the max
  double ph_nonsecure_gap = 0.0;    // utils
  double ph_nonsecure_best = 0.0;
  double insurer_gap_true = 0.0;    // usd, ex-ante measure
  double insurer_best_cd = 0.0;
  double insurer_best_nc = 0.0;
  double insurer_gap_paper = 0.0;   // usd, breach-conditioned accounting
  double insurer_best_audit_policy = 0.0;  // mixing weight attaining the max
};

inline DeviationReport deviation_gaps(const StrategyProfile& profile,
                                      const GameParams& g,
                                      const UtilitySpec& u, int grid_n = 101) {
  if (grid_n < 2) throw Error(Errc::InvalidConfig, "grid_n must be >= 2");
  require_valid(g);
  require_valid(profile);

  const detail::LeafTables tab(g, u);
  std::vector<double> grid(static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i)
    grid[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(grid_n - 1);

  DeviationReport rep;

  // Policyholder types. Candidates include the current strategy so the gap
  // is non-negative by construction.
  auto ph_gap = [&](PolicyholderType t, double current, double* best) {
    const double cur_val =
        detail::ph_type_value(t, current, profile.ins, g, tab);
    double max_val = cur_val;
    *best = current;
    for (double q : grid) {
      const double v = detail::ph_type_value(t, q, profile.ins, g, tab);
      if (v > max_val) {
        max_val = v;
        *best = q;
      }
    }
    return max_val - cur_val;
  };
  rep.ph_secure_gap = ph_gap(PolicyholderType::Secure,
                             profile.ph.claim_prob_secure, &rep.ph_secure_best);
  rep.ph_nonsecure_gap =
      ph_gap(PolicyholderType::NonSecure, profile.ph.claim_prob_nonsecure,
             &rep.ph_nonsecure_best);

  // Insurer, true measure: grid over both audit probabilities.
  {
    const detail::InsurerAffine f = detail::insurer_affine(profile.ph, g, tab);
    const double cur_val = f.at(profile.ins.audit_prob_given_cd,
                                profile.ins.audit_prob_given_nc);
    double max_val = cur_val;
    rep.insurer_best_cd = profile.ins.audit_prob_given_cd;
    rep.insurer_best_nc = profile.ins.audit_prob_given_nc;
    for (double q_cd : grid) {
      for (double q_nc : grid) {
        const double v = f.at(q_cd, q_nc);
        if (v > max_val) {
          max_val = v;
          rep.insurer_best_cd = q_cd;
          rep.insurer_best_nc = q_nc;
        }
      }
    }
    rep.insurer_gap_true = max_val - cur_val;
  }

  // Insurer, breach-conditioned accounting: scalar mix between the
  // audit-everywhere and never-audit policies; the current strategy enters
  // through its audit probability after a claim.
  {
    const detail::BreachConditionedMix m =
        detail::breach_conditioned_mix(profile.ph, g, tab);
    const double cur_val = m.at(profile.ins.audit_prob_given_cd);
    double max_val = cur_val;
    rep.insurer_best_audit_policy = profile.ins.audit_prob_given_cd;
    for (double q : grid) {
      const double v = m.at(q);
      if (v > max_val) {
        max_val = v;
        rep.insurer_best_audit_policy = q;
      }
    }
    rep.insurer_gap_paper = max_val - cur_val;
  }

  return rep;
}

/// Residuals of the two mixed-equilibrium indifference equations; both
/// vanish at the closed-form solution.
struct IndifferenceResiduals {
  double ph_residual_utils;   // value of claiming minus not, non-secure type
  double insurer_residual_usd;  // delta (1-phi) l - a
};

inline IndifferenceResiduals indifference_residuals(const PbeSolution& sol,
                                                    const GameParams& g,
                                                    const UtilitySpec& u) {
  if (sol.region != PbeRegion::Pbe3Mixed)
    throw Error(Errc::WrongRegion,
                "indifference residuals are defined for the mixed region only");
  const double theta = sol.theta.value();
  const double delta = sol.delta.value();

  const double w_cd = (g.wealth - g.premium + g.discount).usd();
  const double w_nc = (g.wealth - g.premium).usd();
  const double w_cd_denied = (g.wealth - g.premium + g.discount - g.loss).usd();
  const double ph_residual =
      g.breach_prob * theta * (u(w_cd_denied) - u(w_cd)) +
      (u(w_cd) - u(w_nc));

  const double ins_residual_cents =
      delta * (1.0 - g.prior) * static_cast<double>(g.loss.cents()) -
      static_cast<double>(g.audit_cost.cents());

  return {ph_residual, ins_residual_cents / 100.0};
}

}  // namespace ciag
