#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "ciag/errors.hpp"
#include "ciag/game_tree.hpp"
#include "ciag/params.hpp"
#include "ciag/utility.hpp"

namespace ciag {

/// Claim probabilities per policyholder type. In the mixed equilibrium the
/// non-secure probability is the classic inspection-game mixing weight.
struct PolicyholderStrategy {
  double claim_prob_secure = 0.0;
  double claim_prob_nonsecure = 0.0;
};

/// Audit probabilities per observed claim action. Auditing after a breach is
/// only possible at the two information sets (claimed / not claimed).
struct InsurerStrategy {
  double audit_prob_given_cd = 0.0;
  double audit_prob_given_nc = 0.0;
};

/// Posterior type beliefs at the insurer's two information sets. A belief is
/// absent (off path) when Bayes' rule conditions on a zero-probability event;
/// callers must not invent a numeric value there.
struct Beliefs {
  std::optional<double> mu;      // Pr(Secure | claimed discount)
  std::optional<double> lambda;  // Pr(Secure | no claim)
};

enum class PbeRegion { Pbe1, Pbe2, Pbe3Mixed, Pbe4, Pbe5 };

inline const char* region_name(PbeRegion r) {
  switch (r) {
    case PbeRegion::Pbe1: return "PBE1";
    case PbeRegion::Pbe2: return "PBE2";
    case PbeRegion::Pbe3Mixed: return "PBE3_Mixed";
    case PbeRegion::Pbe4: return "PBE4";
    case PbeRegion::Pbe5: return "PBE5";
  }
  return "?";
}

struct PbeSolution {
  PbeRegion region = PbeRegion::Pbe2;
  PolicyholderStrategy ph;
  InsurerStrategy ins;
  Beliefs beliefs;
  double phi_star = 0.0;
  std::optional<double> theta;  // audit probability after a claim, mixed region
  std::optional<double> delta;  // non-secure claim probability, mixed region
  std::string notes;            // boundary / tie flags
};

/// Belief threshold below which auditing a claimed discount is sequentially
/// rational: (l - a) / l. Returned unclamped; a >= l makes it <= 0 (auditing
/// can never recover its cost).
inline double audit_threshold(const GameParams& g) {
  return static_cast<double>((g.loss - g.audit_cost).cents()) /
         static_cast<double>(g.loss.cents());
}

/// Bayes posteriors for both information sets given the prior and a claim
/// strategy. Identical claim probabilities across types collapse to the
/// prior exactly.
inline Beliefs posterior_beliefs(double phi, const PolicyholderStrategy& ph) {
  if (!is_probability(phi))
    throw Error(Errc::InvalidConfig, "prior must lie in [0,1]");
  if (!is_probability(ph.claim_prob_secure) ||
      !is_probability(ph.claim_prob_nonsecure))
    throw Error(Errc::InvalidConfig, "claim probabilities must lie in [0,1]");

  const double qs = ph.claim_prob_secure;
  const double qn = ph.claim_prob_nonsecure;
  Beliefs b;

  const double den_cd = phi * qs + (1.0 - phi) * qn;
  if (den_cd > 0.0) b.mu = (qs == qn) ? phi : (phi * qs) / den_cd;

  const double den_nc = phi * (1.0 - qs) + (1.0 - phi) * (1.0 - qn);
  if (den_nc > 0.0) b.lambda = (qs == qn) ? phi : (phi * (1.0 - qs)) / den_nc;

  return b;
}

/// Insurer's expected value of each action at the claimed-discount
/// information set under belief mu, conditioned on a breach.
struct CdInfosetValues {
  double audit_usd;
  double no_audit_usd;
};

inline CdInfosetValues cd_infoset_insurer_payoffs(double mu,
                                                  const GameParams& g) {
  if (!is_probability(mu))
    throw Error(Errc::InvalidConfig, "belief must lie in [0,1]");
  const double p = g.premium.usd();
  const double d = g.discount.usd();
  const double l = g.loss.usd();
  const double a = g.audit_cost.usd();
  return {p - mu * l - d - a, p - d - l};
}

struct MixedSolution {
  double theta;  // insurer audit probability after a claim
  double delta;  // non-secure claim probability
  Beliefs beliefs;
};

/// Closed-form mixed strategies making both players indifferent:
/// delta = a / ((1-phi) l) and
/// theta = (U(W-p+d) - U(W-p)) / (beta (U(W-p+d) - U(W-p+d-l))).
inline MixedSolution mixed_solution(const GameParams& g, const UtilitySpec& u) {
  const double phi = g.prior;
  if (phi == 1.0)
    throw Error(Errc::PriorDegenerate,
                "prior = 1 leaves no non-secure type to deter");

  const double phi_star = audit_threshold(g);
  if (phi > phi_star)
    throw Error(Errc::RegionMismatch,
                "delta > 1: prior " + std::to_string(phi) +
                    " exceeds audit threshold " + std::to_string(phi_star));

  const double a_c = static_cast<double>(g.audit_cost.cents());
  const double l_c = static_cast<double>(g.loss.cents());
  // phi == phi_star makes this exactly 1 algebraically; honor the identity
  // instead of the rounded quotient, and clamp stray rounding just below
  // the boundary.
  const double delta = phi == phi_star
                           ? 1.0
                           : std::min(a_c / ((1.0 - phi) * l_c), 1.0);

  const double w_cd = (g.wealth - g.premium + g.discount).usd();
  const double w_nc = (g.wealth - g.premium).usd();
  const double w_cd_denied = (g.wealth - g.premium + g.discount - g.loss).usd();
  const double num = u(w_cd) - u(w_nc);
  const double den = g.breach_prob * (u(w_cd) - u(w_cd_denied));

  double theta = 0.0;
  if (num != 0.0) {
    if (!(den > 0.0))
      throw Error(Errc::DeterrenceInfeasible,
                  "no breach exposure to deter the non-secure type");
    theta = num / den;
  }
  if (theta > 1.0)
    throw Error(Errc::DeterrenceInfeasible,
                "required audit frequency " + std::to_string(theta) +
                    " exceeds 1");

  MixedSolution m;
  m.theta = theta;
  m.delta = delta;
  m.beliefs = posterior_beliefs(phi, PolicyholderStrategy{1.0, delta});
  return m;
}

/// Classifies the game into its equilibrium region and returns strategies,
/// beliefs and mixing probabilities. Region boundaries (l == a, l == d,
/// phi == phi*) are resolved deterministically and flagged in `notes`.
inline PbeSolution solve_pbe(const GameParams& g, const UtilitySpec& u) {
  require_valid(g);

  PbeSolution sol;
  sol.phi_star = audit_threshold(g);

  const auto l = g.loss;
  const auto a = g.audit_cost;
  const auto d = g.discount;
  const double phi = g.prior;

  auto note = [&sol](const std::string& s) {
    if (!sol.notes.empty()) sol.notes += "; ";
    sol.notes += s;
  };
  if (l == a) note("l == a: tie broken toward NoAudit");
  if (l == d) note("l == d: tie broken toward the deterrable branch");
  if (phi == sol.phi_star) note("phi == phi*: region boundary with delta = 1");
  if (sol.phi_star <= 0.0)
    note("phi* <= 0: auditing can never recover its cost");

  const PolicyholderStrategy claim_always{1.0, 1.0};
  const Beliefs on_path_cd{phi, std::nullopt};

  if (l <= a) {
    // Auditing recovers at most l, never more than its cost here: never
    // audit, at any belief.
    sol.region = PbeRegion::Pbe1;
    sol.ph = claim_always;
    sol.ins = {0.0, 0.0};
    sol.beliefs = on_path_cd;
    return sol;
  }

  if (l >= d) {
    if (phi > sol.phi_star) {
      sol.region = PbeRegion::Pbe2;
      sol.ph = claim_always;
      sol.ins = {0.0, 0.0};
      sol.beliefs = on_path_cd;
      return sol;
    }
    const MixedSolution m = mixed_solution(g, u);
    sol.region = PbeRegion::Pbe3Mixed;
    sol.ph = {1.0, m.delta};
    sol.ins = {m.theta, 0.0};
    sol.beliefs = m.beliefs;
    sol.theta = m.theta;
    sol.delta = m.delta;
    return sol;
  }

  // l < d: a denied claim still leaves the policyholder ahead, so auditing
  // deters nothing; it is merely rational or not at the claim infoset.
  if (phi > sol.phi_star) {
    sol.region = PbeRegion::Pbe4;
    sol.ph = claim_always;
    sol.ins = {0.0, 0.0};
  } else {
    sol.region = PbeRegion::Pbe5;
    sol.ph = claim_always;
    sol.ins = {1.0, 0.0};
  }
  sol.beliefs = on_path_cd;
  return sol;
}

}  // namespace ciag
