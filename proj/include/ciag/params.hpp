#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ciag/errors.hpp"
#include "ciag/money.hpp"

namespace ciag {

/// All monetary and probability parameters of one audit-game instance.
struct GameParams {
  Money audit_cost;      // a
  Money investment_cost; // c
  Money discount;        // d
  Money loss;            // l
  Money premium;         // p
  Money wealth;          // W
  double breach_prob = 0.0;          // beta, for the non-secure type
  double breach_prob_invested = 0.0; // beta*, for the secure type
  double prior = 0.0;                // phi = Pr(Secure)

  static GameParams from_usd(double audit_cost, double investment_cost,
                             double discount, double loss, double premium,
                             double wealth, double breach_prob,
                             double breach_prob_invested, double prior) {
    GameParams g;
    g.audit_cost = Money::from_usd(audit_cost);
    g.investment_cost = Money::from_usd(investment_cost);
    g.discount = Money::from_usd(discount);
    g.loss = Money::from_usd(loss);
    g.premium = Money::from_usd(premium);
    g.wealth = Money::from_usd(wealth);
    g.breach_prob = breach_prob;
    g.breach_prob_invested = breach_prob_invested;
    g.prior = prior;
    return g;
  }
};

struct ValidationReport {
  std::vector<std::string> violations;

  [[nodiscard]] bool valid() const { return violations.empty(); }

  [[nodiscard]] std::string joined() const {
    std::string s;
    for (const auto& v : violations) {
      if (!s.empty()) s += "; ";
      s += v;
    }
    return s;
  }
};

inline bool is_probability(double x) {
  return std::isfinite(x) && x >= 0.0 && x <= 1.0;
}

/// Reports every violated model assumption; never throws.
inline ValidationReport validate_params(const GameParams& g) {
  ValidationReport r;
  auto fail = [&r](const std::string& msg) { r.violations.push_back(msg); };

  if (g.audit_cost.cents() < 0) fail("audit_cost >= 0 violated");
  if (g.investment_cost.cents() < 0) fail("investment_cost >= 0 violated");
  if (g.discount.cents() < 0) fail("discount >= 0 violated");
  if (g.loss.cents() <= 0) fail("loss > 0 violated");
  if (g.premium.cents() <= 0) fail("premium > 0 violated");

  if (!(g.wealth > g.premium))
    fail("W > p violated: wealth " + g.wealth.str() + " <= premium " +
         g.premium.str());
  if (!(g.premium > g.discount))
    fail("p > d violated: premium " + g.premium.str() + " <= discount " +
         g.discount.str());
  if (!(g.wealth - g.premium + g.discount > g.investment_cost))
    fail("W - p + d > c violated");

  if (!is_probability(g.breach_prob)) fail("breach_prob in [0,1] violated");
  if (!is_probability(g.breach_prob_invested))
    fail("breach_prob_invested in [0,1] violated");
  if (is_probability(g.breach_prob) && is_probability(g.breach_prob_invested) &&
      g.breach_prob_invested > g.breach_prob)
    fail("beta* <= beta violated: breach_prob_invested " +
         std::to_string(g.breach_prob_invested) + " > breach_prob " +
         std::to_string(g.breach_prob));
  if (!is_probability(g.prior)) fail("prior in [0,1] violated");

  return r;
}

inline void require_valid(const GameParams& g) {
  const ValidationReport r = validate_params(g);
  if (!r.valid()) throw Error(Errc::ValidationError, r.joined());
}

}  // namespace ciag
