#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "ciag/ciag.hpp"

namespace ciag::test {

/// The calibrated baseline instance used throughout the tests.
inline GameParams baseline_params(double audit_cost = 5000,
                                  double discount = 181.5,
                                  double prior = 0.5) {
  return GameParams::from_usd(audit_cost, 2960, discount, 170000, 3630,
                              1000000, 0.015, 0.003, prior);
}

struct Rand {
  std::mt19937_64 eng;

  explicit Rand(std::uint64_t seed) : eng(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng);
  }
  double prob() { return uniform(0.0, 1.0); }
};

/// The four (l vs a, l vs d) constraint quadrants.
enum class Quadrant {
  LossAboveBoth,       // l > a, l > d
  LossAboveAuditOnly,  // l > a, l < d
  LossBelowAuditOnly,  // l < a, l > d
  LossBelowBoth,       // l < a, l < d
};

/// Draws valid parameters inside one quadrant, with margins that keep the
/// mixed solution feasible (theta < 1) whenever the quadrant admits it.
inline GameParams draw_params(Rand& r, Quadrant q) {
  for (;;) {
    const double wealth = 1000000;
    const double c = r.uniform(0, 3000);
    const double beta = r.uniform(0.1, 0.95);
    const double beta_star = beta * r.uniform(0.0, 1.0);
    const double phi = r.uniform(0.01, 0.99);

    double loss = 0, a = 0, d = 0, p = 0;
    switch (q) {
      case Quadrant::LossAboveBoth:
        loss = r.uniform(10000, 500000);
        a = loss * r.uniform(0.01, 0.95);
        p = r.uniform(1000, 10000);
        d = r.uniform(0.01, 0.9 * std::min({loss, beta * loss, p}));
        break;
      case Quadrant::LossAboveAuditOnly:
        loss = r.uniform(100, 2000);
        a = loss * r.uniform(0.01, 0.95);
        p = r.uniform(3 * loss, 10 * loss + 5000);
        d = r.uniform(1.05 * loss, 0.9 * p);
        break;
      case Quadrant::LossBelowAuditOnly:
        loss = r.uniform(1000, 50000);
        a = loss * r.uniform(1.05, 3.0);
        p = r.uniform(1000, 10000);
        d = r.uniform(0.01, 0.9 * std::min(loss, p));
        break;
      case Quadrant::LossBelowBoth:
        loss = r.uniform(100, 2000);
        a = loss * r.uniform(1.05, 3.0);
        p = r.uniform(3 * loss, 10 * loss + 5000);
        d = r.uniform(1.05 * loss, 0.9 * p);
        break;
    }

    const GameParams g = GameParams::from_usd(a, c, d, loss, p, wealth, beta,
                                              beta_star, phi);
    if (!validate_params(g).valid()) continue;
    // Cent rounding must not have crossed the intended quadrant boundary.
    const bool above_a = g.loss > g.audit_cost;
    const bool above_d = g.loss > g.discount;
    const bool want_a = q == Quadrant::LossAboveBoth ||
                        q == Quadrant::LossAboveAuditOnly;
    const bool want_d = q == Quadrant::LossAboveBoth ||
                        q == Quadrant::LossBelowAuditOnly;
    if (above_a != want_a || above_d != want_d) continue;
    return g;
  }
}

inline StrategyProfile random_profile(Rand& r) {
  return {{r.prob(), r.prob()}, {r.prob(), r.prob()}};
}

}  // namespace ciag::test
