#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ciag/equilibrium.hpp"
#include "ciag/errors.hpp"
#include "ciag/game_tree.hpp"
#include "ciag/params.hpp"
#include "ciag/rng.hpp"
#include "ciag/utility.hpp"

namespace ciag {

/// The seven insurer strategy models compared in the experiments. All but GT
/// are fixed audit-probability pairs; GT plays the solved equilibrium.
enum class StrategyModel {
  GT,
  AlwaysAudit,     // (A,A)
  NeverAudit,      // (NA,NA)
  AuditOnClaim,    // (A,NA)
  AuditOnNoClaim,  // (NA,A)
  HalfHalf,        // (0.5A,0.5A)
  HalfOnClaim,     // (0.5A,NA)
};

constexpr std::array<StrategyModel, 7> kAllModels = {
    StrategyModel::GT,           StrategyModel::AlwaysAudit,
    StrategyModel::NeverAudit,   StrategyModel::AuditOnClaim,
    StrategyModel::AuditOnNoClaim, StrategyModel::HalfHalf,
    StrategyModel::HalfOnClaim,
};

inline const char* model_name(StrategyModel m) {
  switch (m) {
    case StrategyModel::GT: return "GT";
    case StrategyModel::AlwaysAudit: return "AlwaysAudit";
    case StrategyModel::NeverAudit: return "NeverAudit";
    case StrategyModel::AuditOnClaim: return "AuditOnClaim";
    case StrategyModel::AuditOnNoClaim: return "AuditOnNoClaim";
    case StrategyModel::HalfHalf: return "HalfHalf";
    case StrategyModel::HalfOnClaim: return "HalfOnClaim";
  }
  return "?";
}

inline StrategyModel parse_model(const std::string& name) {
  for (StrategyModel m : kAllModels)
    if (name == model_name(m)) return m;
  throw Error(Errc::ParseError, "unknown strategy model '" + name + "'");
}

/// RNG stream identity of a model. Keyed by the model tag (not its position
/// in the configured list) so adding or removing models never perturbs the
/// draws of the others.
constexpr std::uint64_t model_stream(StrategyModel m) {
  return static_cast<std::uint64_t>(m) + 1;
}

/// Stream for nature's draws when they are shared across models.
constexpr std::uint64_t kSharedStream = 0;

inline InsurerStrategy insurer_strategy_for(StrategyModel m,
                                            const PbeSolution& sol) {
  switch (m) {
    case StrategyModel::GT: return sol.ins;
    case StrategyModel::AlwaysAudit: return {1.0, 1.0};
    case StrategyModel::NeverAudit: return {0.0, 0.0};
    case StrategyModel::AuditOnClaim: return {1.0, 0.0};
    case StrategyModel::AuditOnNoClaim: return {0.0, 1.0};
    case StrategyModel::HalfHalf: return {0.5, 0.5};
    case StrategyModel::HalfOnClaim: return {0.5, 0.0};
  }
  return {0.0, 0.0};
}

struct SimulationConfig {
  GameParams params;
  UtilitySpec utility = UtilitySpec::linear();
  std::int64_t repetitions = 1000;
  std::uint64_t master_seed = 0;
  std::vector<StrategyModel> models{kAllModels.begin(), kAllModels.end()};
  bool common_random_numbers = true;
};

struct ModelSummary {
  StrategyModel model = StrategyModel::GT;
  InsurerStrategy strategy;
  std::array<std::int64_t, kLeafCount> leaf_counts{};
  double mean_insurer_payoff = 0.0;  // usd
  double std_error = 0.0;            // usd
  double mean_ph_secure_utils = 0.0;     // NaN when no secure draw occurred
  double mean_ph_nonsecure_utils = 0.0;  // NaN when no non-secure draw occurred
  std::int64_t secure_draws = 0;
  std::int64_t claims = 0;
  std::int64_t breaches = 0;
  std::int64_t audits = 0;
  std::int64_t denials = 0;
};

/// Per-repetition difference between two models' insurer payoffs, available
/// when both GT and NeverAudit are simulated (they share nature's draws under
/// common random numbers, which makes this the tight comparison).
struct PairedDifference {
  double mean_usd = 0.0;
  double std_error_usd = 0.0;
};

struct SimulationSummary {
  PbeSolution solution;  // policyholder strategy and the GT insurer strategy
  std::int64_t repetitions = 0;
  bool common_random_numbers = true;
  std::vector<ModelSummary> models;
  std::optional<PairedDifference> gt_minus_never_audit;
};

inline void require_valid(const SimulationConfig& cfg) {
  if (cfg.repetitions < 1)
    throw Error(Errc::InvalidConfig, "repetitions must be >= 1");
  if (cfg.models.empty())
    throw Error(Errc::InvalidConfig, "at least one strategy model is required");
  for (std::size_t i = 0; i < cfg.models.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.models.size(); ++j)
      if (cfg.models[i] == cfg.models[j])
        throw Error(Errc::InvalidConfig,
                    std::string("duplicate strategy model ") +
                        model_name(cfg.models[i]));
  require_valid(cfg.params);
}

namespace mc_detail {

// Unbiased standard error from exact integer sums: n*sumsq - sum^2 >= 0.
inline double std_error_from_sums(std::int64_t n, std::int64_t sum_cents,
                                  __int128 sumsq_cents) {
  if (n < 2) return 0.0;
  const __int128 num = static_cast<__int128>(n) * sumsq_cents -
                       static_cast<__int128>(sum_cents) *
                           static_cast<__int128>(sum_cents);
  const double variance_scaled = static_cast<double>(num);
  const double nn = static_cast<double>(n);
  return std::sqrt(variance_scaled / (nn * nn * (nn - 1.0))) / 100.0;
}

}  // namespace mc_detail

/// Plays the game `repetitions` times with the policyholder at her
/// equilibrium strategy and every configured insurer model in parallel
/// worlds. With common random numbers, nature's draws (type, claim, breach)
/// are shared across models within a repetition and only the audit draw uses
/// a per-model stream. Identical configs produce bit-identical summaries.
inline SimulationSummary run_simulation(const SimulationConfig& cfg) {
  require_valid(cfg);

  SimulationSummary out;
  out.solution = solve_pbe(cfg.params, cfg.utility);
  out.repetitions = cfg.repetitions;
  out.common_random_numbers = cfg.common_random_numbers;

  const GameParams& g = cfg.params;
  const auto& leaves = all_leaves();
  std::array<std::int64_t, kLeafCount> ins_cents{};
  std::array<double, kLeafCount> ph_utils{};
  for (int i = 0; i < kLeafCount; ++i) {
    ins_cents[i] = insurer_payoff(leaves[i], g).cents();
    ph_utils[i] = policyholder_utility(leaves[i], g, cfg.utility);
  }

  const std::size_t n_models = cfg.models.size();
  std::vector<InsurerStrategy> strategies(n_models);
  for (std::size_t m = 0; m < n_models; ++m)
    strategies[m] = insurer_strategy_for(cfg.models[m], out.solution);

  std::vector<std::array<std::int64_t, kLeafCount>> counts(
      n_models, std::array<std::int64_t, kLeafCount>{});

  // Optional paired accounting for GT vs NeverAudit.
  std::ptrdiff_t idx_gt = -1;
  std::ptrdiff_t idx_na = -1;
  for (std::size_t m = 0; m < n_models; ++m) {
    if (cfg.models[m] == StrategyModel::GT) idx_gt = static_cast<std::ptrdiff_t>(m);
    if (cfg.models[m] == StrategyModel::NeverAudit)
      idx_na = static_cast<std::ptrdiff_t>(m);
  }
  const bool paired = idx_gt >= 0 && idx_na >= 0;
  std::int64_t diff_sum = 0;
  __int128 diff_sumsq = 0;

  const CounterRng rng(cfg.master_seed);
  const double q_claim_secure = out.solution.ph.claim_prob_secure;
  const double q_claim_nonsecure = out.solution.ph.claim_prob_nonsecure;

  std::vector<int> rep_leaf(n_models, 0);
  for (std::int64_t rep = 0; rep < cfg.repetitions; ++rep) {
    const auto r = static_cast<std::uint64_t>(rep);

    bool shared_secure = false, shared_claim = false, shared_breach = false;
    if (cfg.common_random_numbers) {
      shared_secure = rng.bernoulli(g.prior, r, kSharedStream, DrawKind::Type);
      shared_claim = rng.bernoulli(
          shared_secure ? q_claim_secure : q_claim_nonsecure, r, kSharedStream,
          DrawKind::Claim);
      shared_breach = rng.bernoulli(
          shared_secure ? g.breach_prob_invested : g.breach_prob, r,
          kSharedStream, DrawKind::Breach);
    }

    for (std::size_t m = 0; m < n_models; ++m) {
      const std::uint64_t stream = model_stream(cfg.models[m]);
      bool secure = shared_secure, claim = shared_claim, breach = shared_breach;
      if (!cfg.common_random_numbers) {
        secure = rng.bernoulli(g.prior, r, stream, DrawKind::Type);
        claim = rng.bernoulli(secure ? q_claim_secure : q_claim_nonsecure, r,
                              stream, DrawKind::Claim);
        breach = rng.bernoulli(
            secure ? g.breach_prob_invested : g.breach_prob, r, stream,
            DrawKind::Breach);
      }

      const auto type =
          secure ? PolicyholderType::Secure : PolicyholderType::NonSecure;
      const auto action =
          claim ? ClaimAction::ClaimDiscount : ClaimAction::NoClaim;
      int leaf;
      if (!breach) {
        leaf = leaf_index(type, action, BreachOutcome::NoBreach);
      } else {
        const double q_audit = claim ? strategies[m].audit_prob_given_cd
                                     : strategies[m].audit_prob_given_nc;
        const bool audit = rng.bernoulli(q_audit, r, stream, DrawKind::Audit);
        leaf = leaf_index(type, action, BreachOutcome::Breach,
                          audit ? AuditAction::Audit : AuditAction::NoAudit);
      }
      ++counts[m][static_cast<std::size_t>(leaf)];
      rep_leaf[m] = leaf;
    }

    if (paired) {
      const std::int64_t diff =
          ins_cents[static_cast<std::size_t>(rep_leaf[static_cast<std::size_t>(idx_gt)])] -
          ins_cents[static_cast<std::size_t>(rep_leaf[static_cast<std::size_t>(idx_na)])];
      diff_sum += diff;
      diff_sumsq += static_cast<__int128>(diff) * diff;
    }
  }

  const std::int64_t n = cfg.repetitions;
  for (std::size_t m = 0; m < n_models; ++m) {
    ModelSummary s;
    s.model = cfg.models[m];
    s.strategy = strategies[m];
    s.leaf_counts = counts[m];

    std::int64_t sum = 0;
    __int128 sumsq = 0;
    double sum_utils_secure = 0.0, sum_utils_nonsecure = 0.0;
    for (int i = 0; i < kLeafCount; ++i) {
      const std::int64_t c = counts[m][static_cast<std::size_t>(i)];
      if (c == 0) continue;
      sum += c * ins_cents[i];
      sumsq += static_cast<__int128>(c) * ins_cents[i] * ins_cents[i];
      const Leaf& leaf = leaves[static_cast<std::size_t>(i)];
      const double cu = static_cast<double>(c) * ph_utils[i];
      if (leaf.type == PolicyholderType::Secure) {
        sum_utils_secure += cu;
        s.secure_draws += c;
      } else {
        sum_utils_nonsecure += cu;
      }
      if (leaf.action == ClaimAction::ClaimDiscount) s.claims += c;
      if (leaf.breach == BreachOutcome::Breach) s.breaches += c;
      if (leaf.audit == AuditAction::Audit) {
        s.audits += c;
        if (leaf.type == PolicyholderType::NonSecure &&
            leaf.action == ClaimAction::ClaimDiscount)
          s.denials += c;
      }
    }

    s.mean_insurer_payoff =
        static_cast<double>(sum) / (100.0 * static_cast<double>(n));
    s.std_error = mc_detail::std_error_from_sums(n, sum, sumsq);
    const std::int64_t nonsecure_draws = n - s.secure_draws;
    s.mean_ph_secure_utils =
        s.secure_draws > 0
            ? sum_utils_secure / static_cast<double>(s.secure_draws)
            : std::numeric_limits<double>::quiet_NaN();
    s.mean_ph_nonsecure_utils =
        nonsecure_draws > 0
            ? sum_utils_nonsecure / static_cast<double>(nonsecure_draws)
            : std::numeric_limits<double>::quiet_NaN();
    out.models.push_back(s);
  }

  if (paired) {
    PairedDifference d;
    d.mean_usd = static_cast<double>(diff_sum) / (100.0 * static_cast<double>(n));
    d.std_error_usd = mc_detail::std_error_from_sums(n, diff_sum, diff_sumsq);
    out.gt_minus_never_audit = d;
  }
  return out;
}

enum class SweepAxis { AuditCost, Discount, Loss, Repetitions, Prior };

inline const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::AuditCost: return "audit-cost";
    case SweepAxis::Discount: return "discount";
    case SweepAxis::Loss: return "loss";
    case SweepAxis::Repetitions: return "repetitions";
    case SweepAxis::Prior: return "prior";
  }
  return "?";
}

inline SweepAxis parse_axis(const std::string& name) {
  for (SweepAxis a : {SweepAxis::AuditCost, SweepAxis::Discount,
                      SweepAxis::Loss, SweepAxis::Repetitions,
                      SweepAxis::Prior})
    if (name == axis_name(a)) return a;
  throw Error(Errc::ParseError, "unknown sweep axis '" + name + "'");
}

struct SweepPoint {
  double axis_value = 0.0;
  std::optional<SimulationSummary> summary;  // empty on per-point failure
  std::string error;       // full diagnostic
  std::string error_code;  // short code, e.g. "DeterrenceInfeasible"
};

struct SweepTable {
  SweepAxis axis = SweepAxis::AuditCost;
  std::vector<SweepPoint> points;
};

/// Re-solves the equilibrium and re-runs the simulation at every axis value.
/// Point seeds derive from the master seed and the point index, so inserting
/// a value re-seeds only that point. Per-point solver failures are recorded
/// in the row instead of aborting the sweep.
inline SweepTable sweep(const SimulationConfig& base, SweepAxis axis,
                        const std::vector<double>& values) {
  if (values.empty())
    throw Error(Errc::InvalidConfig, "sweep requires at least one axis value");

  SweepTable table;
  table.axis = axis;
  const CounterRng seeder(base.master_seed);

  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    SweepPoint pt;
    pt.axis_value = v;

    SimulationConfig cfg = base;
    cfg.master_seed = seeder.child(i).seed();
    switch (axis) {
      case SweepAxis::AuditCost: cfg.params.audit_cost = Money::from_usd(v); break;
      case SweepAxis::Discount: cfg.params.discount = Money::from_usd(v); break;
      case SweepAxis::Loss: cfg.params.loss = Money::from_usd(v); break;
      case SweepAxis::Repetitions:
        cfg.repetitions = static_cast<std::int64_t>(std::llround(v));
        break;
      case SweepAxis::Prior: cfg.params.prior = v; break;
    }

    try {
      pt.summary = run_simulation(cfg);
    } catch (const Error& e) {
      pt.error = e.what();
      pt.error_code = errc_name(e.code());
    }
    table.points.push_back(std::move(pt));
  }
  return table;
}

}  // namespace ciag
