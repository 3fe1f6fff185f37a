#pragma once

#include <array>
#include <optional>
#include <string>

#include "ciag/errors.hpp"
#include "ciag/money.hpp"
#include "ciag/params.hpp"
#include "ciag/utility.hpp"

namespace ciag {

enum class PolicyholderType { Secure, NonSecure };
enum class ClaimAction { ClaimDiscount, NoClaim };
enum class BreachOutcome { Breach, NoBreach };
enum class AuditAction { Audit, NoAudit };

/// One terminal node of the audit game tree. The insurer moves only after a
/// breach, so `audit` is present iff `breach == Breach`.
struct Leaf {
  PolicyholderType type;
  ClaimAction action;
  BreachOutcome breach;
  std::optional<AuditAction> audit;

  static Leaf make(PolicyholderType t, ClaimAction a, BreachOutcome b,
                   std::optional<AuditAction> ins = std::nullopt) {
    if (ins.has_value() != (b == BreachOutcome::Breach))
      throw Error(Errc::InvalidConfig,
                  "insurer move present iff a breach occurred");
    return Leaf{t, a, b, ins};
  }

  friend bool operator==(const Leaf&, const Leaf&) = default;
};

/// Net payoffs at a leaf, excluding the constant W - p (policyholder) and
/// p (insurer) that every outcome shares.
struct LeafOffsets {
  Money ph;
  Money ins;
};

/// The exact pair printed at the corresponding terminal node of the game
/// tree. A denied claim leaves the already-granted discount with the
/// policyholder, who then bears the full loss.
inline LeafOffsets leaf_net_offsets(const Leaf& leaf, const GameParams& g) {
  const Money a = g.audit_cost;
  const Money c = g.investment_cost;
  const Money d = g.discount;
  const Money l = g.loss;
  const Money zero = Money::from_cents(0);

  const bool secure = leaf.type == PolicyholderType::Secure;
  const bool claimed = leaf.action == ClaimAction::ClaimDiscount;
  const bool breached = leaf.breach == BreachOutcome::Breach;
  const bool audited = breached && leaf.audit == AuditAction::Audit;

  Money ph = secure ? -c : zero;
  Money ins = zero;
  if (claimed) {
    ph += d;
    ins -= d;
  }
  if (breached) {
    const bool denied = audited && !secure && claimed;
    if (denied)
      ph -= l;  // indemnity refused; discount already granted stays
    else
      ins -= l;
  }
  if (audited) ins -= a;
  return {ph, ins};
}

/// Policyholder wealth at a leaf: W - p + net offset.
inline Money wealth_at(const Leaf& leaf, const GameParams& g) {
  return g.wealth - g.premium + leaf_net_offsets(leaf, g).ph;
}

inline double policyholder_utility(const Leaf& leaf, const GameParams& g,
                                   const UtilitySpec& u) {
  return u(wealth_at(leaf, g).usd());
}

/// Insurer payoff at a leaf: p + net offset. The insurer is risk neutral.
inline Money insurer_payoff(const Leaf& leaf, const GameParams& g) {
  return g.premium + leaf_net_offsets(leaf, g).ins;
}

constexpr int kLeafCount = 12;

/// All 12 terminal nodes: 2 types x 2 actions x (no-breach + breach x 2
/// insurer moves), in a fixed enumeration order.
inline const std::array<Leaf, kLeafCount>& all_leaves() {
  static const std::array<Leaf, kLeafCount> leaves = [] {
    std::array<Leaf, kLeafCount> out{};
    int i = 0;
    for (auto t : {PolicyholderType::Secure, PolicyholderType::NonSecure}) {
      for (auto act : {ClaimAction::ClaimDiscount, ClaimAction::NoClaim}) {
        out[i++] = Leaf::make(t, act, BreachOutcome::Breach, AuditAction::Audit);
        out[i++] =
            Leaf::make(t, act, BreachOutcome::Breach, AuditAction::NoAudit);
        out[i++] = Leaf::make(t, act, BreachOutcome::NoBreach);
      }
    }
    return out;
  }();
  return leaves;
}

/// Index of a leaf in all_leaves().
inline int leaf_index(PolicyholderType t, ClaimAction a, BreachOutcome b,
                      std::optional<AuditAction> ins = std::nullopt) {
  int i = t == PolicyholderType::Secure ? 0 : 6;
  i += a == ClaimAction::ClaimDiscount ? 0 : 3;
  if (b == BreachOutcome::NoBreach) return i + 2;
  return i + (ins == AuditAction::Audit ? 0 : 1);
}

inline std::string leaf_label(const Leaf& leaf) {
  std::string s = leaf.type == PolicyholderType::Secure ? "S," : "N,";
  s += leaf.action == ClaimAction::ClaimDiscount ? "CD," : "NC,";
  if (leaf.breach == BreachOutcome::NoBreach) return s + "NB";
  s += "B,";
  s += leaf.audit == AuditAction::Audit ? "A" : "NA";
  return s;
}

}  // namespace ciag
