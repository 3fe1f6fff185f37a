#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ciag/errors.hpp"
#include "ciag/money.hpp"
#include "ciag/params.hpp"

namespace ciag {

enum class UtilityFamily { Linear, LogShifted, ExponentialCara, Power };

/// Policyholder utility of wealth. Every family is monotone increasing and
/// (weakly) concave on its domain; Linear keeps payoffs in dollars, which is
/// what the dollar-denominated simulation comparisons need.
class UtilitySpec {
 public:
  static UtilitySpec linear() { return UtilitySpec(UtilityFamily::Linear); }

  /// U(x) = log(x + shift); defined for x + shift > 0.
  static UtilitySpec log_shifted(Money shift) {
    UtilitySpec u(UtilityFamily::LogShifted);
    u.shift_usd_ = shift.usd();
    return u;
  }

  /// U(x) = (1 - exp(-alpha x)) / alpha, alpha > 0 (constant absolute risk
  /// aversion).
  static UtilitySpec exponential_cara(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw Error(Errc::InvalidConfig, "CARA coefficient must be > 0");
    UtilitySpec u(UtilityFamily::ExponentialCara);
    u.alpha_ = alpha;
    return u;
  }

  /// U(x) = x^gamma, gamma in (0,1); defined for x >= 0.
  static UtilitySpec power(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
      throw Error(Errc::InvalidConfig, "power exponent must lie in (0,1)");
    UtilitySpec u(UtilityFamily::Power);
    u.gamma_ = gamma;
    return u;
  }

  [[nodiscard]] UtilityFamily family() const { return family_; }

  [[nodiscard]] double operator()(double wealth_usd) const {
    switch (family_) {
      case UtilityFamily::Linear:
        return wealth_usd;
      case UtilityFamily::LogShifted: {
        const double arg = wealth_usd + shift_usd_;
        if (!(arg > 0.0))
          throw Error(Errc::InvalidConfig,
                      "log utility undefined at wealth " +
                          std::to_string(wealth_usd) + " with shift " +
                          std::to_string(shift_usd_));
        return std::log(arg);
      }
      case UtilityFamily::ExponentialCara:
        return (1.0 - std::exp(-alpha_ * wealth_usd)) / alpha_;
      case UtilityFamily::Power:
        if (wealth_usd < 0.0)
          throw Error(Errc::InvalidConfig,
                      "power utility undefined at negative wealth " +
                          std::to_string(wealth_usd));
        return std::pow(wealth_usd, gamma_);
    }
    return wealth_usd;
  }

  /// Sampled monotonicity / concavity check on [lo, hi]. Returns violation
  /// messages (empty = passes). Concavity uses the midpoint test with a
  /// 1e-12 slack.
  [[nodiscard]] std::vector<std::string> check_shape(double lo, double hi,
                                                     int samples = 257) const {
    std::vector<std::string> out;
    if (!(hi > lo)) return out;
    const double step = (hi - lo) / (samples - 1);
    double prev = (*this)(lo);
    for (int i = 1; i < samples; ++i) {
      const double x = lo + step * i;
      const double y = (*this)(x);
      if (!(y >= prev))
        out.push_back("not monotone increasing near wealth " +
                      std::to_string(x));
      prev = y;
    }
    for (int i = 0; i + 2 < samples; i += 2) {
      const double x = lo + step * i;
      const double z = lo + step * (i + 2);
      const double mid = (*this)((x + z) / 2.0);
      const double chord = ((*this)(x) + (*this)(z)) / 2.0;
      if (!(mid >= chord - 1e-12))
        out.push_back("not concave near wealth " + std::to_string(x));
    }
    return out;
  }

  /// Shape check over the wealth values reachable in the game,
  /// [W-p-c-l, W-p+d].
  [[nodiscard]] std::vector<std::string> check_on_domain(
      const GameParams& g) const {
    const double lo =
        (g.wealth - g.premium - g.investment_cost - g.loss).usd();
    const double hi = (g.wealth - g.premium + g.discount).usd();
    return check_shape(lo, hi);
  }

  [[nodiscard]] std::string str() const {
    switch (family_) {
      case UtilityFamily::Linear: return "linear";
      case UtilityFamily::LogShifted:
        return "log_shifted:" + std::to_string(shift_usd_);
      case UtilityFamily::ExponentialCara:
        return "exp_cara:" + std::to_string(alpha_);
      case UtilityFamily::Power: return "power:" + std::to_string(gamma_);
    }
    return "linear";
  }

  /// Parses "linear", "log_shifted:SHIFT", "exp_cara:ALPHA", "power:GAMMA".
  static UtilitySpec parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string tail =
        colon == std::string::npos ? "" : text.substr(colon + 1);
    auto number = [&tail, &text]() {
      try {
        std::size_t pos = 0;
        const double v = std::stod(tail, &pos);
        if (pos != tail.size()) throw std::invalid_argument(tail);
        return v;
      } catch (const std::exception&) {
        throw Error(Errc::ParseError, "bad utility parameter in '" + text + "'");
      }
    };
    if (head == "linear") {
      if (!tail.empty())
        throw Error(Errc::ParseError, "linear utility takes no parameter");
      return linear();
    }
    if (head == "log_shifted") return log_shifted(Money::from_usd(number()));
    if (head == "exp_cara") return exponential_cara(number());
    if (head == "power") return power(number());
    throw Error(Errc::ParseError, "unknown utility family '" + head + "'");
  }

 private:
  explicit UtilitySpec(UtilityFamily f) : family_(f) {}

  UtilityFamily family_;
  double shift_usd_ = 0.0;
  double alpha_ = 0.0;
  double gamma_ = 0.0;
};

}  // namespace ciag
