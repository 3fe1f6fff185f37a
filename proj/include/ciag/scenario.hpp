#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ciag/errors.hpp"
#include "ciag/montecarlo.hpp"
#include "ciag/params.hpp"
#include "ciag/utility.hpp"

namespace ciag {

/// A fully resolved experiment description: game parameters plus simulation
/// settings. Sweep axis/values and output paths are command-line concerns
/// layered on top.
struct Scenario {
  SimulationConfig config;
};

/// The built-in calibrated scenario: median breach loss $170k, breach
/// frequency 0.015 cut by 80% when invested, firewall cost $2,960, premium
/// $3,630 with a 5% discount, audit cost $5k, wealth $1M, neutral prior.
inline Scenario paper_default_scenario() {
  Scenario s;
  s.config.params = GameParams::from_usd(
      /*audit_cost=*/5000, /*investment_cost=*/2960, /*discount=*/181.50,
      /*loss=*/170000, /*premium=*/3630, /*wealth=*/1000000,
      /*breach_prob=*/0.015, /*breach_prob_invested=*/0.003, /*prior=*/0.5);
  return s;
}

inline Scenario lookup_preset(const std::string& name) {
  if (name == "paper-default") return paper_default_scenario();
  throw Error(Errc::ParseError, "unknown preset '" + name + "'");
}

namespace scenario_detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline double parse_number(const std::string& value, const std::string& key,
                           int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "line " + std::to_string(line) +
                                      ": key '" + key +
                                      "' needs a number, got '" + value + "'");
  }
}

inline bool parse_bool(const std::string& value, const std::string& key,
                       int line) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": key '" +
                                    key + "' needs true or false, got '" +
                                    value + "'");
}

}  // namespace scenario_detail

/// Parses the flat key/value scenario format ("key: value" per line, '#'
/// comments). Unknown and duplicate keys are rejected. With a base scenario
/// every key is optional and overrides the base; without one the game
/// parameters are required.
inline Scenario parse_scenario(std::string_view text,
                               const std::optional<Scenario>& base =
                                   std::nullopt) {
  using scenario_detail::parse_bool;
  using scenario_detail::parse_number;
  using scenario_detail::trim;

  static const std::set<std::string> known = {
      "audit_cost",   "investment_cost",
      "discount",     "discount_pct",
      "loss",         "premium",
      "wealth",       "breach_prob",
      "breach_prob_invested", "effectiveness_pct",
      "prior",        "utility",
      "repetitions",  "seed",
      "models",       "common_random_numbers",
  };

  std::map<std::string, std::string> kv;
  std::map<std::string, int> key_line;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view raw = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos
                                            : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;

    const std::size_t colon = stripped.find(':');
    if (colon == std::string::npos)
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) +
                                        ": expected 'key: value'");
    const std::string key = trim(std::string_view(stripped).substr(0, colon));
    const std::string value =
        trim(std::string_view(stripped).substr(colon + 1));
    if (!known.count(key))
      throw Error(Errc::ParseError,
                  "line " + std::to_string(line_no) + ": unknown key '" + key +
                      "'");
    if (kv.count(key))
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) +
                                        ": duplicate key '" + key + "'");
    if (value.empty())
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) +
                                        ": empty value for '" + key + "'");
    kv[key] = value;
    key_line[key] = line_no;
  }

  if (kv.count("discount") && kv.count("discount_pct"))
    throw Error(Errc::ParseError,
                "give either 'discount' or 'discount_pct', not both");
  if (kv.count("breach_prob_invested") && kv.count("effectiveness_pct"))
    throw Error(Errc::ParseError,
                "give either 'breach_prob_invested' or 'effectiveness_pct', "
                "not both");

  if (!base.has_value()) {
    static const std::vector<std::pair<std::string, std::string>> required = {
        {"audit_cost", "audit_cost"},
        {"investment_cost", "investment_cost"},
        {"loss", "loss"},
        {"premium", "premium"},
        {"breach_prob", "breach_prob"},
    };
    for (const auto& [key, field] : required)
      if (!kv.count(key))
        throw Error(Errc::ValidationError,
                    "missing required key: " + field);
    if (!kv.count("discount") && !kv.count("discount_pct"))
      throw Error(Errc::ValidationError, "missing required key: discount");
    if (!kv.count("breach_prob_invested") && !kv.count("effectiveness_pct"))
      throw Error(Errc::ValidationError,
                  "missing required key: breach_prob_invested");
  }

  Scenario s = base.value_or(Scenario{});
  if (!base.has_value()) {
    // Artifact defaults for the optional fields.
    s.config.params.wealth = Money::from_usd(1000000);
    s.config.params.prior = 0.5;
  }
  SimulationConfig& cfg = s.config;
  GameParams& g = cfg.params;

  auto number = [&](const std::string& key) {
    return parse_number(kv.at(key), key, key_line.at(key));
  };

  if (kv.count("audit_cost")) g.audit_cost = Money::from_usd(number("audit_cost"));
  if (kv.count("investment_cost"))
    g.investment_cost = Money::from_usd(number("investment_cost"));
  if (kv.count("loss")) g.loss = Money::from_usd(number("loss"));
  if (kv.count("premium")) g.premium = Money::from_usd(number("premium"));
  if (kv.count("wealth")) g.wealth = Money::from_usd(number("wealth"));
  if (kv.count("breach_prob")) g.breach_prob = number("breach_prob");
  if (kv.count("prior")) g.prior = number("prior");

  if (kv.count("discount")) g.discount = Money::from_usd(number("discount"));
  if (kv.count("discount_pct"))
    g.discount = Money::from_usd(number("discount_pct") / 100.0 *
                                 g.premium.usd());

  if (kv.count("breach_prob_invested"))
    g.breach_prob_invested = number("breach_prob_invested");
  if (kv.count("effectiveness_pct"))
    g.breach_prob_invested =
        (1.0 - number("effectiveness_pct") / 100.0) * g.breach_prob;

  if (kv.count("utility")) cfg.utility = UtilitySpec::parse(kv.at("utility"));
  if (kv.count("repetitions")) {
    const double r = number("repetitions");
    if (r < 1 || r != std::floor(r))
      throw Error(Errc::ValidationError,
                  "repetitions must be a positive integer");
    cfg.repetitions = static_cast<std::int64_t>(r);
  }
  if (kv.count("seed")) {
    const std::string& v = kv.at("seed");
    try {
      std::size_t pos = 0;
      cfg.master_seed = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "line " + std::to_string(key_line.at("seed")) +
                                        ": seed needs an unsigned integer");
    }
  }
  if (kv.count("models")) {
    cfg.models.clear();
    const std::string& v = kv.at("models");
    std::size_t b = 0;
    while (b <= v.size()) {
      const std::size_t comma = v.find(',', b);
      const std::string tok = scenario_detail::trim(
          std::string_view(v).substr(b, comma == std::string::npos
                                            ? std::string::npos
                                            : comma - b));
      if (!tok.empty()) cfg.models.push_back(parse_model(tok));
      if (comma == std::string::npos) break;
      b = comma + 1;
    }
    if (cfg.models.empty())
      throw Error(Errc::ValidationError, "models must name at least one model");
    for (std::size_t i = 0; i < cfg.models.size(); ++i)
      for (std::size_t j = i + 1; j < cfg.models.size(); ++j)
        if (cfg.models[i] == cfg.models[j])
          throw Error(Errc::ValidationError,
                      std::string("duplicate model ") +
                          model_name(cfg.models[i]));
  }
  if (kv.count("common_random_numbers"))
    cfg.common_random_numbers =
        parse_bool(kv.at("common_random_numbers"), "common_random_numbers",
                   key_line.at("common_random_numbers"));

  const ValidationReport report = validate_params(g);
  if (!report.valid())
    throw Error(Errc::ValidationError, report.joined());

  // A utility undefined somewhere on the reachable wealth range is a
  // mis-specified scenario, not a runtime surprise.
  try {
    const auto shape = cfg.utility.check_on_domain(g);
    if (!shape.empty())
      throw Error(Errc::ValidationError, "utility: " + shape.front());
  } catch (const Error& e) {
    if (e.code() == Errc::ValidationError) throw;
    throw Error(Errc::ValidationError,
                std::string("utility undefined on reachable wealth: ") +
                    e.what());
  }

  return s;
}

}  // namespace ciag
