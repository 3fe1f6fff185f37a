#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace ciag {

/// Currency amount stored as integer cents so that leaf payoffs and
/// aggregated sums stay exact. Convert to double dollars only at the
/// boundary where utilities or statistics are evaluated.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_cents(std::int64_t cents) {
    Money m;
    m.cents_ = cents;
    return m;
  }

  // Rounds to the nearest cent (ties away from zero, like llround).
  static Money from_usd(double usd) {
    return from_cents(std::llround(usd * 100.0));
  }

  [[nodiscard]] constexpr std::int64_t cents() const { return cents_; }
  [[nodiscard]] constexpr double usd() const {
    return static_cast<double>(cents_) / 100.0;
  }

  friend constexpr Money operator+(Money a, Money b) {
    return from_cents(a.cents_ + b.cents_);
  }
  friend constexpr Money operator-(Money a, Money b) {
    return from_cents(a.cents_ - b.cents_);
  }
  constexpr Money operator-() const { return from_cents(-cents_); }
  constexpr Money& operator+=(Money o) {
    cents_ += o.cents_;
    return *this;
  }
  constexpr Money& operator-=(Money o) {
    cents_ -= o.cents_;
    return *this;
  }

  friend constexpr auto operator<=>(Money, Money) = default;

  /// Exact decimal rendering, e.g. "-171551.50".
  [[nodiscard]] std::string str() const {
    const std::int64_t c = cents_ < 0 ? -cents_ : cents_;
    std::string s = cents_ < 0 ? "-" : "";
    s += std::to_string(c / 100);
    const std::int64_t frac = c % 100;
    s += '.';
    s += static_cast<char>('0' + frac / 10);
    s += static_cast<char>('0' + frac % 10);
    return s;
  }

 private:
  std::int64_t cents_ = 0;
};

constexpr Money operator""_cents(unsigned long long c) {
  return Money::from_cents(static_cast<std::int64_t>(c));
}

}  // namespace ciag
