#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "wpl/errors.hpp"

namespace wpl {

// A slope d/r in lowest terms with r >= 0; infinity is (1, 0).
class Slope {
 public:
  constexpr Slope() = default;

  static Slope make(std::int64_t d, std::int64_t r) {
    if (r < 0) throw SlopeParseError("slope denominator must be nonnegative");
    if (r == 0) {
      if (d <= 0) throw SlopeParseError("infinite slope must be written 1/0 or inf");
      return infinity();
    }
    const std::int64_t g = std::gcd(d < 0 ? -d : d, r);
    return Slope(d / g, r / g);
  }
  static constexpr Slope infinity() { return Slope(1, 0); }
  static constexpr Slope integer(std::int64_t n) { return Slope(n, 1); }

  constexpr std::int64_t num() const { return d_; }
  constexpr std::int64_t den() const { return r_; }
  constexpr bool is_infinite() const { return r_ == 0; }

  friend constexpr bool operator==(const Slope&, const Slope&) = default;
  friend constexpr std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() <=> b.is_infinite();
    }
    return (a.d_ * b.r_) <=> (b.d_ * a.r_);
  }

  std::string str() const {
    if (is_infinite()) return "inf";
    if (r_ == 1) return std::to_string(d_);
    return std::to_string(d_) + "/" + std::to_string(r_);
  }

  // Accepts "inf", "n" or "d/r" (optionally signed numerator).
  static Slope parse(const std::string& text) {
    if (text == "inf") return infinity();
    const auto slash = text.find('/');
    auto to_int = [&](const std::string& s) -> std::int64_t {
      if (s.empty()) throw SlopeParseError("malformed slope '" + text + "'");
      std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (i == s.size()) throw SlopeParseError("malformed slope '" + text + "'");
      for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') throw SlopeParseError("malformed slope '" + text + "'");
      }
      try {
        return std::stoll(s);
      } catch (const std::out_of_range&) {
        throw SlopeParseError("slope out of range '" + text + "'");
      }
    };
    if (slash == std::string::npos) return integer(to_int(text));
    const std::int64_t d = to_int(text.substr(0, slash));
    const std::int64_t r = to_int(text.substr(slash + 1));
    if (r == 0 && d == 0) throw SlopeParseError("0/0 is not a slope");
    return make(d, r);
  }

 private:
  constexpr Slope(std::int64_t d, std::int64_t r) : d_(d), r_(r) {}
  std::int64_t d_ = 0;
  std::int64_t r_ = 1;
};

}  // namespace wpl
