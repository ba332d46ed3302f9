#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace liecontract {

// Exact half-integer label (j, m, j0, n, k, l). Stores twice the value as a
// signed integer, so arithmetic and comparisons never round.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int whole) : twice_(2LL * whole) {}  // implicit: j + 1 etc.

  static constexpr HalfInt from_twice(std::int64_t t) {
    HalfInt h;
    h.twice_ = t;
    return h;
  }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool integral() const { return twice_ % 2 == 0; }
  constexpr double value() const { return static_cast<double>(twice_) / 2.0; }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return from_twice(a.twice_ + b.twice_);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return from_twice(a.twice_ - b.twice_);
  }
  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  friend constexpr HalfInt operator*(std::int64_t s, HalfInt h) {
    return from_twice(s * h.twice_);
  }
  constexpr auto operator<=>(const HalfInt&) const = default;

 private:
  std::int64_t twice_ = 0;
};

// numerator/2, e.g. half(3) == 3/2.
constexpr HalfInt half(std::int64_t numerator) { return HalfInt::from_twice(numerator); }

constexpr HalfInt abs(HalfInt h) {
  return HalfInt::from_twice(h.twice() < 0 ? -h.twice() : h.twice());
}

// Compact exact rendering: "2", "-1", "1.5", "-0.5".
inline std::string to_string(HalfInt h) {
  std::int64_t t = h.twice();
  if (t % 2 == 0) return std::to_string(t / 2);
  std::string s = (t < 0) ? "-" : "";
  std::int64_t a = (t < 0) ? -t : t;
  return s + std::to_string(a / 2) + ".5";
}

// Exact integer value; the argument must be integral.
inline std::int64_t as_int(HalfInt h) {
  if (!h.integral())
    throw ParameterError("half-integer " + to_string(h) + " is not integral");
  return h.twice() / 2;
}

// Accepts "3", "-2", "1.5", "0.5", "3/2", "-3/2". Anything that is not an exact
// half-integer (within 1e-9 for decimal input) is rejected.
inline HalfInt parse_half_int(const std::string& text) {
  const std::string what = "cannot parse '" + text + "' as a half-integer";
  if (text.empty()) throw ParameterError(what);
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t n1 = 0, n2 = 0;
      std::int64_t num = std::stoll(text.substr(0, slash), &n1);
      std::int64_t den = std::stoll(text.substr(slash + 1), &n2);
      if (n1 != slash || n2 != text.size() - slash - 1 || den == 0)
        throw ParameterError(what);
      if ((2 * num) % den != 0) throw ParameterError(what);
      return HalfInt::from_twice(2 * num / den);
    }
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw ParameterError(what);
    double t = 2.0 * v;
    std::int64_t rt = static_cast<std::int64_t>(std::llround(t));
    if (std::fabs(t - static_cast<double>(rt)) > 1e-9) throw ParameterError(what);
    return HalfInt::from_twice(rt);
  } catch (const std::invalid_argument&) {
    throw ParameterError(what);
  } catch (const std::out_of_range&) {
    throw ParameterError(what);
  }
}

}  // namespace liecontract
