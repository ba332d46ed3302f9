#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "half_int.hpp"

namespace liecontract {

// Weight basis label |j, m>.
struct BasisState {
  HalfInt j;
  HalfInt m;

  // j >= 0, |m| <= j, and j - m integral (same parity of twice()).
  constexpr bool valid() const {
    return j.twice() >= 0 && abs(m) <= j && (j - m).integral();
  }
  constexpr auto operator<=>(const BasisState&) const = default;
};

inline std::string to_string(const BasisState& s) {
  return "(" + to_string(s.j) + ", " + to_string(s.m) + ")";
}

// Number of states in shells j0..jtop: sum of (2j+1) = (jtop+1)^2 - j0^2,
// always an integer for an integral gap.
inline std::int64_t dim_between(HalfInt j0, HalfInt jtop) {
  std::int64_t t0 = j0.twice(), tt = jtop.twice();
  return ((tt + 2) * (tt + 2) - t0 * t0) / 4;
}

// Contiguous tower of shells j0, j0+1, ..., jtop ordered lexicographically by
// (j ascending, m ascending). Index arithmetic is exact integer throughout.
class BasisIndex {
 public:
  BasisIndex(HalfInt j0, HalfInt jtop) : j0_(j0), jtop_(jtop) {
    if (j0.twice() < 0)
      throw ParameterError("lowest shell j0 = " + to_string(j0) + " is negative");
    if (jtop < j0 || !(jtop - j0).integral())
      throw ParameterError("shell range " + to_string(j0) + ".." + to_string(jtop) +
                           " is not a tower of integer steps");
  }

  HalfInt j0() const { return j0_; }
  HalfInt jtop() const { return jtop_; }
  std::int64_t size() const { return dim_between(j0_, jtop_); }

  bool contains(const BasisState& s) const {
    return s.valid() && s.j >= j0_ && s.j <= jtop_ && (s.j - j0_).integral();
  }

  std::int64_t index_of(const BasisState& s) const {
    if (!contains(s))
      throw LookupError("state " + to_string(s) + " is outside the (" + to_string(j0_) +
                        ", " + to_string(jtop_) + ") basis");
    std::int64_t tj = s.j.twice(), t0 = j0_.twice(), tm = s.m.twice();
    return (tj * tj - t0 * t0) / 4 + (tm + tj) / 2;
  }

  BasisState state_at(std::int64_t i) const {
    if (i < 0 || i >= size())
      throw LookupError("ordinal " + std::to_string(i) + " is outside the basis of size " +
                        std::to_string(size()));
    // Shell s (j = j0 + s) starts at offset s*(s + 2*j0); binary search the
    // largest shell whose offset does not exceed i.
    std::int64_t t0 = j0_.twice();
    std::int64_t lo = 0, hi = (jtop_ - j0_).twice() / 2;
    while (lo < hi) {
      std::int64_t mid = (lo + hi + 1) / 2;
      if (mid * (mid + t0) <= i)
        lo = mid;
      else
        hi = mid - 1;
    }
    std::int64_t tj = t0 + 2 * lo;
    std::int64_t pos = i - lo * (lo + t0);
    return BasisState{HalfInt::from_twice(tj), HalfInt::from_twice(-tj + 2 * pos)};
  }

  std::vector<BasisState> states() const {
    std::vector<BasisState> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (HalfInt j = j0_; j <= jtop_; j = j + 1)
      for (HalfInt m = -j; m <= j; m = m + 1) out.push_back({j, m});
    return out;
  }

 private:
  HalfInt j0_;
  HalfInt jtop_;
};

inline std::vector<BasisState> enumerate_basis(HalfInt j0, HalfInt jtop) {
  return BasisIndex(j0, jtop).states();
}

}  // namespace liecontract
