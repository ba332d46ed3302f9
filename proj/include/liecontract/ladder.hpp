#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "basis.hpp"

namespace liecontract {

using Complex = std::complex<double>;

enum class LadderKind { Three, Plus, Minus };

namespace detail {

// Exact integer product of two integral half-integers, as a double.
inline double iprod(HalfInt a, HalfInt b) {
  return static_cast<double>(as_int(a) * as_int(b));
}

// sqrt((j -+ m)(j +- m + 1)): raising (dir=+1) / lowering (dir=-1) within a shell.
inline double inshell_factor(HalfInt j, HalfInt m, int dir) {
  HalfInt a = (dir > 0) ? j - m : j + m;
  HalfInt b = (dir > 0) ? j + m + 1 : j - m + 1;
  return std::sqrt(iprod(a, b));
}

// m-independent-direction factor of the shell-coupling terms:
// dj=-1: sqrt((j+m)(j-m)),  dj=+1: sqrt((j+m+1)(j-m+1)).
inline double shell_m0_factor(HalfInt j, HalfInt m, int dj) {
  if (dj < 0) return std::sqrt(iprod(j + m, j - m));
  return std::sqrt(iprod(j + m + 1, j - m + 1));
}

// Shell-coupling factor with a simultaneous m shift (dir = +-1):
// dj=-1: sqrt((j -+ m)(j -+ m - 1)),  dj=+1: sqrt((j +- m + 1)(j +- m + 2)).
inline double shell_shift_factor(HalfInt j, HalfInt m, int dj, int dir) {
  if (dj < 0) {
    HalfInt a = (dir > 0) ? j - m : j + m;
    return std::sqrt(iprod(a, a - 1));
  }
  HalfInt a = (dir > 0) ? j + m : j - m;
  return std::sqrt(iprod(a + 1, a + 2));
}

using ActTerms = std::vector<std::pair<BasisState, Complex>>;

inline void push_term(std::map<BasisState, Complex>& acc, BasisState s, Complex a) {
  if (a == Complex(0.0, 0.0)) return;
  acc[s] += a;
}

inline ActTerms collect(std::map<BasisState, Complex>&& acc) {
  ActTerms out;
  out.reserve(acc.size());
  for (auto& [s, a] : acc)
    if (a != Complex(0.0, 0.0)) out.emplace_back(s, a);
  return out;
}

// Action of a rotation-family ladder generator (M or J) on |j,m>:
//   X3 |j,m> = m |j,m>,  X+- |j,m> = sqrt((j -+ m)(j +- m + 1)) |j, m +- 1>.
inline ActTerms rotation_action(LadderKind k, BasisState s) {
  std::map<BasisState, Complex> acc;
  if (k == LadderKind::Three) {
    push_term(acc, s, s.m.value());
  } else {
    int dir = (k == LadderKind::Plus) ? +1 : -1;
    push_term(acc, {s.j, s.m + HalfInt::from_twice(2 * dir)}, inshell_factor(s.j, s.m, dir));
  }
  return collect(std::move(acc));
}

// Action of a boost-family ladder generator (N or P) on |j,m>, with shell
// couplings alpha(j) (j <-> j-1) and beta(j) (within shell):
//   X3 |j,m> = alpha(j) sqrt((j+m)(j-m)) |j-1,m> + beta(j) m |j,m>
//              + alpha(j+1) sqrt((j+m+1)(j-m+1)) |j+1,m>
//   X+-|j,m> = +- alpha(j) sqrt((j -+ m)(j -+ m - 1)) |j-1, m +- 1>
//              + beta(j) sqrt((j -+ m)(j +- m + 1)) |j, m +- 1>
//              -+ alpha(j+1) sqrt((j +- m + 1)(j +- m + 2)) |j+1, m +- 1>
// The callables must be defined at j and j+1; pinned zeros at the edges of the
// representation make out-of-range targets vanish identically.
template <class AlphaFn, class BetaFn>
ActTerms boost_action(LadderKind k, BasisState s, AlphaFn&& alpha, BetaFn&& beta) {
  std::map<BasisState, Complex> acc;
  HalfInt j = s.j, m = s.m;
  if (k == LadderKind::Three) {
    push_term(acc, {j - 1, m}, alpha(j) * shell_m0_factor(j, m, -1));
    push_term(acc, {j, m}, beta(j) * m.value());
    push_term(acc, {j + 1, m}, alpha(j + 1) * shell_m0_factor(j, m, +1));
  } else {
    int dir = (k == LadderKind::Plus) ? +1 : -1;
    HalfInt m2 = m + HalfInt::from_twice(2 * dir);
    push_term(acc, {j - 1, m2}, dir * alpha(j) * shell_shift_factor(j, m, -1, dir));
    push_term(acc, {j, m2}, beta(j) * inshell_factor(j, m, dir));
    push_term(acc, {j + 1, m2}, -dir * alpha(j + 1) * shell_shift_factor(j, m, +1, dir));
  }
  return collect(std::move(acc));
}

// Cartesian components in terms of the ladder pair:
//   X1 = (X+ + X-)/2,  X2 = (X+ - X-)/(2i) = -i/2 X+ + i/2 X-.
inline std::pair<Complex, Complex> cartesian_weights(int axis) {
  if (axis == 1) return {Complex(0.5, 0.0), Complex(0.5, 0.0)};
  return {Complex(0.0, -0.5), Complex(0.0, 0.5)};
}

inline ActTerms weighted_sum(const ActTerms& a, Complex wa, const ActTerms& b, Complex wb) {
  std::map<BasisState, Complex> acc;
  for (const auto& [s, v] : a) push_term(acc, s, wa * v);
  for (const auto& [s, v] : b) push_term(acc, s, wb * v);
  return collect(std::move(acc));
}

}  // namespace detail
}  // namespace liecontract
