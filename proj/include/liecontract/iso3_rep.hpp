#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "basis.hpp"
#include "errors.hpp"
#include "ladder.hpp"
#include "rep_matrix.hpp"

namespace liecontract {

// Labels of an irreducible representation of iso(3) on the infinite shell
// tower j = j0, j0+1, .... Invariants: P^2 = p2 * I and J.P = C * I with
// C = sign * j0 * sqrt(p2); sign = 0 exactly when j0 = 0.
struct Iso3Params {
  double p2;
  HalfInt j0;
  int sign;

  static Iso3Params make(double p2, HalfInt j0, int sign) {
    if (!(p2 > 0.0) || !std::isfinite(p2))
      throw ParameterError("p2 must be a finite positive real");
    if (j0.twice() < 0)
      throw ParameterError("j0 = " + to_string(j0) + " must be >= 0");
    if (sign < -1 || sign > 1)
      throw ParameterError("sign must be -1, 0 or +1");
    if ((j0.twice() == 0) != (sign == 0))
      throw ParameterError("sign must be 0 exactly when j0 = 0 (C = sign*j0*sqrt(p2))");
    return Iso3Params{p2, j0, sign};
  }

  // Recover labels from the invariant pair (p2, C). Rejects a C whose
  // |C|/sqrt(p2) is farther than tol from the half-integer lattice.
  static Iso3Params from_invariants(double p2, double C, double tol = 1e-9) {
    if (!(p2 > 0.0) || !std::isfinite(p2))
      throw ParameterError("p2 must be a finite positive real");
    if (!std::isfinite(C)) throw ParameterError("C must be finite");
    double j0v = std::fabs(C) / std::sqrt(p2);
    std::int64_t twice = static_cast<std::int64_t>(std::llround(2.0 * j0v));
    if (std::fabs(j0v - static_cast<double>(twice) / 2.0) > tol)
      throw AdmissibilityError("no representation with these invariants: |C|/sqrt(p2) = " +
                               std::to_string(j0v) + " is not a half-integer");
    int sign = (twice == 0) ? 0 : (C > 0.0 ? 1 : -1);
    return Iso3Params{p2, HalfInt::from_twice(twice), sign};
  }

  double C() const { return static_cast<double>(sign) * j0.value() * std::sqrt(p2); }

  bool operator==(const Iso3Params&) const = default;
};

// Shell-coupling coefficient for j > j0 (0 at j = j0):
//   alpha~_j = sqrt( p2 (j^2 - j0^2) / (j^2 (2j+1)(2j-1)) ).
inline double tilde_alpha(const Iso3Params& q, HalfInt j) {
  if (j < q.j0 || !(j - q.j0).integral())
    throw ParameterError("tilde_alpha is defined on the shell lattice j0, j0+1, ..., got j = " +
                         to_string(j));
  if (j == q.j0) return 0.0;
  std::int64_t tj = j.twice(), t0 = q.j0.twice();
  double num = q.p2 * static_cast<double>(tj * tj - t0 * t0);
  double den = static_cast<double>(tj * tj) * static_cast<double>(tj * tj - 1);
  return std::sqrt(num / den);
}

// Within-shell coefficient beta~_j = C / (j(j+1)), 0 at j = 0.
inline double tilde_beta(const Iso3Params& q, HalfInt j) {
  if (j < q.j0 || !(j - q.j0).integral())
    throw ParameterError("tilde_beta is defined on the shell lattice j0, j0+1, ..., got j = " +
                         to_string(j));
  std::int64_t tj = j.twice();
  if (tj == 0) return 0.0;
  return q.C() / (static_cast<double>(tj * (tj + 2)) / 4.0);
}

// Action of J1..J3, P1..P3, J+-, P+- on a basis state of the infinite tower.
// Same shape as the so(4) action with (alpha, beta) -> (alpha~, beta~) and no
// top shell.
inline std::vector<std::pair<BasisState, Complex>> act(const Iso3Params& q, GeneratorId g,
                                                       BasisState s) {
  if (!is_iso3_side(g))
    throw ParameterError(std::string("generator ") + short_name(g) +
                         " does not act on an iso(3) representation");
  if (!s.valid() || s.j < q.j0 || !(s.j - q.j0).integral())
    throw ParameterError("state " + to_string(s) + " is outside the shell tower above j0 = " +
                         to_string(q.j0));
  auto alpha_fn = [&q](HalfInt j) { return tilde_alpha(q, j); };
  auto beta_fn = [&q](HalfInt j) { return tilde_beta(q, j); };
  bool boost = is_boost(g);
  auto one = [&](LadderKind k) {
    return boost ? detail::boost_action(k, s, alpha_fn, beta_fn)
                 : detail::rotation_action(k, s);
  };
  switch (form_of(g)) {
    case GenForm::Axis3: return one(LadderKind::Three);
    case GenForm::Plus: return one(LadderKind::Plus);
    case GenForm::Minus: return one(LadderKind::Minus);
    case GenForm::Axis1:
    case GenForm::Axis2: {
      auto [wp, wm] = detail::cartesian_weights(form_of(g) == GenForm::Axis1 ? 1 : 2);
      return detail::weighted_sum(one(LadderKind::Plus), wp, one(LadderKind::Minus), wm);
    }
  }
  return {};
}

// Finite window j0..jtop of the infinite tower. Couplings out of the window
// are discarded symmetrically, so matrices stay Hermitian and every matrix
// element between interior shells (j <= jtop - 1) is exact.
struct TruncatedRep {
  Iso3Params params;
  HalfInt jtop;

  // jmax off the shell lattice is snapped down to the largest admissible shell.
  static TruncatedRep make(const Iso3Params& q, HalfInt jmax) {
    if (jmax < q.j0)
      throw ParameterError("jmax = " + to_string(jmax) + " is below the lowest shell j0 = " +
                           to_string(q.j0));
    HalfInt top = jmax;
    if (!(jmax - q.j0).integral()) top = HalfInt::from_twice(jmax.twice() - 1);
    return TruncatedRep{q, top};
  }

  BasisIndex basis() const { return BasisIndex(params.j0, jtop); }
  std::int64_t dim() const { return dim_between(params.j0, jtop); }
};

inline RepMatrix truncated_matrix(const TruncatedRep& t, const AlgebraElement& x,
                                  std::int64_t max_dim = kDefaultMaxDim) {
  std::int64_t d = t.dim();
  if (d > max_dim)
    throw ResourceError("truncated dimension " + std::to_string(d) + " exceeds the cap " +
                        std::to_string(max_dim));
  BasisIndex basis = t.basis();
  std::vector<BasisState> states = basis.states();
  std::vector<Triplet> ts;
  for (std::int64_t col = 0; col < d; ++col) {
    for (const auto& [g, cf] : x.terms()) {
      for (const auto& [target, amp] : act(t.params, g, states[static_cast<std::size_t>(col)]))
        if (basis.contains(target)) ts.push_back({basis.index_of(target), col, cf * amp});
    }
  }
  return RepMatrix::from_triplets(d, std::move(ts));
}

inline RepMatrix truncated_matrix(const TruncatedRep& t, GeneratorId g,
                                  std::int64_t max_dim = kDefaultMaxDim) {
  return truncated_matrix(t, AlgebraElement(g), max_dim);
}

struct InteriorCasimirResiduals {
  double p2_residual;  // max |(sum P_i^2 - p2 I)(r, c)| over interior rows r
  double jp_residual;  // max |(sum J_i P_i - C I)(r, c)| over interior rows r
};

// Casimir identities hold exactly on rows below the truncation shell; the top
// shell absorbs all truncation error.
inline InteriorCasimirResiduals casimir_interior_check(const TruncatedRep& t,
                                                       std::int64_t max_dim = kDefaultMaxDim) {
  if (t.jtop < t.params.j0 + 1)
    throw ParameterError("interior check needs at least two shells (jtop >= j0 + 1)");
  const GeneratorId js[3] = {GeneratorId::J1, GeneratorId::J2, GeneratorId::J3};
  const GeneratorId ps[3] = {GeneratorId::P1, GeneratorId::P2, GeneratorId::P3};
  RepMatrix p2sum = RepMatrix::zero(t.dim());
  RepMatrix jpsum = RepMatrix::zero(t.dim());
  for (int i = 0; i < 3; ++i) {
    RepMatrix pj = truncated_matrix(t, ps[i], max_dim);
    p2sum = p2sum + matmul(pj, pj);
    jpsum = jpsum + matmul(truncated_matrix(t, js[i], max_dim), pj);
  }
  std::vector<BasisState> states = t.basis().states();
  HalfInt interior_top = t.jtop - 1;
  auto interior = [&states, interior_top](std::int64_t r) {
    return states[static_cast<std::size_t>(r)].j <= interior_top;
  };
  return InteriorCasimirResiduals{
      scalar_deviation(p2sum, Complex(t.params.p2, 0.0), interior),
      scalar_deviation(jpsum, Complex(t.params.C(), 0.0), interior)};
}

}  // namespace liecontract
