#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "basis.hpp"
#include "errors.hpp"
#include "ladder.hpp"
#include "rep_matrix.hpp"

namespace liecontract {

// Labels of an irreducible skew-Hermitian representation of so(4) on the shell
// tower j = j0..n. The invariants are carried by (j0, n, sign):
//   G = M.N   = sign * j0 * (n+1)      (sign = 0 exactly when j0 = 0)
//   F = (M^2 + N^2)/2 = (j0^2 + (n+1)^2 - 1)/2
// Both are dyadic rationals of the labels and evaluate exactly in doubles.
struct So4Params {
  HalfInt j0;
  HalfInt n;
  int sign;  // -1, 0, +1

  static So4Params make(HalfInt j0, HalfInt n, int sign) {
    if (j0.twice() < 0)
      throw ParameterError("j0 = " + to_string(j0) + " must be >= 0");
    if (n < j0 || !(n - j0).integral())
      throw ParameterError("n = " + to_string(n) + " must lie in j0 + {0, 1, 2, ...}");
    if (sign < -1 || sign > 1)
      throw ParameterError("sign must be -1, 0 or +1");
    if ((j0.twice() == 0) != (sign == 0))
      throw ParameterError("sign must be 0 exactly when j0 = 0 (G = sign*j0*(n+1))");
    return So4Params{j0, n, sign};
  }

  double G() const {
    std::int64_t num = j0.twice() * (n.twice() + 2);  // 4*j0*(n+1)
    return static_cast<double>(sign) * static_cast<double>(num) / 4.0;
  }

  double F() const {
    std::int64_t t0 = j0.twice(), tn = n.twice();
    std::int64_t num = t0 * t0 + (tn + 2) * (tn + 2) - 4;  // 8*F
    return static_cast<double>(num) / 8.0;
  }

  std::int64_t dim() const { return dim_between(j0, n); }
  BasisIndex basis() const { return BasisIndex(j0, n); }

  bool operator==(const So4Params&) const = default;
};

// Highest weights of the two commuting so(3) copies acting on the same space.
struct KlPair {
  HalfInt k;
  HalfInt l;
  bool operator==(const KlPair&) const = default;
};

// Dictionary (k, l) -> (j0, n, sign): j0 = |k - l|, n = k + l, sign = sgn(k - l).
// Then G = k(k+1) - l(l+1) and F = k(k+1) + l(l+1) automatically.
inline So4Params params_from_kl(KlPair kl) {
  if (kl.k.twice() < 0 || kl.l.twice() < 0)
    throw ParameterError("k and l must be >= 0");
  int sign = (kl.k > kl.l) - (kl.k < kl.l);
  return So4Params::make(abs(kl.k - kl.l), kl.k + kl.l, sign);
}

// Inverse dictionary, branch picked by sign(G):
//   G > 0: (k, l) = ((n + j0)/2, (n - j0)/2);  G < 0: swapped;  G = 0: k = l = n/2.
inline KlPair kl_from_params(const So4Params& p) {
  std::int64_t hi = (p.n.twice() + p.j0.twice()) / 2;  // twice (n + j0)/2; n +- j0 is integral
  std::int64_t lo = (p.n.twice() - p.j0.twice()) / 2;
  if (p.sign >= 0) return KlPair{HalfInt::from_twice(hi), HalfInt::from_twice(lo)};
  return KlPair{HalfInt::from_twice(lo), HalfInt::from_twice(hi)};
}

// Shell-coupling coefficient alpha_j for j0 <= j <= n+1, in the factored form
//   alpha_j = sqrt( (j^2 - j0^2) ((n+1)^2 - j^2) / (j^2 (2j+1)(2j-1)) ),
// with alpha_{j0} pinned to 0 (covers the j0 = 0 indeterminate case) and
// alpha_{n+1} = 0 through the vanishing second factor. Strictly positive on
// j0 < j <= n, so it never flips the phase convention.
inline double alpha(const So4Params& p, HalfInt j) {
  if (j < p.j0 || j > p.n + 1 || !(j - p.j0).integral())
    throw ParameterError("alpha is defined for j in j0..n+1 on the shell lattice, got j = " +
                         to_string(j));
  if (j == p.j0) return 0.0;
  std::int64_t tj = j.twice(), t0 = p.j0.twice(), tn2 = p.n.twice() + 2;
  double num = static_cast<double>(tj * tj - t0 * t0) * static_cast<double>(tn2 * tn2 - tj * tj);
  double den = 4.0 * static_cast<double>(tj * tj) * static_cast<double>(tj * tj - 1);
  return std::sqrt(num / den);
}

// Within-shell coefficient beta_j = G / (j(j+1)), with beta_0 pinned to 0.
inline double beta(const So4Params& p, HalfInt j) {
  if (j < p.j0 || j > p.n || !(j - p.j0).integral())
    throw ParameterError("beta is defined for j in j0..n on the shell lattice, got j = " +
                         to_string(j));
  std::int64_t tj = j.twice();
  if (tj == 0) return 0.0;
  return p.G() / (static_cast<double>(tj * (tj + 2)) / 4.0);
}

// Action of a single generator (M1..M3, N1..N3, M+-, N+-) on a basis state.
// Returned terms are merged, sorted by target state, and never carry an exact
// zero; targets outside the (j0, n) tower vanish identically and are omitted.
inline std::vector<std::pair<BasisState, Complex>> act(const So4Params& p, GeneratorId g,
                                                       BasisState s) {
  if (!is_so4_side(g))
    throw ParameterError(std::string("generator ") + short_name(g) +
                         " does not act on an so(4) representation");
  if (!p.basis().contains(s))
    throw ParameterError("state " + to_string(s) + " is outside the (" + to_string(p.j0) +
                         ", " + to_string(p.n) + ") basis");
  auto alpha_fn = [&p](HalfInt j) { return alpha(p, j); };
  auto beta_fn = [&p](HalfInt j) { return beta(p, j); };
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

// Sparse matrix of an algebra element in the lexicographic (j, m) basis.
inline RepMatrix matrix(const So4Params& p, const AlgebraElement& x,
                        std::int64_t max_dim = kDefaultMaxDim) {
  std::int64_t d = p.dim();
  if (d > max_dim)
    throw ResourceError("representation dimension " + std::to_string(d) +
                        " exceeds the cap " + std::to_string(max_dim));
  BasisIndex basis = p.basis();
  std::vector<BasisState> states = basis.states();
  std::vector<Triplet> ts;
  for (std::int64_t col = 0; col < d; ++col) {
    for (const auto& [g, cf] : x.terms()) {
      for (const auto& [target, amp] : act(p, g, states[static_cast<std::size_t>(col)]))
        ts.push_back({basis.index_of(target), col, cf * amp});
    }
  }
  return RepMatrix::from_triplets(d, std::move(ts));
}

inline RepMatrix matrix(const So4Params& p, GeneratorId g,
                        std::int64_t max_dim = kDefaultMaxDim) {
  return matrix(p, AlgebraElement(g), max_dim);
}

// sum_i M_i N_i; equals G * I on an irreducible space.
inline RepMatrix casimir_mn(const So4Params& p, std::int64_t max_dim = kDefaultMaxDim) {
  RepMatrix out = RepMatrix::zero(p.dim());
  const GeneratorId ms[3] = {GeneratorId::M1, GeneratorId::M2, GeneratorId::M3};
  const GeneratorId ns[3] = {GeneratorId::N1, GeneratorId::N2, GeneratorId::N3};
  for (int i = 0; i < 3; ++i)
    out = out + matmul(matrix(p, ms[i], max_dim), matrix(p, ns[i], max_dim));
  return out;
}

// (sum_i M_i^2 + N_i^2)/2; equals F * I on an irreducible space.
inline RepMatrix casimir_f(const So4Params& p, std::int64_t max_dim = kDefaultMaxDim) {
  RepMatrix out = RepMatrix::zero(p.dim());
  for (GeneratorId g : kSo4Basis) {
    RepMatrix m = matrix(p, g, max_dim);
    out = out + matmul(m, m);
  }
  return Complex(0.5, 0.0) * out;
}

}  // namespace liecontract
