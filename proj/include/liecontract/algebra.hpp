#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace liecontract {

using Complex = std::complex<double>;

// Generators of the algebras handled here. M/N span so(4) (rotations/boosts),
// J/P span iso(3) (rotations/translations), K/L is the split basis
// K_i = (M_i + N_i)/2, L_i = (M_i - N_i)/2. The trailing entries are the
// ladder combinations X+- = X1 +- i X2, usable wherever a single generator is
// accepted but never as structure-table basis elements.
enum class GeneratorId : int {
  M1, M2, M3, N1, N2, N3,
  J1, J2, J3, P1, P2, P3,
  K1, K2, K3, L1, L2, L3,
  Mplus, Mminus, Nplus, Nminus,
  Jplus, Jminus, Pplus, Pminus,
};

inline constexpr std::array<GeneratorId, 6> kSo4Basis = {
    GeneratorId::M1, GeneratorId::M2, GeneratorId::M3,
    GeneratorId::N1, GeneratorId::N2, GeneratorId::N3};
inline constexpr std::array<GeneratorId, 6> kIso3Basis = {
    GeneratorId::J1, GeneratorId::J2, GeneratorId::J3,
    GeneratorId::P1, GeneratorId::P2, GeneratorId::P3};
inline constexpr std::array<GeneratorId, 6> kKlBasis = {
    GeneratorId::K1, GeneratorId::K2, GeneratorId::K3,
    GeneratorId::L1, GeneratorId::L2, GeneratorId::L3};

inline const char* short_name(GeneratorId g) {
  switch (g) {
    case GeneratorId::M1: return "M1";
    case GeneratorId::M2: return "M2";
    case GeneratorId::M3: return "M3";
    case GeneratorId::N1: return "N1";
    case GeneratorId::N2: return "N2";
    case GeneratorId::N3: return "N3";
    case GeneratorId::J1: return "J1";
    case GeneratorId::J2: return "J2";
    case GeneratorId::J3: return "J3";
    case GeneratorId::P1: return "P1";
    case GeneratorId::P2: return "P2";
    case GeneratorId::P3: return "P3";
    case GeneratorId::K1: return "K1";
    case GeneratorId::K2: return "K2";
    case GeneratorId::K3: return "K3";
    case GeneratorId::L1: return "L1";
    case GeneratorId::L2: return "L2";
    case GeneratorId::L3: return "L3";
    case GeneratorId::Mplus: return "M+";
    case GeneratorId::Mminus: return "M-";
    case GeneratorId::Nplus: return "N+";
    case GeneratorId::Nminus: return "N-";
    case GeneratorId::Jplus: return "J+";
    case GeneratorId::Jminus: return "J-";
    case GeneratorId::Pplus: return "P+";
    case GeneratorId::Pminus: return "P-";
  }
  return "?";
}

// Identifier-safe spelling ("Mplus" instead of "M+"), used for CSV columns.
inline std::string token_name(GeneratorId g) {
  std::string s = short_name(g);
  if (s.size() == 2 && s[1] == '+') return std::string(1, s[0]) + "plus";
  if (s.size() == 2 && s[1] == '-') return std::string(1, s[0]) + "minus";
  return s;
}

inline std::optional<GeneratorId> generator_from_token(std::string_view tok) {
  for (int i = 0; i <= static_cast<int>(GeneratorId::Pminus); ++i) {
    auto g = static_cast<GeneratorId>(i);
    if (tok == short_name(g) || tok == token_name(g)) return g;
  }
  return std::nullopt;
}

// Family queries. "Boost" marks the generators whose action couples adjacent
// shells (N for so(4), P = translations for iso(3)).
inline bool is_so4_side(GeneratorId g) {
  char c = short_name(g)[0];
  return c == 'M' || c == 'N';
}
inline bool is_iso3_side(GeneratorId g) {
  char c = short_name(g)[0];
  return c == 'J' || c == 'P';
}
inline bool is_boost(GeneratorId g) {
  char c = short_name(g)[0];
  return c == 'N' || c == 'P';
}

// Component form of a generator: axis 1/2/3 or ladder +/-.
enum class GenForm { Axis1, Axis2, Axis3, Plus, Minus };

inline GenForm form_of(GeneratorId g) {
  char c = short_name(g)[1];
  switch (c) {
    case '1': return GenForm::Axis1;
    case '2': return GenForm::Axis2;
    case '3': return GenForm::Axis3;
    case '+': return GenForm::Plus;
    default: return GenForm::Minus;
  }
}

// The isomorphism of the contracted algebra onto iso(3): M_i -> J_i, N_i -> P_i.
inline GeneratorId psi_gen(GeneratorId g) {
  switch (g) {
    case GeneratorId::M1: return GeneratorId::J1;
    case GeneratorId::M2: return GeneratorId::J2;
    case GeneratorId::M3: return GeneratorId::J3;
    case GeneratorId::N1: return GeneratorId::P1;
    case GeneratorId::N2: return GeneratorId::P2;
    case GeneratorId::N3: return GeneratorId::P3;
    case GeneratorId::Mplus: return GeneratorId::Jplus;
    case GeneratorId::Mminus: return GeneratorId::Jminus;
    case GeneratorId::Nplus: return GeneratorId::Pplus;
    case GeneratorId::Nminus: return GeneratorId::Pminus;
    default:
      throw ParameterError(std::string("psi is defined on M/N generators, got ") +
                           short_name(g));
  }
}

inline GeneratorId psi_gen_inverse(GeneratorId g) {
  switch (g) {
    case GeneratorId::J1: return GeneratorId::M1;
    case GeneratorId::J2: return GeneratorId::M2;
    case GeneratorId::J3: return GeneratorId::M3;
    case GeneratorId::P1: return GeneratorId::N1;
    case GeneratorId::P2: return GeneratorId::N2;
    case GeneratorId::P3: return GeneratorId::N3;
    case GeneratorId::Jplus: return GeneratorId::Mplus;
    case GeneratorId::Jminus: return GeneratorId::Mminus;
    case GeneratorId::Pplus: return GeneratorId::Nplus;
    case GeneratorId::Pminus: return GeneratorId::Nminus;
    default:
      throw ParameterError(std::string("psi^-1 is defined on J/P generators, got ") +
                           short_name(g));
  }
}

// Finite linear combination of generators with complex coefficients.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(GeneratorId g) { terms_[g] = Complex(1.0, 0.0); }  // implicit

  AlgebraElement& add(GeneratorId g, Complex c) {
    auto it = terms_.find(g);
    Complex v = (it == terms_.end() ? Complex(0.0, 0.0) : it->second) + c;
    if (v == Complex(0.0, 0.0)) {
      if (it != terms_.end()) terms_.erase(it);
    } else {
      terms_[g] = v;
    }
    return *this;
  }

  const std::map<GeneratorId, Complex>& terms() const { return terms_; }
  Complex coeff(GeneratorId g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    for (const auto& [g, c] : b.terms_) a.add(g, c);
    return a;
  }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    for (const auto& [g, c] : b.terms_) a.add(g, -c);
    return a;
  }
  friend AlgebraElement operator*(Complex s, const AlgebraElement& x) {
    AlgebraElement out;
    for (const auto& [g, c] : x.terms_) out.add(g, s * c);
    return out;
  }
  bool operator==(const AlgebraElement&) const = default;

 private:
  std::map<GeneratorId, Complex> terms_;
};

namespace detail {

inline int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? +1 : -1;  // cyclic (i,j,k) of (0,1,2)
}

inline double powi(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= x;
  return e < 0 ? 1.0 / r : r;
}

}  // namespace detail

// Structure constants of a 6-generator algebra over a fixed ordered basis:
// [e_i, e_j] = sum_k c[i][j][k] e_k.
struct StructureTable {
  std::array<GeneratorId, 6> basis{};
  std::array<std::array<std::array<Complex, 6>, 6>, 6> c{};

  int slot(GeneratorId g) const {
    for (int i = 0; i < 6; ++i)
      if (basis[i] == g) return i;
    return -1;
  }

  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const {
    AlgebraElement out;
    for (const auto& [gx, cx] : x.terms()) {
      int ix = slot(gx);
      if (ix < 0)
        throw ParameterError(std::string("generator ") + short_name(gx) +
                             " is not in this table's basis");
      for (const auto& [gy, cy] : y.terms()) {
        int iy = slot(gy);
        if (iy < 0)
          throw ParameterError(std::string("generator ") + short_name(gy) +
                               " is not in this table's basis");
        for (int k = 0; k < 6; ++k) {
          Complex v = cx * cy * c[ix][iy][k];
          if (v != Complex(0.0, 0.0)) out.add(basis[k], v);
        }
      }
    }
    return out;
  }
};

// so(4) over {M1..M3, N1..N3}:
//   [M_i, M_j] = i e_ijk M_k,  [N_i, N_j] = i e_ijk M_k,  [M_i, N_j] = i e_ijk N_k.
inline StructureTable so4_table() {
  StructureTable t;
  t.basis = kSo4Basis;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        int e = detail::levi_civita(i, j, k);
        if (!e) continue;
        Complex v(0.0, static_cast<double>(e));
        t.c[i][j][k] = v;          // [M_i, M_j] = i e M_k
        t.c[3 + i][3 + j][k] = v;  // [N_i, N_j] = i e M_k
        t.c[i][3 + j][3 + k] = v;  // [M_i, N_j] = i e N_k
        t.c[3 + i][j][3 + k] = v;  // [N_i, M_j] = i e N_k
      }
  return t;
}

// iso(3) over {J1..J3, P1..P3}:
//   [J_i, J_j] = i e_ijk J_k,  [P_i, P_j] = 0,  [J_i, P_j] = i e_ijk P_k.
inline StructureTable iso3_table() {
  StructureTable t;
  t.basis = kIso3Basis;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        int e = detail::levi_civita(i, j, k);
        if (!e) continue;
        Complex v(0.0, static_cast<double>(e));
        t.c[i][j][k] = v;
        t.c[i][3 + j][3 + k] = v;
        t.c[3 + i][j][3 + k] = v;
      }
  return t;
}

// Diagonal one-parameter rescaling t_eps(e_i) = eps^degree(e_i) * e_i.
// Generators absent from the map are left unscaled (degree 0).
struct ContractionMap {
  std::map<GeneratorId, int> degrees;

  int degree(GeneratorId g) const {
    auto it = degrees.find(g);
    return it == degrees.end() ? 0 : it->second;
  }
  double scale(GeneratorId g, double eps) const { return detail::powi(eps, degree(g)); }
};

// The contraction used throughout: boosts scale with eps, rotations stay.
inline ContractionMap so4_contraction() {
  return ContractionMap{{{GeneratorId::N1, 1}, {GeneratorId::N2, 1}, {GeneratorId::N3, 1}}};
}

// Structure constants of the conjugated bracket
// [x, y]_eps = t_eps^-1([t_eps x, t_eps y]):  c'_ijk = c_ijk eps^(d_i + d_j - d_k).
inline StructureTable contracted_table(const StructureTable& t, const ContractionMap& map,
                                       double eps) {
  if (!(eps > 0.0) || eps > 1.0)
    throw ParameterError("contraction parameter must satisfy 0 < eps <= 1");
  StructureTable out;
  out.basis = t.basis;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        Complex v = t.c[i][j][k];
        if (v == Complex(0.0, 0.0)) continue;
        int d = map.degree(t.basis[i]) + map.degree(t.basis[j]) - map.degree(t.basis[k]);
        out.c[i][j][k] = v * detail::powi(eps, d);
      }
  return out;
}

// eps -> 0+ limit of contracted_table. A nonzero constant with net negative
// eps-degree has no limit and is rejected.
inline StructureTable limit_table(const StructureTable& t, const ContractionMap& map) {
  StructureTable out;
  out.basis = t.basis;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        Complex v = t.c[i][j][k];
        if (v == Complex(0.0, 0.0)) continue;
        int d = map.degree(t.basis[i]) + map.degree(t.basis[j]) - map.degree(t.basis[k]);
        if (d < 0)
          throw ContractionUndefinedError(
              std::string("bracket [") + short_name(t.basis[i]) + ", " +
              short_name(t.basis[j]) + "] diverges as eps -> 0");
        if (d == 0) out.c[i][j][k] = v;
      }
  return out;
}

inline AlgebraElement psi(const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [g, cf] : x.terms()) out.add(psi_gen(g), cf);
  return out;
}

inline AlgebraElement psi_inverse(const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [g, cf] : x.terms()) out.add(psi_gen_inverse(g), cf);
  return out;
}

// Relabel a table's basis generators without touching the constants.
template <class Fn>
StructureTable relabel_table(const StructureTable& t, Fn&& fn) {
  StructureTable out = t;
  for (int i = 0; i < 6; ++i) out.basis[i] = fn(t.basis[i]);
  return out;
}

// iso(3) structure constants written over the M/N labels via psi^-1; the limit
// of the contracted so(4) table must match this exactly.
inline StructureTable pullback_by_psi(const StructureTable& iso3) {
  return relabel_table(iso3, [](GeneratorId g) { return psi_gen_inverse(g); });
}

namespace detail {

inline int axis_of(GeneratorId g) { return short_name(g)[1] - '1'; }  // 0,1,2

}  // namespace detail

// Rewrite an element of span{M, N} in the split basis (M_i = K_i + L_i,
// N_i = K_i - L_i).
inline AlgebraElement to_kl(const AlgebraElement& x) {
  static constexpr std::array<GeneratorId, 3> K = {GeneratorId::K1, GeneratorId::K2,
                                                   GeneratorId::K3};
  static constexpr std::array<GeneratorId, 3> L = {GeneratorId::L1, GeneratorId::L2,
                                                   GeneratorId::L3};
  AlgebraElement out;
  for (const auto& [g, cf] : x.terms()) {
    char fam = short_name(g)[0];
    if ((fam != 'M' && fam != 'N') || form_of(g) == GenForm::Plus ||
        form_of(g) == GenForm::Minus)
      throw ParameterError(std::string("cannot rewrite ") + short_name(g) +
                           " in the K/L basis");
    int a = detail::axis_of(g);
    out.add(K[a], cf);
    out.add(L[a], fam == 'M' ? cf : -cf);
  }
  return out;
}

// Inverse rewrite: K_i = (M_i + N_i)/2, L_i = (M_i - N_i)/2.
inline AlgebraElement from_kl(const AlgebraElement& x) {
  static constexpr std::array<GeneratorId, 3> M = {GeneratorId::M1, GeneratorId::M2,
                                                   GeneratorId::M3};
  static constexpr std::array<GeneratorId, 3> N = {GeneratorId::N1, GeneratorId::N2,
                                                   GeneratorId::N3};
  AlgebraElement out;
  for (const auto& [g, cf] : x.terms()) {
    char fam = short_name(g)[0];
    if (fam != 'K' && fam != 'L')
      throw ParameterError(std::string("cannot rewrite ") + short_name(g) +
                           " out of the K/L basis");
    int a = detail::axis_of(g);
    Complex h = 0.5 * cf;
    out.add(M[a], h);
    out.add(N[a], fam == 'K' ? h : -h);
  }
  return out;
}

// so(4) transported to the split basis; comes out as two commuting so(3)
// copies: [K_i, K_j] = i e_ijk K_k, [L_i, L_j] = i e_ijk L_k, [K, L] = 0.
inline StructureTable kl_table() {
  StructureTable so4 = so4_table();
  StructureTable out;
  out.basis = kKlBasis;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      AlgebraElement z =
          to_kl(so4.bracket(from_kl(kKlBasis[a]), from_kl(kKlBasis[b])));
      for (const auto& [g, cf] : z.terms()) out.c[a][b][out.slot(g)] = cf;
    }
  return out;
}

// Max |[[x,y],z] + [[y,z],x] + [[z,x],y]| coefficient over all basis triples.
inline double check_jacobi(const StructureTable& t) {
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l) {
          Complex s(0.0, 0.0);
          for (int m = 0; m < 6; ++m)
            s += t.c[i][j][m] * t.c[m][k][l] + t.c[j][k][m] * t.c[m][i][l] +
                 t.c[k][i][m] * t.c[m][j][l];
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

inline double check_antisymmetry(const StructureTable& t) {
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(t.c[i][j][k] + t.c[j][i][k]));
  return worst;
}

inline double max_abs_diff(const StructureTable& a, const StructureTable& b) {
  if (a.basis != b.basis)
    throw ParameterError("structure tables are over different bases");
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(a.c[i][j][k] - b.c[i][j][k]));
  return worst;
}

inline bool tables_equal(const StructureTable& a, const StructureTable& b) {
  if (a.basis != b.basis) return false;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        if (a.c[i][j][k] != b.c[i][j][k]) return false;
  return true;
}

}  // namespace liecontract
