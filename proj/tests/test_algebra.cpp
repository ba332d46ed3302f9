#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "liecontract/algebra.hpp"

using namespace liecontract;
using G = GeneratorId;

namespace {

Complex ci(double im) { return Complex(0.0, im); }

AlgebraElement elem(std::initializer_list<std::pair<G, Complex>> terms) {
  AlgebraElement x;
  for (auto& [g, c] : terms) x.add(g, c);
  return x;
}

}  // namespace

TEST_CASE("so(4) brackets on generators", "[algebra]") {
  StructureTable so4 = so4_table();
  CHECK(so4.bracket(G::M1, G::M2) == elem({{G::M3, ci(1)}}));
  CHECK(so4.bracket(G::N1, G::N2) == elem({{G::M3, ci(1)}}));
  CHECK(so4.bracket(G::M1, G::N2) == elem({{G::N3, ci(1)}}));
  CHECK(so4.bracket(G::N1, G::M2) == elem({{G::N3, ci(1)}}));
  CHECK(so4.bracket(G::M1, G::M1) == AlgebraElement{});
  CHECK(so4.bracket(G::M3, G::N3) == AlgebraElement{});
  CHECK(so4.bracket(G::M2, G::M1) == elem({{G::M3, ci(-1)}}));
}

TEST_CASE("iso(3) brackets: translations commute", "[algebra]") {
  StructureTable iso3 = iso3_table();
  CHECK(iso3.bracket(G::J1, G::J2) == elem({{G::J3, ci(1)}}));
  CHECK(iso3.bracket(G::P1, G::P2) == AlgebraElement{});
  CHECK(iso3.bracket(G::J1, G::P2) == elem({{G::P3, ci(1)}}));
  CHECK(iso3.bracket(G::P1, G::J2) == elem({{G::P3, ci(1)}}));
  CHECK(iso3.bracket(G::J3, G::J3) == AlgebraElement{});
}

TEST_CASE("bracket is bilinear", "[algebra]") {
  StructureTable so4 = so4_table();
  AlgebraElement x = elem({{G::M1, 1.0}, {G::N1, 1.0}});
  CHECK(so4.bracket(x, G::M2) == elem({{G::M3, ci(1)}, {G::N3, ci(1)}}));
  AlgebraElement y = elem({{G::M2, Complex(0.0, 2.0)}});
  CHECK(so4.bracket(G::M1, y) == elem({{G::M3, Complex(-2.0, 0.0)}}));
}

TEST_CASE("bracket rejects generators outside the table basis", "[algebra]") {
  CHECK_THROWS_AS(so4_table().bracket(G::J1, G::M1), ParameterError);
  CHECK_THROWS_AS(iso3_table().bracket(G::J1, G::M1), ParameterError);
}

TEST_CASE("antisymmetry holds for random elements", "[algebra]") {
  StructureTable so4 = so4_table();
  std::mt19937 rng(77u);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    AlgebraElement x, y;
    for (G g : kSo4Basis) {
      x.add(g, Complex(coef(rng), coef(rng)));
      y.add(g, Complex(coef(rng), coef(rng)));
    }
    AlgebraElement lhs = so4.bracket(x, y) + so4.bracket(y, x);
    for (const auto& [g, c] : lhs.terms()) CHECK(std::abs(c) < 1e-12);
    // [x, x] cancels only up to rounding: contributions from different
    // generator pairs interleave in the accumulator.
    AlgebraElement self = so4.bracket(x, x);
    for (const auto& [g, c] : self.terms()) CHECK(std::abs(c) < 1e-12);
  }
}

TEST_CASE("table-level antisymmetry and Jacobi are exact", "[algebra]") {
  CHECK(check_antisymmetry(so4_table()) == 0.0);
  CHECK(check_antisymmetry(iso3_table()) == 0.0);
  CHECK(check_jacobi(so4_table()) <= 1e-14);
  CHECK(check_jacobi(iso3_table()) <= 1e-14);
  CHECK(check_jacobi(kl_table()) <= 1e-14);
}

TEST_CASE("a corrupted structure constant breaks Jacobi detectably", "[algebra]") {
  StructureTable bad = so4_table();
  bad.c[0][1][2] += Complex(1.0, 0.0);  // [M1, M2] picks up a spurious +M3
  CHECK(check_jacobi(bad) >= 1.0);
}

TEST_CASE("conjugated bracket: boosts carry the contraction parameter", "[algebra]") {
  StructureTable so4 = so4_table();
  ContractionMap cm = so4_contraction();

  StructureTable at1 = contracted_table(so4, cm, 1.0);
  CHECK(tables_equal(at1, so4));

  StructureTable at01 = contracted_table(so4, cm, 0.1);
  // [N1, N2]_eps = i eps^2 M3; rotation and mixed brackets are eps-free.
  CHECK(at01.bracket(G::N1, G::N2) == elem({{G::M3, ci(0.1 * 0.1)}}));
  CHECK(at01.bracket(G::M1, G::N2) == elem({{G::N3, ci(1)}}));
  CHECK(at01.bracket(G::M1, G::M2) == elem({{G::M3, ci(1)}}));

  for (double eps : {1.0, 0.5, 0.1, 0.01}) {
    StructureTable at = contracted_table(so4, cm, eps);
    CHECK(check_antisymmetry(at) == 0.0);
    CHECK(check_jacobi(at) <= 1e-12);
    CHECK(max_abs_diff(at, limit_table(so4, cm)) <= eps * eps);
  }

  CHECK_THROWS_AS(contracted_table(so4, cm, 0.0), ParameterError);
  CHECK_THROWS_AS(contracted_table(so4, cm, -0.5), ParameterError);
  CHECK_THROWS_AS(contracted_table(so4, cm, 1.5), ParameterError);
}

TEST_CASE("the eps -> 0 limit flattens the boost brackets", "[algebra]") {
  StructureTable lim = limit_table(so4_table(), so4_contraction());
  CHECK(lim.bracket(G::N1, G::N2) == AlgebraElement{});
  CHECK(lim.bracket(G::M1, G::N2) == elem({{G::N3, ci(1)}}));
  CHECK(lim.bracket(G::M1, G::M2) == elem({{G::M3, ci(1)}}));
  CHECK(check_jacobi(lim) <= 1e-14);

  // Identity map: nothing changes in the limit.
  CHECK(tables_equal(limit_table(so4_table(), ContractionMap{}), so4_table()));

  // Scaling rotations instead makes [N, N] ~ eps^-1 M: no limit exists.
  ContractionMap rot_scaled{{{G::M1, 1}, {G::M2, 1}, {G::M3, 1}}};
  CHECK_THROWS_AS(limit_table(so4_table(), rot_scaled), ContractionUndefinedError);
}

TEST_CASE("the contracted algebra is iso(3) under psi", "[algebra]") {
  CHECK(tables_equal(limit_table(so4_table(), so4_contraction()),
                     pullback_by_psi(iso3_table())));

  CHECK(psi(G::M3) == AlgebraElement(G::J3));
  CHECK(psi(elem({{G::N1, 1.0}, {G::N2, Complex(0.0, 2.0)}})) ==
        elem({{G::P1, 1.0}, {G::P2, Complex(0.0, 2.0)}}));
  CHECK(psi_inverse(psi(elem({{G::M2, 3.0}, {G::N3, ci(-1)}}))) ==
        elem({{G::M2, 3.0}, {G::N3, ci(-1)}}));
  CHECK_THROWS_AS(psi(AlgebraElement(G::J1)), ParameterError);

  // psi intertwines the limit bracket with the iso(3) bracket.
  StructureTable lim = limit_table(so4_table(), so4_contraction());
  StructureTable iso3 = iso3_table();
  for (G x : kSo4Basis)
    for (G y : kSo4Basis)
      CHECK(psi(lim.bracket(x, y)) == iso3.bracket(psi(x), psi(y)));
}

TEST_CASE("split basis: rewrite and round trip", "[algebra]") {
  CHECK(to_kl(G::M1) == elem({{G::K1, 1.0}, {G::L1, 1.0}}));
  CHECK(to_kl(G::N2) == elem({{G::K2, 1.0}, {G::L2, -1.0}}));
  CHECK(from_kl(G::K1) == elem({{G::M1, 0.5}, {G::N1, 0.5}}));
  CHECK(from_kl(G::L3) == elem({{G::M3, 0.5}, {G::N3, -0.5}}));

  for (G g : kSo4Basis) CHECK(from_kl(to_kl(g)) == AlgebraElement(g));
  for (G g : kKlBasis) CHECK(to_kl(from_kl(g)) == AlgebraElement(g));
  CHECK_THROWS_AS(to_kl(AlgebraElement(G::K1)), ParameterError);
  CHECK_THROWS_AS(from_kl(AlgebraElement(G::M1)), ParameterError);
}

TEST_CASE("split basis: two commuting so(3) copies, coefficient for coefficient",
          "[algebra]") {
  StructureTable kl = kl_table();
  // Expected: [K_i, K_j] = i e_ijk K_k, [L_i, L_j] = i e_ijk L_k, [K, L] = 0.
  StructureTable expect;
  expect.basis = kKlBasis;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        int e = detail::levi_civita(i, j, k);
        if (!e) continue;
        expect.c[i][j][k] = ci(e);
        expect.c[3 + i][3 + j][3 + k] = ci(e);
      }
  CHECK(tables_equal(kl, expect));
}

TEST_CASE("generator names parse both spellings", "[algebra]") {
  CHECK(generator_from_token("M1") == G::M1);
  CHECK(generator_from_token("M+") == G::Mplus);
  CHECK(generator_from_token("Mplus") == G::Mplus);
  CHECK(generator_from_token("P-") == G::Pminus);
  CHECK(generator_from_token("Pminus") == G::Pminus);
  CHECK_FALSE(generator_from_token("Q7").has_value());
  CHECK(token_name(G::Nminus) == "Nminus");
  CHECK(std::string(short_name(G::Nminus)) == "N-");
}
