// Acceptance gate: every release-blocking property of the library and CLI,
// one line of output per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "liecontract/liecontract.hpp"
#include "run_cli.hpp"

using namespace liecontract;
using G = GeneratorId;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void line(int idx, bool pass, const std::string& text) {
  std::printf("[%2d] %s  %s\n", idx, pass ? "PASS" : "FAIL", text.c_str());
  if (!pass) ++failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Label sweep shared by the so(4) criteria: j0 in {0, 1/2, ..., 2},
// n = j0 .. j0+6, both signs where defined.
std::vector<So4Params> label_sweep() {
  std::vector<So4Params> out;
  for (std::int64_t t0 = 0; t0 <= 4; ++t0) {
    HalfInt j0 = HalfInt::from_twice(t0);
    for (int step = 0; step <= 6; ++step) {
      HalfInt n = j0 + step;
      if (t0 == 0) {
        out.push_back(So4Params::make(j0, n, 0));
      } else {
        out.push_back(So4Params::make(j0, n, +1));
        out.push_back(So4Params::make(j0, n, -1));
      }
    }
  }
  return out;
}

std::map<G, RepMatrix> cartesian_matrices(const So4Params& p) {
  std::map<G, RepMatrix> mats;
  for (G g : kSo4Basis) mats.emplace(g, matrix(p, g));
  return mats;
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

void criterion_1_closure() {
  auto t0 = Clock::now();
  StructureTable table = so4_table();
  bool ok = true;
  double worst = 0.0;
  for (const So4Params& p : label_sweep()) {
    std::map<G, RepMatrix> mats = cartesian_matrices(p);
    double limit = 1e-10 * static_cast<double>(p.dim());
    for (std::size_t i = 0; i < kSo4Basis.size(); ++i)
      for (std::size_t j = i + 1; j < kSo4Basis.size(); ++j) {
        RepMatrix lhs = commutator(mats.at(kSo4Basis[i]), mats.at(kSo4Basis[j]));
        RepMatrix rhs = RepMatrix::zero(p.dim());
        AlgebraElement br = table.bracket(kSo4Basis[i], kSo4Basis[j]);
        for (const auto& [g, cf] : br.terms()) rhs = rhs + cf * mats.at(g);
        double r = max_abs_diff(lhs, rhs);
        worst = std::max(worst, r);
        ok = ok && r <= limit;
      }
  }
  double secs = seconds_since(t0);
  ok = ok && secs < 2.0;
  line(1, ok,
       "so(4) commutator closure on the label sweep, 15 pairs each (max residual " +
           sci(worst) + ", " + sci(secs) + " s)");
}

void criterion_2_casimirs() {
  bool ok = true;
  double worst = 0.0;
  for (const So4Params& p : label_sweep()) {
    double rg = scalar_deviation(casimir_mn(p), Complex(p.G(), 0.0));
    double rf = scalar_deviation(casimir_f(p), Complex(p.F(), 0.0));
    ok = ok && rg <= 1e-10 * (1.0 + std::fabs(p.G())) && rf <= 1e-10 * (1.0 + p.F());
    worst = std::max({worst, rg, rf});
  }
  line(2, ok, "so(4) Casimir operators act as the scalars G and F (max residual " + sci(worst) +
                  ")");
}

void criterion_3_dimensions() {
  bool ok = true;
  for (std::int64_t tk = 0; tk <= 10; ++tk)
    for (std::int64_t tl = 0; tl <= 10; ++tl) {
      So4Params p = params_from_kl({HalfInt::from_twice(tk), HalfInt::from_twice(tl)});
      std::int64_t expected = (tk + 1) * (tl + 1);
      std::int64_t t0 = p.j0.twice(), tn = p.n.twice();
      ok = ok && p.dim() == expected;
      ok = ok && ((tn + 2) * (tn + 2) - t0 * t0) / 4 == expected;
      ok = ok && matrix(p, G::M3).dim() == expected;
    }
  line(3, ok, "dimension (n+1)^2 - j0^2 = (2k+1)(2l+1) for all k, l <= 5, including as built");
}

void criterion_4_dictionary() {
  bool ok = true;
  for (std::int64_t tk = 0; tk <= 10; ++tk)
    for (std::int64_t tl = 0; tl <= 10; ++tl) {
      KlPair kl{HalfInt::from_twice(tk), HalfInt::from_twice(tl)};
      So4Params p = params_from_kl(kl);
      ok = ok && kl_from_params(p) == kl;
      So4Params back = params_from_kl(kl_from_params(p));
      ok = ok && back.j0 == p.j0 && back.n == p.n && back.sign == p.sign;
      double k = kl.k.value(), l = kl.l.value();
      ok = ok && p.F() == k * (k + 1.0) + l * (l + 1.0);
      ok = ok && p.G() == k * (k + 1.0) - l * (l + 1.0);
    }
  line(4, ok, "parameter dictionary (k,l) <-> (j0,n,sign) round-trips exactly; F, G as stated");
}

void criterion_5_iso3_interior() {
  bool ok = true;
  double worst = 0.0;
  StructureTable table = iso3_table();
  const Iso3Params cases[3] = {Iso3Params::make(1.0, 0, 0), Iso3Params::make(1.0, 1, +1),
                               Iso3Params::make(4.0, half(1), -1)};
  for (const Iso3Params& q : cases) {
    TruncatedRep t = TruncatedRep::make(q, 6);
    std::map<G, RepMatrix> mats;
    for (G g : kIso3Basis) mats.emplace(g, truncated_matrix(t, g));
    std::vector<BasisState> states = t.basis().states();
    HalfInt interior_top = t.jtop - 1;
    auto interior = [&states, interior_top](std::int64_t r) {
      return states[static_cast<std::size_t>(r)].j <= interior_top;
    };
    double limit = 1e-10 * static_cast<double>(t.dim());
    for (std::size_t i = 0; i < kIso3Basis.size(); ++i)
      for (std::size_t j = i + 1; j < kIso3Basis.size(); ++j) {
        RepMatrix lhs = commutator(mats.at(kIso3Basis[i]), mats.at(kIso3Basis[j]));
        RepMatrix rhs = RepMatrix::zero(t.dim());
        AlgebraElement br = table.bracket(kIso3Basis[i], kIso3Basis[j]);
        for (const auto& [g, cf] : br.terms()) rhs = rhs + cf * mats.at(g);
        double r = max_abs_diff(restrict_to(lhs, interior, interior),
                                restrict_to(rhs, interior, interior));
        worst = std::max(worst, r);
        ok = ok && r <= limit;
      }
    InteriorCasimirResiduals cr = casimir_interior_check(t);
    ok = ok && cr.p2_residual <= 1e-10 * (1.0 + q.p2);
    ok = ok && cr.jp_residual <= 1e-10 * (1.0 + std::fabs(q.C()));
    worst = std::max({worst, cr.p2_residual, cr.jp_residual});
  }
  line(5, ok,
       "iso(3) interior commutators and Casimirs for the three stated cases at jmax = 6 (max "
       "residual " + sci(worst) + ")");
}

void criterion_6_coefficient_limits() {
  bool ok = true;
  std::string detail;
  const std::vector<HalfInt> ns = {32, 64, 128, 256, 512, 1024};
  const std::pair<double, double> targets[2] = {{1.0, 0.0}, {1.0, 1.0}};
  for (const auto& [p2, C] : targets) {
    Iso3Params target = Iso3Params::from_invariants(p2, C);
    for (int step = 1; step <= 2; ++step) {
      HalfInt j = target.j0 + step;
      CoefficientResiduals at100 = coefficient_residuals(target, j, 100);
      ok = ok && at100.alpha_residual <= 1e-3 && at100.beta_residual <= 1e-3;
      for (int coeff = 0; coeff < 2; ++coeff) {
        std::vector<std::pair<double, double>> pts;
        double peak = 0.0;
        for (HalfInt n : ns) {
          CoefficientResiduals r = coefficient_residuals(target, j, n);
          double e = coeff == 0 ? r.alpha_residual : r.beta_residual;
          pts.emplace_back(n.value(), e);
          peak = std::max(peak, e);
        }
        if (peak <= 1e-14) continue;  // exact convergence: identical up to rounding
        RateFit fit = fit_loglog(pts, 1e-14);
        ok = ok && !fit.exact && fit.slope >= -2.15 && fit.slope <= -1.85;
      }
    }
  }
  // The algebraically exact case must in fact land on the exact branch.
  Iso3Params exact_case = Iso3Params::make(1.0, 1, +1);
  double worst_beta = 0.0;
  for (HalfInt n : ns)
    for (int step = 1; step <= 2; ++step)
      worst_beta = std::max(
          worst_beta, coefficient_residuals(exact_case, exact_case.j0 + step, n).beta_residual);
  ok = ok && worst_beta <= 1e-14;
  line(6, ok,
       "coefficient limits: residuals at n=100 <= 1e-3, rate slopes in [-2.15, -1.85] or exact "
       "(beta residual peak " + sci(worst_beta) + ")");
}

void criterion_7_matrix_element_convergence() {
  auto t0 = Clock::now();
  Iso3Params target = Iso3Params::make(1.0, 1, +1);
  const std::vector<HalfInt> ns = {64, 128, 256, 512, 1024};
  std::vector<ConvergenceRecord> records = convergence_table(target, ns, 3);
  bool ok = true;
  for (const ConvergenceRecord& r : records)
    for (G g : {G::M3, G::Mplus, G::Mminus}) ok = ok && r.error_for(g) == 0.0;
  for (std::size_t i = 1; i < records.size(); ++i)
    for (G g : {G::N3, G::Nplus, G::Nminus})
      ok = ok && records[i].error_for(g) <= records[i - 1].error_for(g);
  double worst1000 = 0.0;
  for (G g : {G::M3, G::Mplus, G::Mminus})
    ok = ok && matrix_element_error(target, 1000, g, 3) == 0.0;
  for (G g : {G::N3, G::Nplus, G::Nminus})
    worst1000 = std::max(worst1000, matrix_element_error(target, 1000, g, 3));
  ok = ok && worst1000 <= 1e-4;
  double secs = seconds_since(t0);
  ok = ok && secs < 5.0;
  line(7, ok,
       "matrix elements on the window j <= 3: rotations exact, boosts <= 1e-4 at n = 1000 and "
       "nonincreasing (worst " + sci(worst1000) + ", " + sci(secs) + " s)");
}

void criterion_8_contracted_algebra() {
  StructureTable so4 = so4_table();
  ContractionMap cmap = so4_contraction();
  StructureTable limit = limit_table(so4, cmap);
  StructureTable pulled = pullback_by_psi(iso3_table());
  bool ok = tables_equal(limit, pulled);
  double d1 = max_abs_diff(contracted_table(so4, cmap, 0.1), limit);
  double d2 = max_abs_diff(contracted_table(so4, cmap, 0.01), limit);
  ok = ok && d1 <= 0.1 * 0.1 && d2 <= 0.01 * 0.01;
  line(8, ok,
       "contracted structure constants reach the psi-pullback of iso(3) exactly; distance at "
       "eps is <= eps^2 (" + sci(d1) + ", " + sci(d2) + ")");
}

void criterion_9_hermiticity() {
  bool ok = true;
  double worst = 0.0;
  for (const So4Params& p : label_sweep()) {
    for (G g : kSo4Basis) {
      double h = hermiticity_residual(matrix(p, g));
      worst = std::max(worst, h);
      ok = ok && h <= 1e-13;
    }
    ok = ok && max_abs_diff(matrix(p, G::Mminus), matrix(p, G::Mplus).adjoint()) == 0.0;
    ok = ok && max_abs_diff(matrix(p, G::Nminus), matrix(p, G::Nplus).adjoint()) == 0.0;
  }
  line(9, ok,
       "Cartesian generators Hermitian within 1e-13; lowering = adjoint of raising exactly "
       "(max residual " + sci(worst) + ")");
}

void criterion_10_cli() {
  std::string args =
      "contract --p2 1 --C 1 --n-start 8 --n-end 256 --window-jmax 2 --format csv";
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  bool ok = a.code == 0 && b.code == 0 && !a.out.empty() && a.out == b.out;
  CliResult g = run_cli("grid --kmax 3");
  ok = ok && g.code == 0 && count_occurrences(g.out, "{\"k\": ") == 49;
  line(10, ok, "CLI: contract output byte-identical across runs; grid --kmax 3 has 49 points");
}

}  // namespace

int main() {
  criterion_1_closure();
  criterion_2_casimirs();
  criterion_3_dimensions();
  criterion_4_dictionary();
  criterion_5_iso3_interior();
  criterion_6_coefficient_limits();
  criterion_7_matrix_element_convergence();
  criterion_8_contracted_algebra();
  criterion_9_hermiticity();
  criterion_10_cli();
  std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
