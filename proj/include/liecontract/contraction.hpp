#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "basis.hpp"
#include "errors.hpp"
#include "iso3_rep.hpp"
#include "so4_rep.hpp"

namespace liecontract {

// Family of so(4) representations rho_{F(n), G(n)} that converges, entry by
// entry after rescaling the boosts by epsilon_n, to a fixed iso(3)
// representation. The tower shares the target's lowest shell:
//   j0 = |C| / sqrt(p2),  G(n) = sgn(C) j0 (n+1),  F(n) = (j0^2 + (n+1)^2 - 1)/2.
struct ContractionSequence {
  Iso3Params target;

  HalfInt j0() const { return target.j0; }

  bool contains(HalfInt n) const {
    return n >= target.j0 && (n - target.j0).integral();
  }

  So4Params so4_params_at(HalfInt n) const {
    if (!contains(n))
      throw ParameterError("n = " + to_string(n) + " is not in the admissible set j0 + {0,1,...}, j0 = " +
                           to_string(target.j0));
    return So4Params::make(target.j0, n, target.sign);
  }
};

inline ContractionSequence sequence_for(const Iso3Params& target) {
  return ContractionSequence{target};
}

// Boost scale epsilon_n = sqrt(p2 / (2 F(n))), exact-integer 2F(n) under the
// radical. Undefined for the trivial member (j0 = 0, n = 0, where F = 0).
inline double epsilon_n(const Iso3Params& target, HalfInt n) {
  ContractionSequence seq{target};
  if (!seq.contains(n))
    throw ParameterError("n = " + to_string(n) + " is not in the admissible set j0 + {0,1,...}");
  std::int64_t t0 = target.j0.twice(), tn = n.twice();
  std::int64_t four_2f = t0 * t0 + (tn + 2) * (tn + 2) - 4;  // 4 * 2F(n)
  if (four_2f <= 0)
    throw ParameterError("epsilon is undefined at the trivial member j0 = 0, n = 0");
  return std::sqrt(target.p2 / (static_cast<double>(four_2f) / 4.0));
}

struct CoefficientResiduals {
  double alpha_residual;  // |epsilon_n * alpha_j - tilde_alpha_j|
  double beta_residual;   // |epsilon_n * beta_j  - tilde_beta_j|
};

// Coefficient-level convergence at shell j along the sequence at n.
inline CoefficientResiduals coefficient_residuals(const Iso3Params& target, HalfInt j,
                                                  HalfInt n) {
  if (j < target.j0 || !(j - target.j0).integral())
    throw ParameterError("j = " + to_string(j) + " is not on the shell lattice above j0");
  if (n < j)
    throw ParameterError("need n >= j so that alpha_j exists along the sequence");
  So4Params rho = ContractionSequence{target}.so4_params_at(n);
  double eps = epsilon_n(target, n);
  return CoefficientResiduals{
      std::fabs(eps * alpha(rho, j) - tilde_alpha(target, j)),
      std::fabs(eps * beta(rho, j) - tilde_beta(target, j))};
}

// The six ladder-basis generators tracked by the convergence diagnostics.
inline constexpr std::array<GeneratorId, 6> kTrackedGenerators = {
    GeneratorId::M3, GeneratorId::Mplus, GeneratorId::Mminus,
    GeneratorId::N3, GeneratorId::Nplus, GeneratorId::Nminus};

// sup over window states (j, j' <= window_jmax) of
//   | <j'm'| rho(t_n X) |jm> - <j'm'| eta(psi X) |jm> |,
// where t_n rescales boost generators by epsilon_n. Rotation generators match
// identically (same ladder arithmetic on both sides), so their error is an
// exact 0. Requires window_jmax <= n - 1: every matrix element between window
// shells is then present on both sides and independent of the truncation.
inline double matrix_element_error(const Iso3Params& target, HalfInt n, GeneratorId x,
                                   HalfInt window_jmax) {
  if (!is_so4_side(x))
    throw ParameterError(std::string("expected an M/N generator, got ") + short_name(x));
  if (window_jmax < target.j0 || !(window_jmax - target.j0).integral())
    throw ParameterError("window_jmax must be on the shell lattice above j0");
  ContractionSequence seq{target};
  So4Params rho = seq.so4_params_at(n);
  if (!(window_jmax + 1 <= n))
    throw ParameterError("window_jmax = " + to_string(window_jmax) +
                         " must be at most n - 1 = " + to_string(n - 1));
  double eps = epsilon_n(target, n);
  double scale = is_boost(x) ? eps : 1.0;
  GeneratorId y = psi_gen(x);
  BasisIndex window(target.j0, window_jmax);
  double sup = 0.0;
  for (const BasisState& s : window.states()) {
    std::map<BasisState, Complex> diff;
    for (const auto& [tgt, amp] : act(rho, x, s))
      if (window.contains(tgt)) diff[tgt] += scale * amp;
    for (const auto& [tgt, amp] : act(target, y, s))
      if (window.contains(tgt)) diff[tgt] -= amp;
    for (const auto& [tgt, d] : diff) sup = std::max(sup, std::abs(d));
  }
  return sup;
}

struct ConvergenceRecord {
  HalfInt n;
  double epsilon;
  std::array<double, 6> errors;  // aligned with kTrackedGenerators

  double error_for(GeneratorId g) const {
    for (std::size_t i = 0; i < kTrackedGenerators.size(); ++i)
      if (kTrackedGenerators[i] == g) return errors[i];
    throw ParameterError(std::string("generator ") + short_name(g) +
                         " is not tracked by convergence records");
  }
};

inline std::vector<ConvergenceRecord> convergence_table(const Iso3Params& target,
                                                        const std::vector<HalfInt>& ns,
                                                        HalfInt window_jmax) {
  std::vector<ConvergenceRecord> out;
  out.reserve(ns.size());
  for (HalfInt n : ns) {
    ConvergenceRecord rec{n, epsilon_n(target, n), {}};
    for (std::size_t i = 0; i < kTrackedGenerators.size(); ++i)
      rec.errors[i] = matrix_element_error(target, n, kTrackedGenerators[i], window_jmax);
    out.push_back(rec);
  }
  return out;
}

struct RateFit {
  bool exact;       // every point at or below the floor: converged identically
  double slope;     // least-squares slope of log(error) vs log(n)
  double residual;  // RMS residual of the fit in log space
  int points;       // points actually fitted
};

// Least-squares power-law fit on (n, error) pairs. Points with error <= floor
// are treated as converged and excluded; if all are, the result is the
// exact-convergence signal. Otherwise at least 4 usable points are required.
inline RateFit fit_loglog(const std::vector<std::pair<double, double>>& pts,
                          double floor = 0.0) {
  std::vector<std::pair<double, double>> use;
  for (const auto& [n, e] : pts)
    if (e > floor) use.emplace_back(std::log(n), std::log(e));
  if (use.empty()) return RateFit{true, 0.0, 0.0, 0};
  if (use.size() < 4)
    throw ParameterError("rate fit needs at least 4 points with error above the floor, got " +
                         std::to_string(use.size()));
  double sx = 0, sy = 0;
  for (const auto& [x, y] : use) sx += x, sy += y;
  double mx = sx / static_cast<double>(use.size());
  double my = sy / static_cast<double>(use.size());
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : use) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  double slope = sxy / sxx;
  double icept = my - slope * mx;
  double rss = 0;
  for (const auto& [x, y] : use) {
    double r = y - (slope * x + icept);
    rss += r * r;
  }
  return RateFit{false, slope, std::sqrt(rss / static_cast<double>(use.size())),
                 static_cast<int>(use.size())};
}

inline RateFit rate_fit(const std::vector<ConvergenceRecord>& records, GeneratorId g,
                        double floor = 0.0) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(records.size());
  for (const ConvergenceRecord& r : records) pts.emplace_back(r.n.value(), r.error_for(g));
  return fit_loglog(pts, floor);
}

}  // namespace liecontract
