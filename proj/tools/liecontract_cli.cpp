// Command-line front end for the representation library: dump generator
// matrices, run the invariant suites, produce convergence tables along a
// contraction sequence, and emit the (k, l) parameter grid.
//
// Exit codes: 0 success / all checks pass, 1 invariant violation,
// 2 bad parameters, 3 resource cap exceeded.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "liecontract/liecontract.hpp"

namespace {

using namespace liecontract;
using G = GeneratorId;

// ---------------------------------------------------------------------------
// Formatting. Floats are always 17 significant digits with a lowercase
// exponent so identical invocations produce byte-identical output.

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

std::string fmt_coord(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Flag parsing helpers. All numeric flags arrive as strings so that every
// diagnostic goes through the same error path (exit code 2).

double parse_double_flag(const char* name, const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ParameterError("");
    return v;
  } catch (const std::exception&) {
    throw ParameterError(std::string("invalid value for ") + name + ": '" + s + "'");
  }
}

int parse_sign_flag(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1") return 1;
  if (s == "-" || s == "-1") return -1;
  if (s == "0") return 0;
  throw ParameterError("invalid --sign '" + s + "' (use +, -, or 0)");
}

// The --gen argument is a single token ("M3", "N+", "Pplus") or a weighted
// term list NAME[:RE[:IM]],... for general algebra elements.
AlgebraElement parse_element(const std::string& arg) {
  if (arg.empty()) throw ParameterError("--gen must not be empty");
  AlgebraElement out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = arg.find(',', start);
    std::string term = arg.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (term.empty()) throw ParameterError("empty term in --gen list '" + arg + "'");
    std::string name = term;
    double re = 1.0, im = 0.0;
    std::size_t c1 = term.find(':');
    if (c1 != std::string::npos) {
      name = term.substr(0, c1);
      std::size_t c2 = term.find(':', c1 + 1);
      if (c2 == std::string::npos) {
        re = parse_double_flag("--gen weight", term.substr(c1 + 1));
      } else {
        re = parse_double_flag("--gen weight", term.substr(c1 + 1, c2 - c1 - 1));
        im = parse_double_flag("--gen weight", term.substr(c2 + 1));
      }
    }
    std::optional<G> g = generator_from_token(name);
    if (!g) throw ParameterError("unknown generator '" + name + "'");
    out.add(*g, Complex(re, im));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::int64_t dim_cap() {
  const char* v = std::getenv("LIECONTRACT_MAX_DIM");
  if (!v) return kDefaultMaxDim;
  char* end = nullptr;
  long long parsed = std::strtoll(v, &end, 10);
  if (end == v || *end != '\0' || parsed <= 0)
    throw ParameterError(std::string("LIECONTRACT_MAX_DIM must be a positive integer, got '") +
                         v + "'");
  return static_cast<std::int64_t>(parsed);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ResourceError("cannot open output file '" + out_path + "'");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
}

// ---------------------------------------------------------------------------
// Shared option bundles.

struct AlgebraOpts {
  std::string algebra;  // "so4" or "iso3"
  std::string j0, n, sign, k, l;
  std::string p2, C, jmax;
};

struct OutputOpts {
  std::string format = "json";
  std::string out_path;
};

void require_format(const OutputOpts& o, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (o.format == a) return;
  throw ParameterError("unsupported --format '" + o.format + "' for this command");
}

So4Params so4_params_from_flags(const AlgebraOpts& o) {
  bool kl = !o.k.empty() || !o.l.empty();
  bool direct = !o.j0.empty() || !o.n.empty() || !o.sign.empty();
  if (kl && direct)
    throw ParameterError("give either --k/--l or --j0/--n/--sign, not both");
  if (kl) {
    if (o.k.empty() || o.l.empty())
      throw ParameterError("--k and --l must be given together");
    return params_from_kl({parse_half_int(o.k), parse_half_int(o.l)});
  }
  if (o.j0.empty() || o.n.empty())
    throw ParameterError("so4 needs --j0 and --n (or --k and --l)");
  HalfInt j0 = parse_half_int(o.j0);
  HalfInt n = parse_half_int(o.n);
  if (o.sign.empty() && j0.twice() != 0)
    throw ParameterError("--sign is required when j0 > 0");
  int sign = o.sign.empty() ? 0 : parse_sign_flag(o.sign);
  return So4Params::make(j0, n, sign);
}

Iso3Params iso3_params_from_flags(const AlgebraOpts& o) {
  if (o.p2.empty()) throw ParameterError("iso3 needs --p2");
  double p2 = parse_double_flag("--p2", o.p2);
  bool by_c = !o.C.empty();
  bool by_j0 = !o.j0.empty() || !o.sign.empty();
  if (by_c && by_j0) throw ParameterError("give either --C or --j0/--sign, not both");
  if (by_c) return Iso3Params::from_invariants(p2, parse_double_flag("--C", o.C));
  if (o.j0.empty()) throw ParameterError("iso3 needs --j0 (with --sign) or --C");
  HalfInt j0 = parse_half_int(o.j0);
  if (o.sign.empty() && j0.twice() != 0)
    throw ParameterError("--sign is required when j0 > 0");
  int sign = o.sign.empty() ? 0 : parse_sign_flag(o.sign);
  return Iso3Params::make(p2, j0, sign);
}

std::string so4_params_json(const So4Params& p) {
  return "{\"j0\": \"" + to_string(p.j0) + "\", \"n\": \"" + to_string(p.n) +
         "\", \"sign\": " + std::to_string(p.sign) + ", \"F\": " + fmt(p.F()) +
         ", \"G\": " + fmt(p.G()) + ", \"dim\": " + std::to_string(p.dim()) + "}";
}

std::string iso3_params_json(const Iso3Params& q, const HalfInt* jtop, std::int64_t dim) {
  std::string s = "{\"p2\": " + fmt(q.p2) + ", \"C\": " + fmt(q.C()) + ", \"j0\": \"" +
                  to_string(q.j0) + "\", \"sign\": " + std::to_string(q.sign);
  if (jtop) s += ", \"jtop\": \"" + to_string(*jtop) + "\", \"dim\": " + std::to_string(dim);
  return s + "}";
}

std::string element_json(const AlgebraElement& x) {
  std::string s = "[";
  bool first = true;
  for (const auto& [g, cf] : x.terms()) {
    if (!first) s += ", ";
    first = false;
    s += "[\"" + token_name(g) + "\", " + fmt(cf.real()) + ", " + fmt(cf.imag()) + "]";
  }
  return s + "]";
}

// ---------------------------------------------------------------------------
// dump

std::string matrix_json(const std::string& algebra, const std::string& params,
                        const AlgebraElement& x, const std::vector<BasisState>& states,
                        const RepMatrix& m) {
  std::string s = "{\n";
  s += "  \"algebra\": \"" + algebra + "\",\n";
  s += "  \"params\": " + params + ",\n";
  s += "  \"element\": " + element_json(x) + ",\n";
  s += "  \"dim\": " + std::to_string(m.dim()) + ",\n";
  s += "  \"basis\": [";
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) s += ", ";
    s += "[" + std::to_string(states[i].j.twice()) + ", " + std::to_string(states[i].m.twice()) +
         "]";
  }
  s += "],\n";
  s += "  \"entries\": [";
  const auto& es = m.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    s += (i ? ",\n    " : "\n    ");
    s += "[" + std::to_string(es[i].row) + ", " + std::to_string(es[i].col) + ", " +
         fmt(es[i].value.real()) + ", " + fmt(es[i].value.imag()) + "]";
  }
  s += es.empty() ? "]\n" : "\n  ]\n";
  return s + "}\n";
}

std::string matrix_csv(const RepMatrix& m) {
  std::string s = "row,col,re,im\n";
  for (const Triplet& t : m.entries())
    s += std::to_string(t.row) + "," + std::to_string(t.col) + "," + fmt(t.value.real()) + "," +
         fmt(t.value.imag()) + "\n";
  return s;
}

int run_dump(const AlgebraOpts& a, const std::string& gen, const OutputOpts& out) {
  require_format(out, {"json", "csv"});
  AlgebraElement x = parse_element(gen);
  std::int64_t cap = dim_cap();
  if (a.algebra == "so4") {
    So4Params p = so4_params_from_flags(a);
    RepMatrix m = matrix(p, x, cap);
    emit(out.out_path, out.format == "json"
                           ? matrix_json("so4", so4_params_json(p), x, p.basis().states(), m)
                           : matrix_csv(m));
    return 0;
  }
  Iso3Params q = iso3_params_from_flags(a);
  if (a.jmax.empty()) throw ParameterError("iso3 dump needs --jmax (finite window)");
  TruncatedRep t = TruncatedRep::make(q, parse_half_int(a.jmax));
  RepMatrix m = truncated_matrix(t, x, cap);
  emit(out.out_path,
       out.format == "json"
           ? matrix_json("iso3", iso3_params_json(q, &t.jtop, t.dim()), x,
                         t.basis().states(), m)
           : matrix_csv(m));
  return 0;
}

// ---------------------------------------------------------------------------
// check

struct CheckLine {
  std::string name;
  double residual;
  double tolerance;
  bool pass() const { return residual <= tolerance; }
};

double selection_residual(const RepMatrix& m, const std::vector<BasisState>& states,
                          G g) {
  int djmax_twice = is_boost(g) ? 2 : 0;
  GenForm f = form_of(g);
  double worst = 0.0;
  for (const Triplet& t : m.entries()) {
    const BasisState& r = states[static_cast<std::size_t>(t.row)];
    const BasisState& c = states[static_cast<std::size_t>(t.col)];
    std::int64_t dm = (r.m - c.m).twice();
    std::int64_t dj = (r.j - c.j).twice();
    bool m_ok = (f == GenForm::Axis3)  ? dm == 0
                : (f == GenForm::Plus) ? dm == 2
                : (f == GenForm::Minus)
                    ? dm == -2
                    : (dm == 2 || dm == -2);
    bool j_ok = std::abs(dj) <= djmax_twice;
    if (!m_ok || !j_ok) worst = std::max(worst, std::abs(t.value));
  }
  return worst;
}

RepMatrix perturb_corner(const RepMatrix& m) {
  std::vector<Triplet> ts = m.entries();
  ts.push_back({0, 0, Complex(1.0, 0.0)});
  return RepMatrix::from_triplets(m.dim(), std::move(ts));
}

constexpr std::array<G, 4> kSo4Ladders = {G::Mplus, G::Mminus, G::Nplus, G::Nminus};
constexpr std::array<G, 4> kIso3Ladders = {G::Jplus, G::Jminus, G::Pplus, G::Pminus};

std::vector<CheckLine> so4_check_lines(const So4Params& p, std::int64_t cap, bool inject) {
  std::vector<CheckLine> out;
  StructureTable table = so4_table();
  out.push_back({"structure_antisymmetry", check_antisymmetry(table), 1e-14});
  out.push_back({"structure_jacobi", check_jacobi(table), 1e-14});

  std::map<G, RepMatrix> mats;
  for (G g : kSo4Basis) mats.emplace(g, matrix(p, g, cap));
  for (G g : kSo4Ladders) mats.emplace(g, matrix(p, g, cap));
  if (inject) mats.at(G::M1) = perturb_corner(mats.at(G::M1));

  double d = static_cast<double>(p.dim());
  double closure = 0.0;
  for (std::size_t i = 0; i < kSo4Basis.size(); ++i)
    for (std::size_t j = i + 1; j < kSo4Basis.size(); ++j) {
      RepMatrix lhs = commutator(mats.at(kSo4Basis[i]), mats.at(kSo4Basis[j]));
      RepMatrix rhs = RepMatrix::zero(p.dim());
      AlgebraElement br = table.bracket(kSo4Basis[i], kSo4Basis[j]);
      for (const auto& [g, cf] : br.terms()) rhs = rhs + cf * mats.at(g);
      closure = std::max(closure, max_abs_diff(lhs, rhs));
    }
  out.push_back({"commutator_closure", closure, 1e-10 * d});

  const G ms[3] = {G::M1, G::M2, G::M3};
  const G ns[3] = {G::N1, G::N2, G::N3};
  RepMatrix mn = RepMatrix::zero(p.dim());
  RepMatrix f2 = RepMatrix::zero(p.dim());
  for (int i = 0; i < 3; ++i) {
    mn = mn + matmul(mats.at(ms[i]), mats.at(ns[i]));
    f2 = f2 + matmul(mats.at(ms[i]), mats.at(ms[i])) + matmul(mats.at(ns[i]), mats.at(ns[i]));
  }
  f2 = Complex(0.5, 0.0) * f2;
  out.push_back({"casimir_mn_scalar", scalar_deviation(mn, Complex(p.G(), 0.0)),
                 1e-10 * (1.0 + std::fabs(p.G()))});
  out.push_back({"casimir_f_scalar", scalar_deviation(f2, Complex(p.F(), 0.0)),
                 1e-10 * (1.0 + p.F())});

  double herm = 0.0;
  for (G g : kSo4Basis) herm = std::max(herm, hermiticity_residual(mats.at(g)));
  out.push_back({"hermiticity", herm, 1e-13});

  double adj = std::max(max_abs_diff(mats.at(G::Mminus), mats.at(G::Mplus).adjoint()),
                        max_abs_diff(mats.at(G::Nminus), mats.at(G::Nplus).adjoint()));
  out.push_back({"ladder_adjointness", adj, 0.0});

  std::vector<BasisState> states = p.basis().states();
  double sel = 0.0;
  for (const auto& [g, m] : mats) sel = std::max(sel, selection_residual(m, states, g));
  out.push_back({"selection_rules", sel, 0.0});
  return out;
}

std::vector<CheckLine> iso3_check_lines(const TruncatedRep& t, std::int64_t cap, bool inject) {
  if (t.jtop < t.params.j0 + 1)
    throw ParameterError("interior checks need at least two shells; raise --jmax");
  std::vector<CheckLine> out;
  StructureTable table = iso3_table();
  out.push_back({"structure_antisymmetry", check_antisymmetry(table), 1e-14});
  out.push_back({"structure_jacobi", check_jacobi(table), 1e-14});

  std::map<G, RepMatrix> mats;
  for (G g : kIso3Basis) mats.emplace(g, truncated_matrix(t, g, cap));
  for (G g : kIso3Ladders) mats.emplace(g, truncated_matrix(t, g, cap));
  if (inject) mats.at(G::J1) = perturb_corner(mats.at(G::J1));

  std::vector<BasisState> states = t.basis().states();
  HalfInt interior_top = t.jtop - 1;
  auto interior = [&states, interior_top](std::int64_t r) {
    return states[static_cast<std::size_t>(r)].j <= interior_top;
  };

  double d = static_cast<double>(t.dim());
  double closure = 0.0;
  for (std::size_t i = 0; i < kIso3Basis.size(); ++i)
    for (std::size_t j = i + 1; j < kIso3Basis.size(); ++j) {
      RepMatrix lhs = commutator(mats.at(kIso3Basis[i]), mats.at(kIso3Basis[j]));
      RepMatrix rhs = RepMatrix::zero(t.dim());
      AlgebraElement br = table.bracket(kIso3Basis[i], kIso3Basis[j]);
      for (const auto& [g, cf] : br.terms()) rhs = rhs + cf * mats.at(g);
      closure = std::max(closure,
                         max_abs_diff(restrict_to(lhs, interior, interior),
                                      restrict_to(rhs, interior, interior)));
    }
  out.push_back({"interior_commutator_closure", closure, 1e-10 * d});

  const G js[3] = {G::J1, G::J2, G::J3};
  const G ps[3] = {G::P1, G::P2, G::P3};
  RepMatrix p2sum = RepMatrix::zero(t.dim());
  RepMatrix jpsum = RepMatrix::zero(t.dim());
  for (int i = 0; i < 3; ++i) {
    p2sum = p2sum + matmul(mats.at(ps[i]), mats.at(ps[i]));
    jpsum = jpsum + matmul(mats.at(js[i]), mats.at(ps[i]));
  }
  out.push_back({"interior_casimir_p2",
                 scalar_deviation(p2sum, Complex(t.params.p2, 0.0), interior),
                 1e-10 * (1.0 + t.params.p2)});
  out.push_back({"interior_casimir_jp",
                 scalar_deviation(jpsum, Complex(t.params.C(), 0.0), interior),
                 1e-10 * (1.0 + std::fabs(t.params.C()))});

  double herm = 0.0;
  for (G g : kIso3Basis) herm = std::max(herm, hermiticity_residual(mats.at(g)));
  out.push_back({"hermiticity", herm, 1e-13});

  double adj = std::max(max_abs_diff(mats.at(G::Jminus), mats.at(G::Jplus).adjoint()),
                        max_abs_diff(mats.at(G::Pminus), mats.at(G::Pplus).adjoint()));
  out.push_back({"ladder_adjointness", adj, 0.0});

  double sel = 0.0;
  for (const auto& [g, m] : mats) sel = std::max(sel, selection_residual(m, states, g));
  out.push_back({"selection_rules", sel, 0.0});
  return out;
}

std::string check_json(const std::string& algebra, const std::string& params,
                       const std::vector<CheckLine>& lines) {
  bool all = true;
  std::string s = "{\n";
  s += "  \"algebra\": \"" + algebra + "\",\n";
  s += "  \"params\": " + params + ",\n";
  s += "  \"checks\": [\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    all = all && lines[i].pass();
    s += "    {\"name\": \"" + lines[i].name + "\", \"residual\": " + fmt(lines[i].residual) +
         ", \"tolerance\": " + fmt(lines[i].tolerance) +
         ", \"pass\": " + fmt_bool(lines[i].pass()) + "}";
    s += (i + 1 < lines.size()) ? ",\n" : "\n";
  }
  s += "  ],\n";
  s += "  \"pass\": " + fmt_bool(all) + "\n";
  return s + "}\n";
}

int run_check(const AlgebraOpts& a, bool inject, const OutputOpts& out) {
  require_format(out, {"json"});
  std::int64_t cap = dim_cap();
  std::vector<CheckLine> lines;
  std::string params;
  if (a.algebra == "so4") {
    So4Params p = so4_params_from_flags(a);
    lines = so4_check_lines(p, cap, inject);
    params = so4_params_json(p);
  } else {
    Iso3Params q = iso3_params_from_flags(a);
    if (a.jmax.empty()) throw ParameterError("iso3 check needs --jmax (finite window)");
    TruncatedRep t = TruncatedRep::make(q, parse_half_int(a.jmax));
    lines = iso3_check_lines(t, cap, inject);
    params = iso3_params_json(q, &t.jtop, t.dim());
  }
  bool all = true;
  for (const CheckLine& l : lines) all = all && l.pass();
  emit(out.out_path, check_json(a.algebra, params, lines));
  return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// contract

struct ContractOpts {
  std::string p2, C, n_start, n_end, window_jmax;
  std::string step_factor = "2";
};

std::optional<HalfInt> snap_down_to_lattice(HalfInt j0, double v) {
  auto t = static_cast<std::int64_t>(std::floor(2.0 * v + 1e-9));
  if ((t - j0.twice()) % 2 != 0) t -= 1;
  if (t < j0.twice()) return std::nullopt;
  return HalfInt::from_twice(t);
}

struct SlopeInfo {
  std::string kind;  // "exact", "fitted" or "insufficient"
  double slope = 0.0;
  double residual = 0.0;
  int points = 0;
};

// Errors at or below this are floating-point noise around an algebraically
// exact limit, not data for a rate fit.
constexpr double kExactFloor = 1e-14;

SlopeInfo slope_for(const std::vector<ConvergenceRecord>& records, G g) {
  int positive = 0;
  for (const ConvergenceRecord& r : records)
    if (r.error_for(g) > kExactFloor) ++positive;
  if (positive == 0) return {"exact", 0.0, 0.0, 0};
  if (positive < 4) return {"insufficient", 0.0, 0.0, positive};
  RateFit f = rate_fit(records, g, kExactFloor);
  return {"fitted", f.slope, f.residual, f.points};
}

int run_contract(const ContractOpts& o, const OutputOpts& out) {
  require_format(out, {"json", "csv"});
  Iso3Params target = Iso3Params::from_invariants(parse_double_flag("--p2", o.p2),
                                                  parse_double_flag("--C", o.C));
  HalfInt n0 = parse_half_int(o.n_start);
  HalfInt n1 = parse_half_int(o.n_end);
  HalfInt window = parse_half_int(o.window_jmax);
  double factor = parse_double_flag("--n-step-factor", o.step_factor);
  if (factor <= 1.0) throw ParameterError("--n-step-factor must be > 1");
  if (n1 < n0) throw ParameterError("--n-end must be >= --n-start");
  if (!(window < n0))
    throw ParameterError("--window-jmax = " + to_string(window) +
                         " must be smaller than --n-start = " + to_string(n0));

  std::vector<HalfInt> ns;
  for (double v = n0.value(); v <= n1.value() + 1e-9; v *= factor) {
    std::optional<HalfInt> n = snap_down_to_lattice(target.j0, v);
    if (n && *n <= n1 && window < *n && (ns.empty() || ns.back() != *n)) ns.push_back(*n);
  }
  if (ns.empty())
    throw ParameterError("no admissible n between " + to_string(n0) + " and " + to_string(n1));

  std::vector<ConvergenceRecord> records = convergence_table(target, ns, window);

  std::vector<std::string> cols = {"n", "epsilon"};
  for (G g : kTrackedGenerators) cols.push_back("err_" + token_name(g));

  if (out.format == "csv") {
    std::string s;
    for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
    s += "\n";
    for (const ConvergenceRecord& r : records) {
      s += to_string(r.n) + "," + fmt(r.epsilon);
      for (double e : r.errors) s += "," + fmt(e);
      s += "\n";
    }
    // Trailing slopes record: n = -1 marks it, epsilon slot is 0, each error
    // column carries the fitted slope (0 when exact or insufficient).
    s += "-1," + fmt(0.0);
    for (G g : kTrackedGenerators) s += "," + fmt(slope_for(records, g).slope);
    s += "\n";
    emit(out.out_path, s);
    return 0;
  }

  std::string s = "{\n";
  s += "  \"p2\": " + fmt(target.p2) + ",\n";
  s += "  \"C\": " + fmt(target.C()) + ",\n";
  s += "  \"j0\": \"" + to_string(target.j0) + "\",\n";
  s += "  \"sign\": " + std::to_string(target.sign) + ",\n";
  s += "  \"window_jmax\": \"" + to_string(window) + "\",\n";
  s += "  \"columns\": [";
  for (std::size_t i = 0; i < cols.size(); ++i)
    s += std::string(i ? ", " : "") + "\"" + cols[i] + "\"";
  s += "],\n";
  s += "  \"rows\": [\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ConvergenceRecord& r = records[i];
    s += "    [\"" + to_string(r.n) + "\", " + fmt(r.epsilon);
    for (double e : r.errors) s += ", " + fmt(e);
    s += (i + 1 < records.size()) ? "],\n" : "]\n";
  }
  s += "  ],\n";
  s += "  \"slopes\": {";
  for (std::size_t i = 0; i < kTrackedGenerators.size(); ++i) {
    SlopeInfo si = slope_for(records, kTrackedGenerators[i]);
    s += (i ? ", " : "");
    s += "\"err_" + token_name(kTrackedGenerators[i]) + "\": {\"kind\": \"" + si.kind +
         "\", \"slope\": " + fmt(si.slope) + ", \"residual\": " + fmt(si.residual) +
         ", \"points\": " + std::to_string(si.points) + "}";
  }
  s += "}\n";
  s += "}\n";
  emit(out.out_path, s);
  return 0;
}

// ---------------------------------------------------------------------------
// grid

struct GridPoint {
  HalfInt k, l;
  So4Params p;
  HalfInt diagonal;  // k - l; constant along a line of fixed j0
};

std::vector<GridPoint> grid_points(HalfInt kmax) {
  std::vector<GridPoint> pts;
  for (std::int64_t tk = 0; tk <= kmax.twice(); ++tk)
    for (std::int64_t tl = 0; tl <= kmax.twice(); ++tl) {
      HalfInt k = HalfInt::from_twice(tk), l = HalfInt::from_twice(tl);
      pts.push_back({k, l, params_from_kl({k, l}), k - l});
    }
  return pts;
}

std::string grid_json(HalfInt kmax, const std::vector<GridPoint>& pts) {
  std::string s = "{\n";
  s += "  \"kmax\": \"" + to_string(kmax) + "\",\n";
  s += "  \"points\": [\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const GridPoint& g = pts[i];
    s += "    {\"k\": \"" + to_string(g.k) + "\", \"l\": \"" + to_string(g.l) +
         "\", \"j0\": \"" + to_string(g.p.j0) + "\", \"n\": \"" + to_string(g.p.n) +
         "\", \"sign\": " + std::to_string(g.p.sign) + ", \"F\": " + fmt(g.p.F()) +
         ", \"G\": " + fmt(g.p.G()) + ", \"dim\": " + std::to_string(g.p.dim()) +
         ", \"diagonal\": \"" + to_string(g.diagonal) + "\"}";
    s += (i + 1 < pts.size()) ? ",\n" : "\n";
  }
  s += "  ],\n";
  s += "  \"diagonals\": [\n";
  std::int64_t tk = kmax.twice();
  bool first = true;
  for (std::int64_t td = -tk; td <= tk; ++td) {
    HalfInt d = HalfInt::from_twice(td);
    std::string row = "    {\"diagonal\": \"" + to_string(d) + "\", \"j0\": \"" +
                      to_string(abs(d)) + "\", \"points\": [";
    bool firstp = true;
    for (const GridPoint& g : pts)  // ordered by (k, l), so n increases along each diagonal
      if (g.diagonal == d) {
        if (!firstp) row += ", ";
        firstp = false;
        row += "[\"" + to_string(g.k) + "\", \"" + to_string(g.l) + "\"]";
      }
    row += "]}";
    if (!first) s += ",\n";
    first = false;
    s += row;
  }
  s += "\n  ]\n";
  return s + "}\n";
}

std::string grid_csv(const std::vector<GridPoint>& pts) {
  std::string s = "k,l,j0,n,sign,F,G,dim,diagonal\n";
  for (const GridPoint& g : pts)
    s += to_string(g.k) + "," + to_string(g.l) + "," + to_string(g.p.j0) + "," +
         to_string(g.p.n) + "," + std::to_string(g.p.sign) + "," + fmt(g.p.F()) + "," +
         fmt(g.p.G()) + "," + std::to_string(g.p.dim()) + "," + to_string(g.diagonal) + "\n";
  return s;
}

// The k axis runs to the right, the l axis up; each diagonal of constant
// j0 = |k - l| is drawn with an arrow pointing along increasing n. Points
// with k > l carry G > 0, points with k < l carry G < 0.
std::string grid_svg(HalfInt kmax, const std::vector<GridPoint>& pts) {
  const double cell = 60.0, margin = 60.0, legend_w = 190.0;
  double span = kmax.value() * cell;
  double w = 2 * margin + span + legend_w;
  double h = 2 * margin + span;
  auto X = [&](double k) { return margin + k * cell; };
  auto Y = [&](double l) { return h - margin - l * cell; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_coord(w) + "\" height=\"" +
       fmt_coord(h) + "\" viewBox=\"0 0 " + fmt_coord(w) + " " + fmt_coord(h) + "\">\n";
  s += "  <defs>\n"
       "    <marker id=\"arrow\" markerWidth=\"9\" markerHeight=\"8\" refX=\"8\" refY=\"4\" "
       "orient=\"auto\">\n"
       "      <path d=\"M0,0 L9,4 L0,8 z\" fill=\"#333\"/>\n"
       "    </marker>\n"
       "  </defs>\n";

  // axes
  s += "  <line x1=\"" + fmt_coord(X(0) - 30) + "\" y1=\"" + fmt_coord(Y(0)) + "\" x2=\"" +
       fmt_coord(X(kmax.value()) + 35) + "\" y2=\"" + fmt_coord(Y(0)) +
       "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  s += "  <line x1=\"" + fmt_coord(X(0)) + "\" y1=\"" + fmt_coord(Y(0) + 30) + "\" x2=\"" +
       fmt_coord(X(0)) + "\" y2=\"" + fmt_coord(Y(kmax.value()) - 35) +
       "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  s += "  <text x=\"" + fmt_coord(X(kmax.value()) + 40) + "\" y=\"" + fmt_coord(Y(0) + 5) +
       "\" font-family=\"sans-serif\" font-size=\"14\">k</text>\n";
  s += "  <text x=\"" + fmt_coord(X(0) - 5) + "\" y=\"" + fmt_coord(Y(kmax.value()) - 42) +
       "\" font-family=\"sans-serif\" font-size=\"14\">l</text>\n";

  // diagonals with j0 <= 1, arrow along increasing n
  auto dash_for = [](std::int64_t tj0) {
    if (tj0 == 0) return std::string("");                           // solid
    if (tj0 == 1) return std::string(" stroke-dasharray=\"2,5\"");  // dotted
    return std::string(" stroke-dasharray=\"9,5\"");                // dashed
  };
  for (std::int64_t td = -2; td <= 2; ++td) {
    if (std::abs(td) > kmax.twice()) continue;
    double d = static_cast<double>(td) / 2.0;
    double k0 = std::max(d, 0.0), l0 = std::max(-d, 0.0);
    double k1 = (d >= 0) ? kmax.value() : kmax.value() + d;
    double l1 = k1 - d;
    double ext = 0.45;  // reach past the last point so the arrowhead is visible
    s += "  <line x1=\"" + fmt_coord(X(k0)) + "\" y1=\"" + fmt_coord(Y(l0)) + "\" x2=\"" +
         fmt_coord(X(k1 + ext)) + "\" y2=\"" + fmt_coord(Y(l1 + ext)) +
         "\" stroke=\"#333\" stroke-width=\"1.2\"" + dash_for(std::abs(td)) +
         " marker-end=\"url(#arrow)\"/>\n";
  }

  for (const GridPoint& g : pts) {
    s += "  <circle cx=\"" + fmt_coord(X(g.k.value())) + "\" cy=\"" +
         fmt_coord(Y(g.l.value())) + "\" r=\"4\" fill=\"#1a1a1a\">";
    s += "<title>k=" + to_string(g.k) + " l=" + to_string(g.l) + " j0=" + to_string(g.p.j0) +
         " n=" + to_string(g.p.n) + " dim=" + std::to_string(g.p.dim()) + "</title>";
    s += "</circle>\n";
  }

  double lx = 2 * margin + span - 10, ly = margin - 20;
  auto legend_line = [&](double row, const std::string& dash, const std::string& label) {
    s += "  <line x1=\"" + fmt_coord(lx) + "\" y1=\"" + fmt_coord(ly + row) + "\" x2=\"" +
         fmt_coord(lx + 40) + "\" y2=\"" + fmt_coord(ly + row) +
         "\" stroke=\"#333\" stroke-width=\"1.2\"" + dash + "/>\n";
    s += "  <text x=\"" + fmt_coord(lx + 48) + "\" y=\"" + fmt_coord(ly + row + 4) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + label + "</text>\n";
  };
  legend_line(0, "", "j0 = 0");
  legend_line(20, " stroke-dasharray=\"2,5\"", "j0 = 1/2");
  legend_line(40, " stroke-dasharray=\"9,5\"", "j0 = 1");
  s += "  <text x=\"" + fmt_coord(lx) + "\" y=\"" + fmt_coord(ly + 68) +
       "\" font-family=\"sans-serif\" font-size=\"12\">arrows: increasing n</text>\n";
  s += "  <text x=\"" + fmt_coord(lx) + "\" y=\"" + fmt_coord(ly + 86) +
       "\" font-family=\"sans-serif\" font-size=\"12\">k &gt; l: G &gt; 0, k &lt; l: G &lt; "
       "0</text>\n";
  s += "</svg>\n";
  return s;
}

int run_grid(const std::string& kmax_s, const OutputOpts& out) {
  require_format(out, {"json", "csv", "svg"});
  HalfInt kmax = parse_half_int(kmax_s);
  if (kmax.twice() < 0) throw ParameterError("--kmax must be >= 0");
  std::vector<GridPoint> pts = grid_points(kmax);
  if (out.format == "json")
    emit(out.out_path, grid_json(kmax, pts));
  else if (out.format == "csv")
    emit(out.out_path, grid_csv(pts));
  else
    emit(out.out_path, grid_svg(kmax, pts));
  return 0;
}

void add_algebra_options(CLI::App* sub, AlgebraOpts& a, bool with_jmax) {
  sub->add_option("algebra", a.algebra, "so4 or iso3")->required();
  sub->add_option("--j0", a.j0, "lowest shell (half-integer, e.g. 1 or 1/2 or 0.5)");
  sub->add_option("--n", a.n, "highest shell of the so4 tower (half-integer)");
  sub->add_option("--sign", a.sign, "sign of G resp. C: +, - or 0");
  sub->add_option("--k", a.k, "left spin label (half-integer), implies --l");
  sub->add_option("--l", a.l, "right spin label (half-integer), implies --k");
  sub->add_option("--p2", a.p2, "iso3 invariant P^2 (positive real)");
  sub->add_option("--C", a.C, "iso3 invariant J.P (real; fixes j0 and sign)");
  if (with_jmax) sub->add_option("--jmax", a.jmax, "truncation shell for iso3 (half-integer)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irreducible representations of so(4) and iso(3), and the Inonu-Wigner "
               "contraction between them"};
  app.require_subcommand(1);

  AlgebraOpts dump_a, check_a;
  std::string dump_gen;
  OutputOpts dump_out, check_out, contract_out, grid_out;
  bool inject = false;
  ContractOpts copts;
  std::string grid_kmax;

  CLI::App* dump = app.add_subcommand("dump", "Print a generator (or weighted sum) matrix");
  add_algebra_options(dump, dump_a, true);
  dump->add_option("--gen", dump_gen, "generator token or NAME[:RE[:IM]],... list")->required();
  dump->add_option("--format", dump_out.format, "json or csv");
  dump->add_option("--out", dump_out.out_path, "output file (default: stdout)");

  CLI::App* check = app.add_subcommand("check", "Run the invariant suite, report residuals");
  add_algebra_options(check, check_a, true);
  check->add_flag("--inject-fault", inject, "corrupt one matrix entry (must make checks fail)");
  check->add_option("--format", check_out.format, "json");
  check->add_option("--out", check_out.out_path, "output file (default: stdout)");

  CLI::App* contract = app.add_subcommand(
      "contract", "Matrix-element convergence table along a contraction sequence");
  contract->add_option("--p2", copts.p2, "target invariant P^2")->required();
  contract->add_option("--C", copts.C, "target invariant J.P")->required();
  contract->add_option("--n-start", copts.n_start, "first tower size (half-integer)")->required();
  contract->add_option("--n-end", copts.n_end, "last tower size (half-integer)")->required();
  contract->add_option("--n-step-factor", copts.step_factor, "geometric step, > 1 (default 2)");
  contract->add_option("--window-jmax", copts.window_jmax,
                       "compare matrix elements on shells j <= this (must be < --n-start)")
      ->required();
  contract->add_option("--format", contract_out.format, "json or csv");
  contract->add_option("--out", contract_out.out_path, "output file (default: stdout)");

  CLI::App* grid = app.add_subcommand("grid", "The (k, l) lattice of representations");
  grid->add_option("--kmax", grid_kmax, "largest k and l (half-integer)")->required();
  grid->add_option("--format", grid_out.format, "json, csv or svg");
  grid->add_option("--out", grid_out.out_path, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (dump->parsed()) {
      if (dump_a.algebra != "so4" && dump_a.algebra != "iso3")
        throw ParameterError("unknown algebra '" + dump_a.algebra + "' (use so4 or iso3)");
      return run_dump(dump_a, dump_gen, dump_out);
    }
    if (check->parsed()) {
      if (check_a.algebra != "so4" && check_a.algebra != "iso3")
        throw ParameterError("unknown algebra '" + check_a.algebra + "' (use so4 or iso3)");
      return run_check(check_a, inject, check_out);
    }
    if (contract->parsed()) return run_contract(copts, contract_out);
    if (grid->parsed()) return run_grid(grid_kmax, grid_out);
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
