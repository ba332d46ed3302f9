#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace liecontract {

using Complex = std::complex<double>;

inline constexpr std::int64_t kDefaultMaxDim = 1'000'000;
inline constexpr std::int64_t kDefaultDenseDim = 4096;

struct Triplet {
  std::int64_t row;
  std::int64_t col;
  Complex value;
};

// Sparse complex matrix with at most one entry per (row, col), kept sorted by
// (row, col). Exact zeros are never stored. Immutable after construction.
class RepMatrix {
 public:
  RepMatrix() = default;
  explicit RepMatrix(std::int64_t dim) : dim_(dim) {}

  static RepMatrix zero(std::int64_t dim) { return RepMatrix(dim); }

  static RepMatrix identity(std::int64_t dim, Complex scale = Complex(1.0, 0.0)) {
    std::vector<Triplet> ts;
    ts.reserve(static_cast<std::size_t>(dim));
    for (std::int64_t i = 0; i < dim; ++i) ts.push_back({i, i, scale});
    return from_triplets(dim, std::move(ts));
  }

  // Merges duplicate coordinates and drops exact zeros.
  static RepMatrix from_triplets(std::int64_t dim, std::vector<Triplet> ts) {
    RepMatrix m(dim);
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
      return std::pair(a.row, a.col) < std::pair(b.row, b.col);
    });
    for (const Triplet& t : ts) {
      if (t.row < 0 || t.row >= dim || t.col < 0 || t.col >= dim)
        throw ParameterError("matrix entry outside the declared dimension");
      if (!m.entries_.empty() && m.entries_.back().row == t.row &&
          m.entries_.back().col == t.col) {
        m.entries_.back().value += t.value;
      } else {
        m.entries_.push_back(t);
      }
    }
    std::erase_if(m.entries_, [](const Triplet& t) { return t.value == Complex(0.0, 0.0); });
    return m;
  }

  std::int64_t dim() const { return dim_; }
  const std::vector<Triplet>& entries() const { return entries_; }

  Complex at(std::int64_t r, std::int64_t c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair(r, c),
                               [](const Triplet& t, const std::pair<std::int64_t, std::int64_t>& k) {
                                 return std::pair(t.row, t.col) < k;
                               });
    if (it != entries_.end() && it->row == r && it->col == c) return it->value;
    return Complex(0.0, 0.0);
  }

  RepMatrix adjoint() const {
    std::vector<Triplet> ts;
    ts.reserve(entries_.size());
    for (const Triplet& t : entries_) ts.push_back({t.col, t.row, std::conj(t.value)});
    return from_triplets(dim_, std::move(ts));
  }

  double max_abs() const {
    double worst = 0.0;
    for (const Triplet& t : entries_) worst = std::max(worst, std::abs(t.value));
    return worst;
  }

  // Row-major dense copy; refuses to materialize large matrices.
  std::vector<Complex> dense(std::int64_t max_dim = kDefaultDenseDim) const {
    if (dim_ > max_dim)
      throw ResourceError("dense conversion of dimension " + std::to_string(dim_) +
                          " exceeds the cap " + std::to_string(max_dim));
    std::vector<Complex> out(static_cast<std::size_t>(dim_ * dim_), Complex(0.0, 0.0));
    for (const Triplet& t : entries_)
      out[static_cast<std::size_t>(t.row * dim_ + t.col)] = t.value;
    return out;
  }

  friend RepMatrix operator+(const RepMatrix& a, const RepMatrix& b) {
    return combine(a, b, Complex(1.0, 0.0));
  }
  friend RepMatrix operator-(const RepMatrix& a, const RepMatrix& b) {
    return combine(a, b, Complex(-1.0, 0.0));
  }
  friend RepMatrix operator*(Complex s, const RepMatrix& a) {
    std::vector<Triplet> ts;
    ts.reserve(a.entries_.size());
    for (const Triplet& t : a.entries_) ts.push_back({t.row, t.col, s * t.value});
    return from_triplets(a.dim_, std::move(ts));
  }

 private:
  static RepMatrix combine(const RepMatrix& a, const RepMatrix& b, Complex sb) {
    if (a.dim_ != b.dim_) throw ParameterError("matrix dimensions differ");
    std::vector<Triplet> ts;
    ts.reserve(a.entries_.size() + b.entries_.size());
    ts.insert(ts.end(), a.entries_.begin(), a.entries_.end());
    for (const Triplet& t : b.entries_) ts.push_back({t.row, t.col, sb * t.value});
    return from_triplets(a.dim_, std::move(ts));
  }

  std::int64_t dim_ = 0;
  std::vector<Triplet> entries_;
};

// Sparse product; cost is O(sum over k of nnz-in-col-k(A) * nnz-in-row-k(B)).
inline RepMatrix matmul(const RepMatrix& a, const RepMatrix& b) {
  if (a.dim() != b.dim()) throw ParameterError("matrix dimensions differ");
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, Complex>>> brows;
  for (const Triplet& t : b.entries()) brows[t.row].emplace_back(t.col, t.value);
  std::map<std::pair<std::int64_t, std::int64_t>, Complex> acc;
  for (const Triplet& t : a.entries()) {
    auto it = brows.find(t.col);
    if (it == brows.end()) continue;
    for (const auto& [c, v] : it->second) acc[{t.row, c}] += t.value * v;
  }
  std::vector<Triplet> ts;
  ts.reserve(acc.size());
  for (const auto& [rc, v] : acc) ts.push_back({rc.first, rc.second, v});
  return RepMatrix::from_triplets(a.dim(), std::move(ts));
}

inline RepMatrix commutator(const RepMatrix& a, const RepMatrix& b) {
  return matmul(a, b) - matmul(b, a);
}

inline double max_abs_diff(const RepMatrix& a, const RepMatrix& b) { return (a - b).max_abs(); }

inline double hermiticity_residual(const RepMatrix& a) { return max_abs_diff(a, a.adjoint()); }

// Keep only entries whose row and column both satisfy the predicates.
template <class RowPred, class ColPred>
RepMatrix restrict_to(const RepMatrix& a, RowPred&& rows, ColPred&& cols) {
  std::vector<Triplet> ts;
  for (const Triplet& t : a.entries())
    if (rows(t.row) && cols(t.col)) ts.push_back(t);
  return RepMatrix::from_triplets(a.dim(), std::move(ts));
}

// Max |(A - s*I)(r, c)| over rows selected by the predicate (all columns).
// Absent diagonal entries on selected rows count as |s|.
template <class RowPred>
double scalar_deviation(const RepMatrix& a, Complex s, RowPred&& rows) {
  double worst = 0.0;
  std::vector<char> diag_seen(static_cast<std::size_t>(a.dim()), 0);
  for (const Triplet& t : a.entries()) {
    if (!rows(t.row)) continue;
    if (t.row == t.col) {
      diag_seen[static_cast<std::size_t>(t.row)] = 1;
      worst = std::max(worst, std::abs(t.value - s));
    } else {
      worst = std::max(worst, std::abs(t.value));
    }
  }
  for (std::int64_t r = 0; r < a.dim(); ++r)
    if (rows(r) && !diag_seen[static_cast<std::size_t>(r)])
      worst = std::max(worst, std::abs(s));
  return worst;
}

inline double scalar_deviation(const RepMatrix& a, Complex s) {
  return scalar_deviation(a, s, [](std::int64_t) { return true; });
}

}  // namespace liecontract
