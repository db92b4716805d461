#pragma once

// Standing hypotheses on A (Z·A = Z^d, N·A positive) and the face lattice of
// the cone Q₊A, with faces recorded as sets of column indices.

#include "gkz/error.hpp"
#include "gkz/exactlat.hpp"
#include "gkz/polyring.hpp"

#include <algorithm>
#include <optional>
#include <iterator>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace gkz {

using ColumnSet = std::vector<std::size_t>;  // sorted, 0-based

struct Face {
  ColumnSet columns;
  std::size_t dim = 0;
  /// h with h·a_j = 0 on the face and h·a_j > 0 off it; absent for A itself.
  std::optional<IntVector> normal;

  [[nodiscard]] bool is_full() const { return !normal.has_value(); }
  [[nodiscard]] bool contains(std::size_t j) const {
    return std::binary_search(columns.begin(), columns.end(), j);
  }

  friend bool operator==(const Face &, const Face &) = default;
};

inline Int dot(const IntVector &a, const IntVector &b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace detail {

inline std::vector<ColumnSet> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<ColumnSet> out;
  if (k > n) return out;
  ColumnSet c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

// Primitive normals of the supporting hyperplanes spanned by rank-(d−1) column
// subsets, oriented so the whole cone lies on the nonnegative side.
inline std::vector<IntVector> facet_normals(const IntMatrix &A) {
  const std::size_t d = A.rows(), n = A.cols();
  std::set<IntVector> found;
  if (d == 0) return {};
  for (const auto &sub : subsets_of_size(n, d - 1)) {
    IntMatrix rows = A.columns(sub).transpose();
    if (rank(rows) != d - 1) continue;
    auto ker = kernel_lattice(rows);
    IntVector h = ker.vector(0);
    bool pos = false, neg = false;
    for (std::size_t j = 0; j < n; ++j) {
      Int v = dot(h, A.column(j));
      pos = pos || v > 0;
      neg = neg || v < 0;
    }
    if (pos && neg) continue;
    if (neg)
      for (auto &x : h) x = -x;
    if (!pos && !neg) continue;  // every column on the hyperplane: rank < d
    found.insert(h);
  }
  return {found.begin(), found.end()};
}

} // namespace detail

/// A matrix satisfying the standing hypotheses, with its normal forms and
/// face lattice computed once at validation.
class GkzMatrix {
public:
  [[nodiscard]] const IntMatrix &matrix() const noexcept { return a_; }
  [[nodiscard]] std::size_t d() const noexcept { return a_.rows(); }
  [[nodiscard]] std::size_t n() const noexcept { return a_.cols(); }
  [[nodiscard]] IntVector column(std::size_t j) const { return a_.column(j); }
  [[nodiscard]] const SnfResult &smith() const noexcept { return snf_; }
  [[nodiscard]] const std::vector<IntVector> &facet_normals() const noexcept { return facets_; }
  /// An integral h with h·a_j > 0 for every column.
  [[nodiscard]] const IntVector &positive_functional() const noexcept { return positive_; }
  /// Sorted by (dim, columns); starts with the empty face and ends with A.
  [[nodiscard]] const std::vector<Face> &faces() const noexcept { return faces_; }

  /// Positive grading weights w_j = h·a_j.
  [[nodiscard]] std::vector<Rat> grading() const {
    std::vector<Rat> w;
    for (std::size_t j = 0; j < n(); ++j) w.emplace_back(dot(positive_, column(j)));
    return w;
  }

  [[nodiscard]] const Face *find_face(const ColumnSet &cols) const {
    for (const auto &f : faces_)
      if (f.columns == cols) return &f;
    return nullptr;
  }
  [[nodiscard]] const Face &face(const ColumnSet &cols) const {
    if (const Face *f = find_face(cols)) return *f;
    throw not_a_face(cols);
  }

  /// A column subset whose positive hull is a face: it must meet every ray of
  /// the smallest lattice face containing it. The result keeps the given
  /// columns and borrows the normal of that lattice face.
  [[nodiscard]] Face face_selector(ColumnSet cols) const {
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    for (auto c : cols)
      if (c >= n()) throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(c + 1) + " of " + std::to_string(n()));
    if (const Face *f = find_face(cols)) return *f;
    const Face *hull = nullptr;
    for (const auto &f : faces_)
      if (std::includes(f.columns.begin(), f.columns.end(), cols.begin(), cols.end())) {
        hull = &f;
        break;
      }
    bool ok = hull != nullptr;
    for (const auto &ray : faces_) {
      if (!ok) break;
      if (ray.dim != 1 || !std::includes(hull->columns.begin(), hull->columns.end(), ray.columns.begin(), ray.columns.end()))
        continue;
      ok = std::any_of(cols.begin(), cols.end(), [&](std::size_t c) { return ray.contains(c); });
    }
    if (!ok) throw not_a_face(cols);
    Face out{cols, hull->dim, hull->normal};
    return out;
  }

  friend GkzMatrix validate(const IntMatrix &A);

private:
  static Error not_a_face(const ColumnSet &cols) {
    std::string s;
    for (auto c : cols) s += (s.empty() ? "" : ",") + std::to_string(c + 1);
    return Error(ErrorKind::NotAFace, "{" + s + "} is not a face");
  }

  IntMatrix a_;
  SnfResult snf_;
  std::vector<IntVector> facets_;
  IntVector positive_;
  std::vector<Face> faces_;
};

/// Every failed hypothesis, in the order ZeroColumn, NotFullLattice, NotPointed.
inline std::vector<ErrorKind> diagnose(const IntMatrix &A) {
  std::vector<ErrorKind> out;
  for (std::size_t j = 0; j < A.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < A.rows(); ++i) zero = zero && A(i, j) == 0;
    if (zero) {
      out.push_back(ErrorKind::ZeroColumn);
      break;
    }
  }
  auto s = snf(A);
  bool full = s.rank == A.rows();
  for (const auto &x : s.divisors()) full = full && x == 1;
  if (!full) out.push_back(ErrorKind::NotFullLattice);

  bool pointed = false;
  if (s.rank == A.rows()) {
    IntVector h(A.rows());
    for (const auto &f : detail::facet_normals(A))
      for (std::size_t i = 0; i < h.size(); ++i) h[i] += f[i];
    pointed = A.rows() > 0;
    for (std::size_t j = 0; j < A.cols(); ++j) pointed = pointed && dot(h, A.column(j)) > 0;
  }
  if (!pointed) out.push_back(ErrorKind::NotPointed);
  return out;
}

inline GkzMatrix validate(const IntMatrix &A) {
  if (A.rows() == 0 || A.cols() == 0)
    throw Error(ErrorKind::DimensionMismatch, "matrix must have at least one row and column");
  auto failures = diagnose(A);
  if (!failures.empty()) {
    switch (failures.front()) {
    case ErrorKind::ZeroColumn:
      throw Error(ErrorKind::ZeroColumn, "A has a zero column");
    case ErrorKind::NotFullLattice:
      throw Error(ErrorKind::NotFullLattice, "the columns of A do not generate Z^d");
    default:
      throw Error(ErrorKind::NotPointed, "no linear functional is positive on every column");
    }
  }

  GkzMatrix g;
  g.a_ = A;
  g.snf_ = snf(A);
  g.facets_ = detail::facet_normals(A);
  const std::size_t d = A.rows(), n = A.cols();
  g.positive_.assign(d, Int(0));
  for (const auto &f : g.facets_)
    for (std::size_t i = 0; i < d; ++i) g.positive_[i] += f[i];

  std::vector<ColumnSet> facet_cols;
  for (const auto &h : g.facets_) {
    ColumnSet c;
    for (std::size_t j = 0; j < n; ++j)
      if (dot(h, A.column(j)) == 0) c.push_back(j);
    facet_cols.push_back(std::move(c));
  }

  ColumnSet all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j;
  std::set<ColumnSet> lattice{all};
  std::vector<ColumnSet> queue{all};
  while (!queue.empty()) {
    ColumnSet cur = std::move(queue.back());
    queue.pop_back();
    for (const auto &fc : facet_cols) {
      ColumnSet meet;
      std::set_intersection(cur.begin(), cur.end(), fc.begin(), fc.end(), std::back_inserter(meet));
      if (lattice.insert(meet).second) queue.push_back(std::move(meet));
    }
  }

  for (const auto &cols : lattice) {
    Face f;
    f.columns = cols;
    f.dim = cols.empty() ? 0 : rank(A.columns(cols));
    if (cols != all) {
      IntVector h(d);
      for (std::size_t k = 0; k < g.facets_.size(); ++k)
        if (std::includes(facet_cols[k].begin(), facet_cols[k].end(), cols.begin(), cols.end()))
          for (std::size_t i = 0; i < d; ++i) h[i] += g.facets_[k][i];
      f.normal = h;
    }
    g.faces_.push_back(std::move(f));
  }
  std::sort(g.faces_.begin(), g.faces_.end(), [](const Face &x, const Face &y) {
    return std::tie(x.dim, x.columns) < std::tie(y.dim, y.columns);
  });
  return g;
}

inline const std::vector<Face> &faces(const GkzMatrix &G) { return G.faces(); }

/// Reduced Gröbner basis of the toric ideal I_A.
inline GroebnerBasis toric_ideal(const GkzMatrix &G, const TermOrder &ord = TermOrder::grevlex()) {
  return toric_ideal(G.matrix(), G.grading(), ord);
}

/// Generators of the prime I_A^F = ⟨I_F, ∂_j : j ∉ F⟩ in the variables of A:
/// first the toric binomials of the submatrix F, then the off-face variables.
inline std::vector<Binomial> face_prime_generators(const GkzMatrix &G, const ColumnSet &F,
                                                   const TermOrder &ord = TermOrder::grevlex()) {
  const Face &face = G.face(F);
  const std::size_t n = G.n();
  std::vector<Binomial> out;
  if (!face.columns.empty()) {
    auto w = G.grading();
    std::vector<Rat> wf;
    for (auto j : face.columns) wf.push_back(w[j]);
    auto sub = toric_ideal(G.matrix().columns(face.columns), wf, ord);
    auto embed = [&](const Monomial &m) {
      Monomial r(n);
      for (std::size_t k = 0; k < face.columns.size(); ++k) r[face.columns[k]] = m[k];
      return r;
    };
    for (const auto &g : sub.generators)
      out.push_back({embed(g.lead), g.tail ? std::optional(embed(*g.tail)) : std::nullopt});
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!face.contains(j)) out.push_back({Monomial::variable(n, j), std::nullopt});
  return out;
}

} // namespace gkz
