#pragma once

// Exact integer and rational linear algebra: Smith and Hermite normal forms,
// integer kernels, lattice saturation and complements, rational solving.
//
// Entries are GMP integers, so nothing here can overflow. Every routine is a
// pure function of its arguments; pivoting is fixed (smallest nonzero
// absolute value, ties broken by lowest row-major position) so outputs are
// reproducible bit for bit.

#include "gkz/error.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gkz {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

/// Dense row-major integer matrix. Zero rows or zero columns are legal.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
      if (row.size() != cols_)
        throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a rows×cols.size() matrix whose columns are the given vectors.
  static IntMatrix from_columns(std::size_t rows,
                                const std::vector<IntVector> &cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows)
        throw Error(ErrorKind::DimensionMismatch, "column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  Int &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  [[nodiscard]] IntVector column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  [[nodiscard]] IntVector row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  /// Submatrix formed by the listed columns, in the listed order.
  [[nodiscard]] IntMatrix columns(std::span<const std::size_t> which) const {
    IntMatrix m(rows_, which.size());
    for (std::size_t k = 0; k < which.size(); ++k)
      for (std::size_t i = 0; i < rows_; ++i) m(i, k) = (*this)(i, which[k]);
    return m;
  }

  [[nodiscard]] IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int &factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int &factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

inline IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "matrix product");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline IntVector operator*(const IntMatrix &a, const IntVector &x) {
  if (a.cols() != x.size())
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
  IntVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

inline RatVector to_rational(const IntVector &v) {
  return {v.begin(), v.end()};
}

inline bool is_integral(const RatVector &v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rat &q) { return q.get_den() == 1; });
}

inline IntVector to_integral(const RatVector &v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto &q : v) {
    if (q.get_den() != 1)
      throw Error(ErrorKind::UnsupportedInput, "vector is not integral");
    out.push_back(q.get_num());
  }
  return out;
}

/// Scales a rational vector to a primitive integer vector whose first nonzero
/// entry is positive. The zero vector is returned unchanged.
inline IntVector primitive(const RatVector &v) {
  Int l = 1;
  for (const auto &q : v) l = lcm(l, Int(q.get_den()));
  IntVector out(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = Rat(v[i] * l).get_num();
    g = gcd(g, out[i]);
  }
  if (g == 0) return out;
  auto first = std::find_if(out.begin(), out.end(), [](const Int &x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto &x : out) x /= g;
  return out;
}

/// U·M·V = D with U, V unimodular and D diagonal, d_1 | d_2 | … | d_rank.
struct SnfResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  std::size_t rank = 0;

  [[nodiscard]] IntVector divisors() const {
    IntVector out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

struct Position {
  std::size_t row, col;
};

// Smallest nonzero |entry| in the block [t, rows) × [t, cols).
inline std::optional<Position> smallest_entry(const IntMatrix &m, std::size_t t) {
  std::optional<Position> best;
  Int best_abs;
  for (std::size_t i = t; i < m.rows(); ++i)
    for (std::size_t j = t; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      Int a = abs(m(i, j));
      if (!best || a < best_abs) {
        best = Position{i, j};
        best_abs = a;
      }
    }
  return best;
}

} // namespace detail

inline SnfResult snf(const IntMatrix &M) {
  SnfResult r{M, IntMatrix::identity(M.rows()), IntMatrix::identity(M.cols()), 0};
  IntMatrix &D = r.D;
  const std::size_t m = M.rows(), n = M.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool found = false;
    for (;;) {
      auto pivot = detail::smallest_entry(D, t);
      if (!pivot) break;
      found = true;
      D.swap_rows(t, pivot->row);
      r.U.swap_rows(t, pivot->row);
      D.swap_cols(t, pivot->col);
      r.V.swap_cols(t, pivot->col);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q = D(i, t) / D(t, t);
        D.add_row(i, t, -q);
        r.U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q = D(t, j) / D(t, t);
        D.add_col(j, t, -q);
        r.V.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < m && !offending; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      D.add_row(t, *offending, 1);
      r.U.add_row(t, *offending, 1);
    }
    if (!found) break;
    if (D(t, t) < 0) {
      D.negate_row(t);
      r.U.negate_row(t);
    }
    ++r.rank;
  }
  return r;
}

/// Row-style Hermite normal form: H = U·M is in echelon form with positive
/// pivots and entries above each pivot reduced into [0, pivot).
struct HnfResult {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};

inline HnfResult hnf(const IntMatrix &M) {
  HnfResult r{M, IntMatrix::identity(M.rows()), 0};
  IntMatrix &H = r.H;
  const std::size_t m = M.rows(), n = M.cols();
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = row; i < m; ++i)
        if (H(i, c) != 0 && (!best || abs(H(i, c)) < abs(H(*best, c)))) best = i;
      if (!best) break;
      H.swap_rows(row, *best);
      r.U.swap_rows(row, *best);
      bool clean = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Int q = H(i, c) / H(row, c);
        H.add_row(i, row, -q);
        r.U.add_row(i, row, -q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(row, c) == 0) continue;
    if (H(row, c) < 0) {
      H.negate_row(row);
      r.U.negate_row(row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(row, c).get_mpz_t());
      if (q == 0) continue;
      H.add_row(i, row, -q);
      r.U.add_row(i, row, -q);
    }
    ++row;
  }
  r.rank = row;
  return r;
}

/// Fraction-free (Bareiss) determinant of a square matrix.
inline Int determinant(const IntMatrix &M) {
  if (M.rows() != M.cols())
    throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMatrix a = M;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix &M) {
  return M.rows() == M.cols() && abs(determinant(M)) == 1;
}

// ---------------------------------------------------------------------------
// Rational elimination

struct RowEchelon {
  std::vector<RatVector> rows;      // reduced rows, pivots normalized to 1
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

inline RowEchelon rref(std::vector<RatVector> rows, std::size_t cols) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rat inv = 1 / rows[r][c];
    for (auto &x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

inline std::vector<RatVector> rational_rows(const IntMatrix &M) {
  std::vector<RatVector> rows(M.rows(), RatVector(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) rows[i][j] = M(i, j);
  return rows;
}

inline std::size_t rank(const IntMatrix &M) {
  return rref(rational_rows(M), M.cols()).pivots.size();
}

/// Solution set {particular + span(kernel)} of M·x = b over Q.
struct AffineSolution {
  RatVector particular;
  std::vector<RatVector> kernel;  // primitive integral directions
};

inline std::optional<AffineSolution> rational_solve(const IntMatrix &M,
                                                    const RatVector &b) {
  if (b.size() != M.rows())
    throw Error(ErrorKind::DimensionMismatch,
                "right-hand side has length " + std::to_string(b.size()) +
                    ", matrix has " + std::to_string(M.rows()) + " rows");
  const std::size_t n = M.cols();
  auto rows = rational_rows(M);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(b[i]);
  auto ech = rref(std::move(rows), n + 1);
  if (!ech.pivots.empty() && ech.pivots.back() == n) return std::nullopt;

  AffineSolution sol;
  sol.particular.assign(n, Rat(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    sol.particular[ech.pivots[r]] = ech.rows[r][n];
    is_pivot[ech.pivots[r]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(n, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.rows[r][f];
    sol.kernel.push_back(to_rational(primitive(v)));
  }
  return sol;
}

/// True iff v lies in the rational span of the columns of M.
inline bool in_rational_span(const IntMatrix &M, const RatVector &v) {
  return rational_solve(M, v).has_value();
}

/// Inverse of a unimodular matrix, computed exactly.
inline IntMatrix unimodular_inverse(const IntMatrix &M) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  if (n == 0) return {};
  auto rows = rational_rows(M);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].resize(2 * n, Rat(0));
    rows[i][n + i] = 1;
  }
  auto ech = rref(std::move(rows), 2 * n);
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1)
    throw Error(ErrorKind::UnsupportedInput, "matrix is singular");
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat &q = ech.rows[i][n + j];
      if (q.get_den() != 1) throw Error(ErrorKind::UnsupportedInput, "matrix is not unimodular");
      inv(i, j) = q.get_num();
    }
  return inv;
}

/// An integral x with M·x = b, if one exists.
inline std::optional<IntVector> integer_solve(const IntMatrix &M, const IntVector &b) {
  if (b.size() != M.rows()) throw Error(ErrorKind::DimensionMismatch, "integer_solve");
  auto s = snf(M);
  IntVector c = s.U * b;
  IntVector y(M.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.rank) {
      if (c[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = c[i] / s.D(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

// ---------------------------------------------------------------------------
// Lattices

/// Basis vectors stored as the columns of an ambient()×rank() matrix.
struct LatticeBasis {
  IntMatrix vectors;

  LatticeBasis() = default;
  explicit LatticeBasis(IntMatrix v) : vectors(std::move(v)) {}
  LatticeBasis(std::size_t ambient, const std::vector<IntVector> &cols)
      : vectors(IntMatrix::from_columns(ambient, cols)) {}

  [[nodiscard]] std::size_t ambient() const noexcept { return vectors.rows(); }
  [[nodiscard]] std::size_t rank() const noexcept { return vectors.cols(); }
  [[nodiscard]] IntVector vector(std::size_t i) const { return vectors.column(i); }

  friend bool operator==(const LatticeBasis &, const LatticeBasis &) = default;
};

/// Generators of {u ∈ Z^n : A·u = 0}, canonicalized by Hermite form so the
/// first nonzero entry of each vector is positive.
inline LatticeBasis kernel_lattice(const IntMatrix &A) {
  auto s = snf(A);
  const std::size_t n = A.cols(), k = n - s.rank;
  IntMatrix rows(k, n);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < n; ++j) rows(r, j) = s.V(j, s.rank + r);
  auto h = hnf(rows);
  return LatticeBasis(h.H.transpose());
}

struct Saturation {
  LatticeBasis qprime;  // basis of Q·F ∩ Z^d, adapted to K
  IntVector k;          // k_1 | k_2 | …, all positive

  [[nodiscard]] Int index() const {
    Int p = 1;
    for (const auto &x : k) p *= x;
    return p;
  }
};

/// Saturation of the lattice spanned by the columns of F, with the diagonal K
/// such that Z·F is spanned by k_i·q_i in the returned basis.
inline Saturation saturate_with_diagonal(const IntMatrix &F) {
  auto s = snf(F);
  IntMatrix uinv = unimodular_inverse(s.U);
  Saturation out;
  std::vector<std::size_t> first(s.rank);
  for (std::size_t i = 0; i < s.rank; ++i) first[i] = i;
  out.qprime = LatticeBasis(uinv.columns(first));
  out.k = s.divisors();
  return out;
}

/// Basis of a complement Q″ with Z^d = Q′ ⊕ Q″.
inline LatticeBasis split_complement(const LatticeBasis &qprime) {
  auto s = snf(qprime.vectors);
  if (s.rank < qprime.rank())
    throw Error(ErrorKind::NotSaturated, "basis vectors are linearly dependent");
  for (const auto &x : s.divisors())
    if (x != 1)
      throw Error(ErrorKind::NotSaturated, "elementary divisor " + x.get_str());
  IntMatrix uinv = unimodular_inverse(s.U);
  std::vector<std::size_t> rest;
  for (std::size_t i = s.rank; i < qprime.ambient(); ++i) rest.push_back(i);
  return LatticeBasis(uinv.columns(rest));
}

/// Concatenates the bases of two lattices in the same ambient space.
inline IntMatrix concat(const LatticeBasis &a, const LatticeBasis &b) {
  const std::size_t d = std::max(a.ambient(), b.ambient());
  IntMatrix m(d, a.rank() + b.rank());
  for (std::size_t j = 0; j < a.rank(); ++j)
    for (std::size_t i = 0; i < d; ++i) m(i, j) = a.vectors(i, j);
  for (std::size_t j = 0; j < b.rank(); ++j)
    for (std::size_t i = 0; i < d; ++i) m(i, a.rank() + j) = b.vectors(i, j);
  return m;
}

} // namespace gkz
