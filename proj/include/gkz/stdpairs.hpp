#pragma once

// Standard pairs of monomial ideals and quasi-degree arrangements of toric
// quotients S_A/⟨∂^τ⟩.
//
// qdeg(S_A/⟨∂^τ⟩) is read off the standard pairs (∂^a, σ) of the initial
// ideal of I_A + ⟨∂^τ⟩: each pair contributes the affine subspace
// −A·a + C·{a_j : j ∈ σ}. Pieces are then put into a canonical form so that
// different term orders give identical arrangements.

#include "gkz/cone.hpp"
#include "gkz/exactlat.hpp"
#include "gkz/polyring.hpp"

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

namespace gkz {

/// deg(∂_j) = −a_j and deg(x_j) = +a_j. All degree computations go through here.
struct DegreeConvention {
  static constexpr int partial_sign = -1;
  static constexpr int x_sign = +1;

  static IntVector degree_of_partial(const IntMatrix &A, const Monomial &m) {
    IntVector out(A.rows());
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (m[j] == 0) continue;
      for (std::size_t i = 0; i < A.rows(); ++i) out[i] += partial_sign * A(i, j) * Int(m[j]);
    }
    return out;
  }
};

struct StandardPair {
  Monomial root;
  ColumnSet sigma;

  friend bool operator==(const StandardPair &, const StandardPair &) = default;
};

namespace detail {

// root + N^σ avoids the ideal iff every generator needs more of some variable
// outside σ than root provides.
inline bool admissible(const Monomial &root, std::uint64_t sigma,
                       const std::vector<Monomial> &gens) {
  for (const auto &g : gens) {
    bool escapes = false;
    for (std::size_t i = 0; i < g.size() && !escapes; ++i)
      if (!(sigma >> i & 1U) && g[i] > root[i]) escapes = true;
    if (!escapes) return false;
  }
  return true;
}

} // namespace detail

/// Standard pairs of the monomial ideal with the given minimal generators.
inline std::vector<StandardPair> standard_pairs(const std::vector<Monomial> &mingens,
                                                std::size_t n) {
  if (n > 24) throw Error(ErrorKind::UnsupportedInput, "too many variables for standard pairs");
  std::vector<Exponent> bound(n, 0);
  for (const auto &g : mingens) {
    if (g.size() != n) throw Error(ErrorKind::DimensionMismatch, "generator size");
    for (std::size_t i = 0; i < n; ++i) bound[i] = std::max(bound[i], g[i]);
  }

  std::vector<StandardPair> out;
  for (std::uint64_t sigma = 0; sigma < (std::uint64_t{1} << n); ++sigma) {
    std::vector<std::size_t> free;
    bool viable = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (sigma >> i & 1U) continue;
      if (bound[i] == 0) viable = false;  // such a pair extends by adding i to σ
      free.push_back(i);
    }
    if (!viable) continue;

    Monomial root(n);
    for (;;) {
      if (detail::admissible(root, sigma, mingens)) {
        bool maximal = true;
        for (auto i : free) {
          Monomial wider = root;
          wider[i] = 0;
          if (detail::admissible(wider, sigma | (std::uint64_t{1} << i), mingens)) {
            maximal = false;
            break;
          }
        }
        if (maximal) {
          ColumnSet s;
          for (std::size_t i = 0; i < n; ++i)
            if (sigma >> i & 1U) s.push_back(i);
          out.push_back({root, std::move(s)});
        }
      }
      // odometer over root_i ∈ [0, bound_i) for i outside σ
      std::size_t k = 0;
      while (k < free.size() && root[free[k]] + 1 >= bound[free[k]]) root[free[k++]] = 0;
      if (k == free.size()) break;
      ++root[free[k]];
    }
  }
  std::sort(out.begin(), out.end(), [](const StandardPair &a, const StandardPair &b) {
    return std::tie(a.sigma, a.root) < std::tie(b.sigma, b.root);
  });
  return out;
}

/// True iff the monomial lies in some root + N^σ.
inline bool covered(const std::vector<StandardPair> &pairs, const Monomial &m) {
  for (const auto &p : pairs) {
    bool ok = true;
    for (std::size_t i = 0; i < m.size() && ok; ++i)
      if (!std::binary_search(p.sigma.begin(), p.sigma.end(), i) && m[i] != p.root[i]) ok = false;
    for (std::size_t i = 0; i < m.size() && ok; ++i)
      if (std::binary_search(p.sigma.begin(), p.sigma.end(), i) && m[i] < p.root[i]) ok = false;
    if (ok) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Quasi-degree arrangements

/// shift + C·span{a_j : j ∈ span}. `directions` holds those columns.
struct QdegPiece {
  IntVector shift;
  ColumnSet span;
  IntMatrix directions;

  friend bool operator==(const QdegPiece &a, const QdegPiece &b) {
    return a.shift == b.shift && a.span == b.span;
  }
};

struct QdegArrangement {
  std::vector<QdegPiece> pieces;

  [[nodiscard]] bool empty() const noexcept { return pieces.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return pieces.size(); }
  friend bool operator==(const QdegArrangement &, const QdegArrangement &) = default;
};

/// All columns of A lying in the rational span of the given ones.
inline ColumnSet span_closure(const IntMatrix &A, const ColumnSet &cols) {
  ColumnSet out;
  if (cols.empty()) return out;
  IntMatrix basis = A.columns(cols);
  for (std::size_t j = 0; j < A.cols(); ++j)
    if (in_rational_span(basis, to_rational(A.column(j)))) out.push_back(j);
  return out;
}

/// Integral representative of shift + Q·span that is independent of the
/// representative passed in: the component along a fixed lattice complement.
inline IntVector canonical_shift(const IntMatrix &A, const ColumnSet &span, const IntVector &b) {
  if (span.empty()) return b;
  auto sat = saturate_with_diagonal(A.columns(span));
  auto rest = split_complement(sat.qprime);
  IntMatrix basis = concat(sat.qprime, rest);
  IntVector coords = unimodular_inverse(basis) * b;
  IntVector out(b.size());
  for (std::size_t k = 0; k < rest.rank(); ++k)
    for (std::size_t i = 0; i < b.size(); ++i)
      out[i] += rest.vectors(i, k) * coords[sat.qprime.rank() + k];
  return out;
}

inline bool piece_contains(const QdegPiece &p, const RatVector &v) {
  RatVector diff(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - Rat(p.shift[i]);
  if (p.span.empty()) {
    return std::all_of(diff.begin(), diff.end(), [](const Rat &x) { return x == 0; });
  }
  return in_rational_span(p.directions, diff);
}

/// Closes spans, canonicalizes shifts, absorbs contained pieces and sorts by
/// (span size, span columns, shift).
inline QdegArrangement canonicalize(const IntMatrix &A, std::vector<QdegPiece> pieces) {
  for (auto &p : pieces) {
    p.span = span_closure(A, p.span);
    p.shift = canonical_shift(A, p.span, p.shift);
    p.directions = A.columns(p.span);
  }
  auto key = [](const QdegPiece &p) { return std::tie(p.span, p.shift); };
  std::sort(pieces.begin(), pieces.end(),
            [&](const QdegPiece &a, const QdegPiece &b) { return key(a) < key(b); });
  pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());

  std::vector<QdegPiece> kept;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < pieces.size() && !absorbed; ++j) {
      if (i == j) continue;
      const auto &small = pieces[i], &big = pieces[j];
      if (small.span.size() >= big.span.size()) continue;
      if (!std::includes(big.span.begin(), big.span.end(), small.span.begin(), small.span.end()))
        continue;
      absorbed = piece_contains(big, to_rational(small.shift));
    }
    if (!absorbed) kept.push_back(pieces[i]);
  }
  std::sort(kept.begin(), kept.end(), [](const QdegPiece &a, const QdegPiece &b) {
    return std::make_tuple(a.span.size(), std::cref(a.span), std::cref(a.shift)) <
           std::make_tuple(b.span.size(), std::cref(b.span), std::cref(b.shift));
  });
  return {std::move(kept)};
}

/// Arrangement of the degrees −A·(root + N^σ) over the given standard pairs.
inline QdegArrangement arrangement_from_pairs(const IntMatrix &A,
                                              const std::vector<StandardPair> &pairs) {
  std::vector<QdegPiece> pieces;
  for (const auto &p : pairs)
    pieces.push_back({DegreeConvention::degree_of_partial(A, p.root), p.sigma, {}});
  return canonicalize(A, std::move(pieces));
}

/// ∂^τ = ∏_{j∈τ} ∂_j (so ∂^∅ = 1).
inline Monomial tau_monomial(std::size_t n, const ColumnSet &tau) {
  Monomial m(n);
  for (auto j : tau) {
    if (j >= n) throw Error(ErrorKind::IndexOutOfRange, "column index in τ");
    m[j] = 1;
  }
  return m;
}

/// Reduced Gröbner basis of I_A + ⟨∂^τ⟩.
inline GroebnerBasis quotient_ideal(const GkzMatrix &G, const ColumnSet &tau,
                                    const TermOrder &ord = TermOrder::grevlex()) {
  auto gens = toric_ideal(G, ord).generators;
  gens.push_back({tau_monomial(G.n(), tau), std::nullopt});
  return buchberger(gens, ord, G.n());
}

/// qdeg(S_A/⟨∂^τ⟩). τ = ∅ gives the zero module and the empty arrangement.
inline QdegArrangement qdeg_quotient(const GkzMatrix &G, const ColumnSet &tau,
                                     const TermOrder &ord = TermOrder::grevlex()) {
  if (tau.empty()) return {};
  auto gb = quotient_ideal(G, tau, ord);
  return arrangement_from_pairs(G.matrix(), standard_pairs(initial_ideal(gb), G.n()));
}

/// Index of the first piece containing v.
inline std::optional<std::size_t> qdeg_member(const QdegArrangement &arr, const RatVector &v) {
  for (std::size_t k = 0; k < arr.pieces.size(); ++k)
    if (piece_contains(arr.pieces[k], v)) return k;
  return std::nullopt;
}

/// Some x ∈ N^n with A·x = u, or nullopt if u ∉ N·A.
inline std::optional<IntVector> semigroup_member(const GkzMatrix &G, const IntVector &u) {
  if (u.size() != G.d()) throw Error(ErrorKind::DimensionMismatch, "degree vector length");
  const auto &h = G.positive_functional();
  const std::size_t n = G.n();
  std::vector<Int> weight(n);
  for (std::size_t j = 0; j < n; ++j) weight[j] = dot(h, G.column(j));

  IntVector x(n);
  IntVector rest = u;
  // depth-first over columns; h·rest bounds how many more columns fit
  auto search = [&](auto &&self, std::size_t j) -> bool {
    if (j == n) return std::all_of(rest.begin(), rest.end(), [](const Int &v) { return v == 0; });
    Int budget = dot(h, rest);
    if (budget < 0) return false;
    Int most = budget / weight[j];
    for (Int c = 0; c <= most; ++c) {
      x[j] = c;
      if (self(self, j + 1)) return true;
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= G.matrix()(i, j);
    }
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] += (most + 1) * G.matrix()(i, j);
    x[j] = 0;
    return false;
  };
  if (search(search, 0)) return x;
  return std::nullopt;
}

} // namespace gkz
