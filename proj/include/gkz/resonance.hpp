#pragma once

// Parameter criteria: resonance Res(A), strong resonance SRes_j(A), the
// contiguity quasi-isomorphism test, cokernel levels and minimal escape
// shifts along ε_A and ε_τ.
//
// Every question reduces to: for which integers k (and m) does
//     −β − b − k·v − m·w  ∈  Q·span(piece)
// hold, for each piece b + C·span of a quasi-degree arrangement. That is a
// rational linear system whose solution set, projected to (k, m), is a point,
// a line or everything; the integer points are then read off exactly.

#include "gkz/cone.hpp"
#include "gkz/error.hpp"
#include "gkz/exactlat.hpp"
#include "gkz/stdpairs.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gkz {

struct SResWitness {
  std::size_t j = 0;
  Int k;
  QdegPiece piece;
};

struct SResResult {
  std::size_t j = 0;
  bool strongly_resonant = false;
  std::optional<SResWitness> witness;
};

struct ResResult {
  bool resonant = false;
  std::optional<Face> face;
};

struct PartialShift {
  ColumnSet tau;
  Int k;
};

struct ResonanceReport {
  RatVector beta;
  std::vector<SResResult> per_column;
  bool strongly_resonant = false;
  ResResult res;
  bool isomorphic = true;
  std::string statement;
  Int minimal_shift_full;
  std::vector<PartialShift> partial_shifts;
};

namespace detail {

inline Rat floor_of(const Rat &q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rat(f);
}
inline Rat ceil_of(const Rat &q) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rat(c);
}
inline bool integral(const Rat &q) { return q.get_den() == 1; }

// Solutions s of  rhs ∈ Σ s_i·lead_i + Q·span(piece), projected onto s.
struct Projection {
  RatVector point;
  std::vector<RatVector> directions;  // echelon basis; empty = single point
};

inline std::optional<Projection> project(const std::vector<IntVector> &lead,
                                         const QdegPiece &piece, const RatVector &rhs) {
  const std::size_t d = rhs.size(), m = lead.size();
  IntMatrix M(d, m + piece.span.size());
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t i = 0; i < d; ++i) M(i, c) = lead[c][i];
  for (std::size_t c = 0; c < piece.span.size(); ++c)
    for (std::size_t i = 0; i < d; ++i) M(i, m + c) = piece.directions(i, c);
  RatVector b(d);
  for (std::size_t i = 0; i < d; ++i) b[i] = rhs[i] - Rat(piece.shift[i]);
  auto sol = rational_solve(M, b);
  if (!sol) return std::nullopt;
  Projection p;
  p.point.assign(sol->particular.begin(), sol->particular.begin() + static_cast<long>(m));
  std::vector<RatVector> dirs;
  for (const auto &v : sol->kernel) dirs.emplace_back(v.begin(), v.begin() + static_cast<long>(m));
  p.directions = rref(std::move(dirs), m).rows;
  return p;
}

inline RatVector negate(const RatVector &v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

inline std::string join_columns(const ColumnSet &cols) {
  std::string s = "{";
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + std::to_string(cols[i] + 1);
  return s + "}";
}

} // namespace detail

/// Precomputes qdeg(S_A/⟨∂_j⟩) for every column and answers parameter
/// questions against it. Immutable after construction.
class ResonanceAnalyzer {
public:
  explicit ResonanceAnalyzer(GkzMatrix G, TermOrder ord = TermOrder::grevlex())
      : g_(std::move(G)), ord_(std::move(ord)) {
    for (std::size_t j = 0; j < g_.n(); ++j) column_qdeg_.push_back(qdeg_quotient(g_, {j}, ord_));
    epsilon_.assign(g_.d(), Int(0));
    for (std::size_t j = 0; j < g_.n(); ++j)
      for (std::size_t i = 0; i < g_.d(); ++i) epsilon_[i] += g_.matrix()(i, j);
  }

  [[nodiscard]] const GkzMatrix &matrix() const noexcept { return g_; }
  [[nodiscard]] const TermOrder &order() const noexcept { return ord_; }
  [[nodiscard]] const QdegArrangement &column_arrangement(std::size_t j) const {
    check_column(j);
    return column_qdeg_[j];
  }
  /// ε_A = Σ_j a_j.
  [[nodiscard]] const IntVector &epsilon() const noexcept { return epsilon_; }

  /// β ∈ SRes_j(A): −β ∈ k·a_j + qdeg(S_A/⟨∂_j⟩) for some k ≥ 1. The witness
  /// carries the smallest such k.
  [[nodiscard]] SResResult sres_j(const RatVector &beta, std::size_t j) const {
    check_beta(beta);
    check_column(j);
    SResResult out{j, false, std::nullopt};
    const auto rhs = detail::negate(beta);
    for (const auto &piece : column_qdeg_[j].pieces) {
      auto p = detail::project({g_.column(j)}, piece, rhs);
      if (!p) continue;
      Int k;
      if (!p->directions.empty()) {
        k = 1;
      } else {
        const Rat &k0 = p->point[0];
        if (!detail::integral(k0) || k0 < 1) continue;
        k = k0.get_num();
      }
      if (!out.witness || k < out.witness->k) out.witness = SResWitness{j, k, piece};
    }
    out.strongly_resonant = out.witness.has_value();
    return out;
  }

  [[nodiscard]] std::vector<SResResult> sres(const RatVector &beta) const {
    std::vector<SResResult> out;
    for (std::size_t j = 0; j < g_.n(); ++j) out.push_back(sres_j(beta, j));
    return out;
  }

  /// Union over j of SRes_j(A).
  [[nodiscard]] bool strongly_resonant(const RatVector &beta) const {
    for (std::size_t j = 0; j < g_.n(); ++j)
      if (sres_j(beta, j).strongly_resonant) return true;
    return false;
  }

  /// β ∈ Z^d + C·F for a proper face F. The witness is the first such face in
  /// lattice order (smallest dimension first).
  [[nodiscard]] ResResult is_resonant(const RatVector &beta) const {
    check_beta(beta);
    for (const auto &f : g_.faces()) {
      if (f.is_full()) continue;
      auto sat = saturate_with_diagonal(g_.matrix().columns(f.columns));
      auto rest = split_complement(sat.qprime);
      IntMatrix inv = unimodular_inverse(concat(sat.qprime, rest));
      bool integral_rest = true;
      for (std::size_t r = sat.qprime.rank(); r < g_.d() && integral_rest; ++r) {
        Rat c = 0;
        for (std::size_t i = 0; i < g_.d(); ++i) c += Rat(inv(r, i)) * beta[i];
        integral_rest = detail::integral(c);
      }
      if (integral_rest) return {true, f};
    }
    return {false, std::nullopt};
  }

  /// Whether ·∂_j : K(S_A, β) → K(S_A, β + a_j) is a quasi-isomorphism,
  /// i.e. −β − a_j ∉ qdeg(S_A/⟨∂_j⟩).
  [[nodiscard]] bool contiguity_shift_qiso(const RatVector &beta, std::size_t j) const {
    check_beta(beta);
    check_column(j);
    RatVector v = detail::negate(beta);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= g_.matrix()(i, j);
    return !qdeg_member(column_qdeg_[j], v).has_value();
  }

  /// All k ≥ 0 with −β ∈ (k+1)·a_j + qdeg(S_A/⟨∂_j⟩): the non-exact summands
  /// of the cokernel of left multiplication by ∂_j.
  [[nodiscard]] std::vector<Int> cokernel_levels(const RatVector &beta, std::size_t j) const {
    check_beta(beta);
    check_column(j);
    std::set<Int> levels;
    const auto rhs = detail::negate(beta);
    for (const auto &piece : column_qdeg_[j].pieces) {
      auto p = detail::project({g_.column(j)}, piece, rhs);
      if (!p) continue;
      if (!p->directions.empty())
        throw Error(ErrorKind::InfiniteFamily,
                    "a_" + std::to_string(j + 1) + " lies in the span of the piece over columns " +
                        detail::join_columns(piece.span));
      const Rat &k1 = p->point[0];
      if (detail::integral(k1) && k1 >= 1) levels.insert(k1.get_num() - 1);
    }
    return {levels.begin(), levels.end()};
  }

  /// The values k ≥ 0 for which β + k·ε_A ∈ SRes_j(A).
  [[nodiscard]] std::set<Int> resonant_shifts(const RatVector &beta, std::size_t j) const {
    check_beta(beta);
    check_column(j);
    std::set<Int> bad;
    const auto rhs = detail::negate(beta);
    for (const auto &piece : column_qdeg_[j].pieces) {
      auto p = detail::project({epsilon_, g_.column(j)}, piece, rhs);
      if (!p) continue;
      collect_line_points(*p, piece, j, bad);
    }
    return bad;
  }

  /// Least k ≥ 0 with β + k·ε_A outside SRes(A).
  [[nodiscard]] Int minimal_shift_full(const RatVector &beta) const {
    std::set<Int> bad;
    for (std::size_t j = 0; j < g_.n(); ++j) {
      auto b = resonant_shifts(beta, j);
      bad.insert(b.begin(), b.end());
    }
    Int k = 0;
    while (bad.count(k)) ++k;
    return k;
  }

  /// Least k ≥ 0 with −(β + k·ε_τ) ∉ qdeg(S_A/⟨∂^τ⟩) + N·ε_τ.
  [[nodiscard]] Int minimal_shift_partial(const RatVector &beta, const ColumnSet &tau) const {
    check_beta(beta);
    if (tau.empty()) throw Error(ErrorKind::UnsupportedInput, "τ must be nonempty");
    IntVector eps(g_.d());
    for (auto j : tau) {
      check_column(j);
      for (std::size_t i = 0; i < g_.d(); ++i) eps[i] += g_.matrix()(i, j);
    }
    auto arr = qdeg_quotient(g_, tau, ord_);
    const auto rhs = detail::negate(beta);
    std::optional<Int> last_bad;
    for (const auto &piece : arr.pieces) {
      auto p = detail::project({eps}, piece, rhs);
      if (!p) continue;
      if (!p->directions.empty())
        throw Error(ErrorKind::InfiniteFamily,
                    "ε_τ lies in the span of the piece over columns " + detail::join_columns(piece.span));
      const Rat &n0 = p->point[0];
      if (detail::integral(n0) && n0 >= 0 && (!last_bad || n0.get_num() > *last_bad))
        last_bad = n0.get_num();
    }
    return last_bad ? Int(*last_bad + 1) : Int(0);
  }

  [[nodiscard]] ResonanceReport verdict(const RatVector &beta,
                                        const std::vector<ColumnSet> &taus = {}) const {
    ResonanceReport r;
    r.beta = beta;
    r.per_column = sres(beta);
    r.strongly_resonant = std::any_of(r.per_column.begin(), r.per_column.end(),
                                      [](const SResResult &s) { return s.strongly_resonant; });
    r.res = is_resonant(beta);
    r.isomorphic = !r.strongly_resonant;
    if (r.isomorphic) {
      r.statement = "isomorphic";
    } else {
      r.statement = "not isomorphic; witnesses ";
      bool first = true;
      for (const auto &s : r.per_column) {
        if (!s.strongly_resonant) continue;
        r.statement += (first ? "" : ", ") + std::string("j = ") + std::to_string(s.j + 1) +
                       " (k=" + s.witness->k.get_str() + ")";
        first = false;
      }
    }
    r.minimal_shift_full = minimal_shift_full(beta);
    for (const auto &tau : taus) r.partial_shifts.push_back({tau, minimal_shift_partial(beta, tau)});
    return r;
  }

private:
  void check_beta(const RatVector &beta) const {
    if (beta.size() != g_.d())
      throw Error(ErrorKind::DimensionMismatch, "β has length " + std::to_string(beta.size()) +
                                                    ", expected " + std::to_string(g_.d()));
  }
  void check_column(std::size_t j) const {
    if (j >= g_.n())
      throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(j + 1) + " of " +
                                                  std::to_string(g_.n()));
  }

  // Integer points (k, m), k ≥ 0, m ≥ 1, of the projected solution set; the
  // k-values go into `bad`.
  static void collect_line_points(const detail::Projection &p, const QdegPiece &piece,
                                  std::size_t j, std::set<Int> &bad) {
    auto infinite = [&] {
      return Error(ErrorKind::InfiniteFamily,
                   "β + kε_A stays strongly resonant along column " + std::to_string(j + 1) +
                       " and the piece over columns " + detail::join_columns(piece.span));
    };
    const Rat &k0 = p.point[0], &m0 = p.point[1];
    if (p.directions.empty()) {
      if (detail::integral(k0) && k0 >= 0 && detail::integral(m0) && m0 >= 1) bad.insert(k0.get_num());
      return;
    }
    if (p.directions.size() > 1) throw infinite();
    const Rat &dk = p.directions[0][0], &dm = p.directions[0][1];
    if (dk == 0) {
      // k pinned, m free
      if (detail::integral(k0) && k0 >= 0) bad.insert(k0.get_num());
      return;
    }
    if (dm == 0) {
      if (detail::integral(m0) && m0 >= 1) throw infinite();
      return;
    }
    // m(k) = m0 + (k − k0)·slope
    const Rat slope = dm / dk;
    auto m_at = [&](const Rat &k) -> Rat { return m0 + (k - k0) * slope; };
    if (slope < 0) {
      Rat kmax = detail::floor_of(k0 + (1 - m0) / slope);
      for (Rat k = 0; k <= kmax; k += 1) {
        Rat m = m_at(k);
        if (detail::integral(m) && m >= 1) bad.insert(k.get_num());
      }
      return;
    }
    // slope > 0: m ≥ 1 from some k on, and integrality of m is periodic in k
    Rat start = std::max(Rat(0), detail::ceil_of(k0 + (1 - m0) / slope));
    Rat period(slope.get_den());
    for (Rat k = start; k < start + period; k += 1)
      if (detail::integral(m_at(k))) throw infinite();
  }

  GkzMatrix g_;
  TermOrder ord_;
  std::vector<QdegArrangement> column_qdeg_;
  IntVector epsilon_;
};

// Free-function forms.

inline SResResult sres_j(const GkzMatrix &G, const RatVector &beta, std::size_t j) {
  return ResonanceAnalyzer(G).sres_j(beta, j);
}
inline std::vector<SResResult> sres(const GkzMatrix &G, const RatVector &beta) {
  return ResonanceAnalyzer(G).sres(beta);
}
inline ResResult is_resonant(const GkzMatrix &G, const RatVector &beta) {
  return ResonanceAnalyzer(G).is_resonant(beta);
}
inline bool contiguity_shift_qiso(const GkzMatrix &G, const RatVector &beta, std::size_t j) {
  return ResonanceAnalyzer(G).contiguity_shift_qiso(beta, j);
}
inline std::vector<Int> cokernel_levels(const GkzMatrix &G, const RatVector &beta, std::size_t j) {
  return ResonanceAnalyzer(G).cokernel_levels(beta, j);
}
inline Int minimal_shift_full(const GkzMatrix &G, const RatVector &beta) {
  return ResonanceAnalyzer(G).minimal_shift_full(beta);
}
inline Int minimal_shift_partial(const GkzMatrix &G, const RatVector &beta, const ColumnSet &tau) {
  return ResonanceAnalyzer(G).minimal_shift_partial(beta, tau);
}
inline ResonanceReport verdict(const GkzMatrix &G, const RatVector &beta,
                               const std::vector<ColumnSet> &taus = {}) {
  return ResonanceAnalyzer(G).verdict(beta, taus);
}

} // namespace gkz
