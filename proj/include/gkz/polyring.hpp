#pragma once

// Binomial and monomial ideals in ∂_1..∂_n.
//
// Every polynomial handled here has at most two terms with coefficients ±1:
// a pure difference ∂^lead − ∂^tail or a monomial ∂^lead. S-polynomials and
// reductions of such elements stay in that class, which is all the toric and
// standard-pair machinery needs.

#include "gkz/error.hpp"
#include "gkz/exactlat.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gkz {

using Exponent = std::int64_t;

struct Monomial {
  std::vector<Exponent> exps;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exps(n, 0) {}
  explicit Monomial(std::vector<Exponent> e) : exps(std::move(e)) {}
  Monomial(std::initializer_list<Exponent> e) : exps(e) {}

  static Monomial variable(std::size_t n, std::size_t j) {
    Monomial m(n);
    m.exps[j] = 1;
    return m;
  }

  [[nodiscard]] std::size_t size() const noexcept { return exps.size(); }
  [[nodiscard]] Exponent operator[](std::size_t i) const { return exps[i]; }
  Exponent &operator[](std::size_t i) { return exps[i]; }

  [[nodiscard]] bool is_one() const {
    return std::all_of(exps.begin(), exps.end(), [](Exponent e) { return e == 0; });
  }
  [[nodiscard]] Exponent degree() const {
    return std::accumulate(exps.begin(), exps.end(), Exponent{0});
  }
  [[nodiscard]] bool divides(const Monomial &other) const {
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > other.exps[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial &, const Monomial &) = default;
  friend auto operator<=>(const Monomial &, const Monomial &) = default;
};

inline Monomial operator*(const Monomial &a, const Monomial &b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

/// a / b, assuming b divides a.
inline Monomial operator/(const Monomial &a, const Monomial &b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Monomial lcm(const Monomial &a, const Monomial &b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool coprime(const Monomial &a, const Monomial &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

inline std::string to_string(const Monomial &m, const char *var = "d") {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += var + std::to_string(i + 1);
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------
// Term orders

struct TermOrder {
  enum class Kind { lex, grevlex, revlex, weighted };

  Kind kind = Kind::grevlex;
  std::vector<Rat> weights;           // weighted only; nonnegative
  Kind tiebreak = Kind::grevlex;      // weighted only
  std::vector<std::size_t> priority;  // variables from largest to smallest; empty = natural

  static TermOrder lex() { return {Kind::lex, {}, Kind::grevlex, {}}; }
  static TermOrder grevlex() { return {Kind::grevlex, {}, Kind::grevlex, {}}; }
  /// Weight comparison first, ties broken by `tie`. A reverse-lexicographic
  /// tiebreak is only a well-order when every weight is positive.
  static TermOrder weighted(std::vector<Rat> w, Kind tie = Kind::grevlex,
                            std::vector<std::size_t> priority = {}) {
    for (const auto &x : w)
      if (x < 0) throw Error(ErrorKind::UnsupportedInput, "negative weight");
    if (tie == Kind::revlex)
      for (const auto &x : w)
        if (x <= 0)
          throw Error(ErrorKind::UnsupportedInput,
                      "reverse-lexicographic tiebreak needs positive weights");
    if (tie == Kind::weighted) throw Error(ErrorKind::UnsupportedInput, "nested weights");
    return {Kind::weighted, std::move(w), tie, std::move(priority)};
  }

  [[nodiscard]] std::strong_ordering compare(const Monomial &a, const Monomial &b) const {
    return compare_as(kind, a, b);
  }
  [[nodiscard]] bool less(const Monomial &a, const Monomial &b) const {
    return compare(a, b) < 0;
  }

  [[nodiscard]] std::string name() const {
    switch (kind) {
    case Kind::lex: return "lex";
    case Kind::grevlex: return "grevlex";
    case Kind::revlex: return "revlex";
    case Kind::weighted: return "weighted";
    }
    return "?";
  }

private:
  [[nodiscard]] std::size_t var(std::size_t rank) const {
    return priority.empty() ? rank : priority[rank];
  }

  [[nodiscard]] std::strong_ordering compare_as(Kind k, const Monomial &a,
                                                const Monomial &b) const {
    const std::size_t n = a.size();
    switch (k) {
    case Kind::lex:
      for (std::size_t r = 0; r < n; ++r) {
        auto v = var(r);
        if (a[v] != b[v]) return a[v] <=> b[v];
      }
      return std::strong_ordering::equal;
    case Kind::grevlex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      [[fallthrough]];
    case Kind::revlex:
      for (std::size_t r = n; r-- > 0;) {
        auto v = var(r);
        if (a[v] != b[v]) return b[v] <=> a[v];
      }
      return std::strong_ordering::equal;
    case Kind::weighted: {
      Rat wa = 0, wb = 0;
      for (std::size_t i = 0; i < n; ++i) {
        wa += weights[i] * a[i];
        wb += weights[i] * b[i];
      }
      if (wa != wb) return wa < wb ? std::strong_ordering::less : std::strong_ordering::greater;
      return compare_as(tiebreak, a, b);
    }
    }
    return std::strong_ordering::equal;
  }
};

// ---------------------------------------------------------------------------
// Binomials

/// ∂^lead − ∂^tail, or the monomial ∂^lead when tail is absent.
struct Binomial {
  Monomial lead;
  std::optional<Monomial> tail;

  [[nodiscard]] bool is_monomial() const { return !tail.has_value(); }
  [[nodiscard]] bool is_unit() const { return !tail && lead.is_one(); }
  [[nodiscard]] std::size_t nvars() const { return lead.size(); }

  friend bool operator==(const Binomial &, const Binomial &) = default;
};

inline std::string to_string(const Binomial &b, const char *var = "d") {
  if (!b.tail) return to_string(b.lead, var);
  return to_string(b.lead, var) + "-" + to_string(*b.tail, var);
}

/// □_u = ∂^{u+} − ∂^{u−}.
inline Binomial toric_binomial(const IntVector &u) {
  Monomial plus(u.size()), minus(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u[i].fits_slong_p()) throw Error(ErrorKind::UnsupportedInput, "exponent too large");
    long v = u[i].get_si();
    (v > 0 ? plus : minus)[i] = v > 0 ? v : -v;
  }
  return {plus, minus};
}

/// Orders the terms so lead > tail; nullopt for the zero polynomial.
inline std::optional<Binomial> normalize(Binomial b, const TermOrder &ord) {
  if (b.tail) {
    if (*b.tail == b.lead) return std::nullopt;
    if (ord.less(b.lead, *b.tail)) std::swap(b.lead, *b.tail);
  }
  return b;
}

struct GroebnerBasis {
  std::vector<Binomial> generators;
  TermOrder order;
  std::size_t nvars = 0;
  bool reduced = false;

  [[nodiscard]] bool is_unit() const {
    return generators.size() == 1 && generators.front().is_unit();
  }
};

enum class PairSelection { fifo, normal };

namespace detail {

// Reduces a monomial to standard form; nullopt when it lies in the ideal
// generated by a monomial member of `basis`.
inline std::optional<Monomial> reduce_monomial(Monomial m, const std::vector<Binomial> &basis,
                                               const Binomial *skip = nullptr) {
  for (;;) {
    const Binomial *hit = nullptr;
    for (const auto &g : basis) {
      if (&g == skip) continue;
      if (g.lead.divides(m)) {
        hit = &g;
        break;
      }
    }
    if (!hit) return m;
    if (!hit->tail) return std::nullopt;
    m = (m / hit->lead) * *hit->tail;
  }
}

// Normal form of lead − tail (or of the monomial lead).
inline std::optional<Binomial> reduce(const Binomial &b, const std::vector<Binomial> &basis,
                                      const TermOrder &ord) {
  auto l = reduce_monomial(b.lead, basis);
  std::optional<Monomial> t;
  if (b.tail) t = reduce_monomial(*b.tail, basis);
  if (l && t) return normalize({*l, *t}, ord);
  if (l) return Binomial{*l, std::nullopt};
  if (t) return Binomial{*t, std::nullopt};
  return std::nullopt;
}

inline std::optional<Binomial> s_polynomial(const Binomial &f, const Binomial &g,
                                            const TermOrder &ord) {
  Monomial l = lcm(f.lead, g.lead);
  std::optional<Monomial> a, b;
  if (f.tail) a = (l / f.lead) * *f.tail;
  if (g.tail) b = (l / g.lead) * *g.tail;
  if (a && b) return normalize({*a, *b}, ord);
  if (a) return Binomial{*a, std::nullopt};
  if (b) return Binomial{*b, std::nullopt};
  return std::nullopt;
}

inline GroebnerBasis unit_ideal(std::size_t n, const TermOrder &ord) {
  return {{Binomial{Monomial(n), std::nullopt}}, ord, n, true};
}

inline std::vector<Binomial> interreduce(std::vector<Binomial> g, const TermOrder &ord) {
  std::sort(g.begin(), g.end(),
            [&](const Binomial &x, const Binomial &y) { return ord.less(x.lead, y.lead); });
  std::vector<Binomial> minimal;
  for (const auto &x : g) {
    bool redundant = std::any_of(minimal.begin(), minimal.end(),
                                 [&](const Binomial &y) { return y.lead.divides(x.lead); });
    if (!redundant) minimal.push_back(x);
  }
  std::vector<Binomial> out;
  out.reserve(minimal.size());
  for (const auto &x : minimal) {
    Binomial r{x.lead, std::nullopt};
    if (x.tail) r.tail = reduce_monomial(*x.tail, minimal, &x);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [&](const Binomial &x, const Binomial &y) { return ord.less(y.lead, x.lead); });
  return out;
}

} // namespace detail

/// Reduced Gröbner basis of the ideal generated by binomials and monomials.
inline GroebnerBasis buchberger(const std::vector<Binomial> &gens, const TermOrder &ord,
                                std::size_t nvars,
                                PairSelection selection = PairSelection::normal) {
  std::vector<Binomial> basis;
  for (const auto &g : gens) {
    if (g.nvars() != nvars || (g.tail && g.tail->size() != nvars))
      throw Error(ErrorKind::DimensionMismatch, "generator has wrong number of variables");
    if (auto n = normalize(g, ord)) {
      if (n->is_unit()) return detail::unit_ideal(nvars, ord);
      basis.push_back(*n);
    }
  }

  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    auto pick = pairs.begin();
    if (selection == PairSelection::normal) {
      for (auto it = pairs.begin(); it != pairs.end(); ++it) {
        auto c = ord.compare(lcm(basis[it->first].lead, basis[it->second].lead),
                             lcm(basis[pick->first].lead, basis[pick->second].lead));
        if (c < 0) pick = it;
      }
    }
    auto [i, j] = *pick;
    pairs.erase(pick);
    if (coprime(basis[i].lead, basis[j].lead)) continue;
    auto s = detail::s_polynomial(basis[i], basis[j], ord);
    if (!s) continue;
    auto r = detail::reduce(*s, basis, ord);
    if (!r) continue;
    if (r->is_unit()) return detail::unit_ideal(nvars, ord);
    basis.push_back(*r);
    for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
  }
  return {detail::interreduce(std::move(basis), ord), ord, nvars, true};
}

/// Normal form of a monomial; nullopt when it lies in the ideal.
inline std::optional<Monomial> normal_form(const Monomial &m, const GroebnerBasis &gb) {
  return detail::reduce_monomial(m, gb.generators);
}

/// Normal form of a binomial (or monomial); nullopt for zero.
inline std::optional<Binomial> normal_form(const Binomial &b, const GroebnerBasis &gb) {
  return detail::reduce(b, gb.generators, gb.order);
}

/// Ideal membership via normal form.
inline bool contains(const GroebnerBasis &gb, const Binomial &b) {
  return !normal_form(b, gb).has_value();
}

/// Minimal generators of the initial ideal.
inline std::vector<Monomial> initial_ideal(const GroebnerBasis &gb) {
  std::vector<Monomial> out;
  for (const auto &g : gb.generators) out.push_back(g.lead);
  std::vector<Monomial> minimal;
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < out.size() && !redundant; ++j)
      if (i != j && out[j].divides(out[i]) && (out[j] != out[i] || j < i)) redundant = true;
    if (!redundant) minimal.push_back(out[i]);
  }
  return minimal;
}

/// (I : ∂_j^∞) by elimination: adjoin t with t·∂_j − 1, eliminate t.
inline GroebnerBasis saturate(const GroebnerBasis &gb, std::size_t j) {
  const std::size_t n = gb.nvars;
  if (j >= n) throw Error(ErrorKind::IndexOutOfRange, "saturation variable");
  auto lift = [n](const Monomial &m) {
    Monomial r(n + 1);
    std::copy(m.exps.begin(), m.exps.end(), r.exps.begin());
    return r;
  };
  std::vector<Binomial> gens;
  for (const auto &g : gb.generators)
    gens.push_back({lift(g.lead), g.tail ? std::optional(lift(*g.tail)) : std::nullopt});
  Monomial tj(n + 1);
  tj[j] = 1;
  tj[n] = 1;
  gens.push_back({tj, Monomial(n + 1)});

  std::vector<Rat> w(n + 1, Rat(0));
  w[n] = 1;
  auto elim = buchberger(gens, TermOrder::weighted(std::move(w)), n + 1);

  std::vector<Binomial> kept;
  auto drop = [n](const Monomial &m) {
    return Monomial(std::vector<Exponent>(m.exps.begin(), m.exps.begin() + static_cast<long>(n)));
  };
  for (const auto &g : elim.generators) {
    if (g.lead[n] != 0 || (g.tail && (*g.tail)[n] != 0)) continue;
    kept.push_back({drop(g.lead), g.tail ? std::optional(drop(*g.tail)) : std::nullopt});
  }
  return buchberger(kept, gb.order, n);
}

/// Ideal generated by □_u for u running through a lattice basis.
inline std::vector<Binomial> lattice_basis_ideal(const LatticeBasis &kernel) {
  std::vector<Binomial> out;
  for (std::size_t i = 0; i < kernel.rank(); ++i) out.push_back(toric_binomial(kernel.vector(i)));
  return out;
}

/// Toric ideal of an integer matrix A, given positive weights w_j for which
/// every kernel binomial is homogeneous (w = h·A for a positive functional h).
///
/// The lattice-basis ideal is saturated one variable at a time: a Gröbner
/// basis in the w-graded reverse-lexicographic order with ∂_j last has the
/// property that ∂_j divides a leading term only if it divides the whole
/// binomial, so dividing out ∂_j-powers yields a basis of (I : ∂_j^∞).
inline GroebnerBasis toric_ideal(const IntMatrix &A, const std::vector<Rat> &weights,
                                 const TermOrder &ord) {
  const std::size_t n = A.cols();
  if (weights.size() != n) throw Error(ErrorKind::DimensionMismatch, "grading weights");
  auto current = lattice_basis_ideal(kernel_lattice(A));
  for (std::size_t j = 0; j < n && !current.empty(); ++j) {
    std::vector<std::size_t> priority;
    for (std::size_t v = 0; v < n; ++v)
      if (v != j) priority.push_back(v);
    priority.push_back(j);
    auto gb = buchberger(current, TermOrder::weighted(weights, TermOrder::Kind::revlex, priority), n);
    current.clear();
    for (auto g : gb.generators) {
      Exponent e = g.tail ? std::min(g.lead[j], (*g.tail)[j]) : g.lead[j];
      g.lead[j] -= e;
      if (g.tail) (*g.tail)[j] -= e;
      current.push_back(std::move(g));
    }
  }
  auto result = buchberger(current, ord, n);
  for (const auto &g : result.generators)
    if (g.is_monomial())
      throw Error(ErrorKind::UnsupportedInput, "toric ideal acquired a monomial; grading is not positive");
  return result;
}

} // namespace gkz
