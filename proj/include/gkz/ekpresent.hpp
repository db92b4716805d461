#pragma once

// Symbolic presentation of M_A(β) and of the Euler–Koszul complex, and
// scripts reproducing them in an external computer-algebra system.
//
// Operators are written in a fixed normal form: x before ∂, ascending
// variable index, so that exported text is stable byte for byte.

#include "gkz/border.hpp"
#include "gkz/cone.hpp"
#include "gkz/error.hpp"
#include "gkz/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gkz {

inline std::string format_rational(const Rat &q) { return q.get_str(); }

/// E_i − c with E_i = Σ_j a_{i,j}·x_j∂_j.
struct EulerOperator {
  std::size_t index = 0;
  IntVector coefficients;
  Rat shift;

  [[nodiscard]] std::string text() const {
    std::string s;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      const Int &a = coefficients[j];
      if (a == 0) continue;
      std::string term = "x" + std::to_string(j + 1) + "*d" + std::to_string(j + 1);
      if (a < 0) s += '-';
      else if (!s.empty()) s += '+';
      Int mag = abs(a);
      if (mag != 1) s += mag.get_str() + "*";
      s += term;
    }
    if (shift > 0) s += "-" + format_rational(shift);
    if (shift < 0) s += (s.empty() ? "" : "+") + format_rational(-shift);
    return s.empty() ? "0" : s;
  }
};

using GkzOperator = std::variant<EulerOperator, Binomial>;

inline std::string to_string(const GkzOperator &op) {
  if (const auto *e = std::get_if<EulerOperator>(&op)) return e->text();
  return to_string(std::get<Binomial>(op));
}

inline std::vector<EulerOperator> euler_operators(const IntMatrix &A, const RatVector &beta) {
  if (beta.size() != A.rows()) throw Error(ErrorKind::DimensionMismatch, "β length");
  std::vector<EulerOperator> out;
  for (std::size_t i = 0; i < A.rows(); ++i) out.push_back({i, A.row(i), beta[i]});
  return out;
}

/// E_i − β_i for i = 1..d, followed by the toric generators of I_A.
inline std::vector<GkzOperator> gkz_generators(const GkzMatrix &G, const RatVector &beta,
                                               const TermOrder &ord = TermOrder::grevlex()) {
  std::vector<GkzOperator> out;
  for (auto &e : euler_operators(G.matrix(), beta)) out.emplace_back(std::move(e));
  for (auto &b : toric_ideal(G, ord).generators) out.emplace_back(std::move(b));
  return out;
}

/// sign·(E_euler − β_euler); sign 0 is a zero entry.
struct KoszulEntry {
  int sign = 0;
  std::size_t euler = 0;
  friend bool operator==(const KoszulEntry &, const KoszulEntry &) = default;
};

/// Matrix of the differential from homological degree q to q − 1, rows indexed
/// by the target basis and columns by the source basis (sorted subsets).
struct KoszulMatrix {
  std::size_t degree = 0;
  std::vector<ColumnSet> source_basis;
  std::vector<ColumnSet> target_basis;
  std::vector<std::vector<KoszulEntry>> entries;
};

struct EkPresentation {
  std::size_t d = 0, n = 0;
  IntMatrix A;
  RatVector beta;
  std::vector<Binomial> toric;
  std::vector<EulerOperator> euler;
  IntVector generator_degree;        // degree of the generator of S_A: zero
  std::vector<Int> ranks;            // q ↦ binom(d, q)
  std::vector<KoszulMatrix> differentials;  // differentials[q-1] : K_q → K_{q-1}
};

inline EkPresentation ek_complex(const GkzMatrix &G, const RatVector &beta,
                                 const TermOrder &ord = TermOrder::grevlex()) {
  EkPresentation p;
  p.d = G.d();
  p.n = G.n();
  p.A = G.matrix();
  p.beta = beta;
  p.toric = toric_ideal(G, ord).generators;
  p.euler = euler_operators(G.matrix(), beta);
  p.generator_degree.assign(p.d, Int(0));

  std::vector<std::vector<ColumnSet>> bases;
  for (std::size_t q = 0; q <= p.d; ++q) {
    bases.push_back(detail::subsets_of_size(p.d, q));
    p.ranks.push_back(binomial_coefficient(p.d, q));
  }
  for (std::size_t q = 1; q <= p.d; ++q) {
    KoszulMatrix m;
    m.degree = q;
    m.source_basis = bases[q];
    m.target_basis = bases[q - 1];
    m.entries.assign(m.target_basis.size(), std::vector<KoszulEntry>(m.source_basis.size()));
    for (std::size_t c = 0; c < m.source_basis.size(); ++c) {
      const auto &S = m.source_basis[c];
      for (std::size_t r = 0; r < S.size(); ++r) {
        ColumnSet rest = S;
        rest.erase(rest.begin() + static_cast<long>(r));
        auto row = std::find(m.target_basis.begin(), m.target_basis.end(), rest) - m.target_basis.begin();
        m.entries[static_cast<std::size_t>(row)][c] = {r % 2 == 0 ? 1 : -1, S[r]};
      }
    }
    p.differentials.push_back(std::move(m));
  }
  return p;
}

/// Expands every composite differential with commuting symbols E_i − β_i and
/// checks that all coefficients cancel.
inline bool formal_square_is_zero(const EkPresentation &p) {
  for (std::size_t q = 2; q <= p.d; ++q) {
    const auto &hi = p.differentials[q - 1];  // q → q−1
    const auto &lo = p.differentials[q - 2];  // q−1 → q−2
    for (std::size_t r = 0; r < lo.target_basis.size(); ++r)
      for (std::size_t c = 0; c < hi.source_basis.size(); ++c) {
        std::map<std::pair<std::size_t, std::size_t>, int> terms;
        for (std::size_t mid = 0; mid < hi.target_basis.size(); ++mid) {
          const auto &a = lo.entries[r][mid];
          const auto &b = hi.entries[mid][c];
          if (a.sign == 0 || b.sign == 0) continue;
          terms[{std::min(a.euler, b.euler), std::max(a.euler, b.euler)}] += a.sign * b.sign;
        }
        for (const auto &[key, coeff] : terms)
          if (coeff != 0) return false;
      }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Export

enum class Dialect { macaulay2 };

inline Dialect parse_dialect(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "macaulay2" || lower == "m2") return Dialect::macaulay2;
  throw Error(ErrorKind::UnsupportedDialect, "unknown script dialect '" + std::string(name) + "'");
}

/// M_A(β) → M_A(β + a_j) given by right multiplication with ∂_j.
struct ContiguityPayload {
  IntMatrix A;
  std::vector<Binomial> toric;
  RatVector beta;
  std::size_t j = 0;
  std::vector<std::string> notes;  // extra header comment lines
};

inline ContiguityPayload contiguity_payload(const GkzMatrix &G, const RatVector &beta, std::size_t j,
                                            const TermOrder &ord = TermOrder::grevlex()) {
  if (j >= G.n()) throw Error(ErrorKind::IndexOutOfRange, "contiguity column");
  if (beta.size() != G.d()) throw Error(ErrorKind::DimensionMismatch, "β length");
  return {G.matrix(), toric_ideal(G, ord).generators, beta, j, {}};
}

struct BorderPayload {
  IntMatrix A;
  RatVector beta;
  std::vector<BorderImageReport> reports;
};

using ExportPayload = std::variant<EkPresentation, ContiguityPayload, BorderPayload>;

namespace detail {

inline std::string m2_list(const RatVector &v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_rational(v[i]);
  return s + "}";
}
inline std::string m2_list(const IntVector &v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "}";
}
inline std::string m2_matrix(const IntMatrix &A) {
  std::string s = "{";
  for (std::size_t i = 0; i < A.rows(); ++i) s += (i ? "," : "") + m2_list(A.row(i));
  return s + "}";
}
inline std::string paren_list(const RatVector &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_rational(v[i]);
  return s + ")";
}
inline std::string paren_list(const IntVector &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}
inline std::string subset_label(const ColumnSet &s) {
  std::string out = "e{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
  return out + "}";
}

inline std::string weyl_ring(std::size_t n) {
  std::string vars, pairs;
  for (std::size_t j = 1; j <= n; ++j) vars += "x" + std::to_string(j) + ",";
  for (std::size_t j = 1; j <= n; ++j) vars += "d" + std::to_string(j) + (j < n ? "," : "");
  for (std::size_t j = 1; j <= n; ++j)
    pairs += "x" + std::to_string(j) + "=>d" + std::to_string(j) + (j < n ? ", " : "");
  return "D = QQ[" + vars + ", WeylAlgebra => {" + pairs + "}];\n";
}

inline std::string toric_list(const std::vector<Binomial> &toric) {
  std::string s = "toric = {";
  for (std::size_t i = 0; i < toric.size(); ++i) s += (i ? ", " : "") + to_string(toric[i]);
  return s + "};\n";
}

inline std::string euler_list(const std::vector<EulerOperator> &euler) {
  std::string s = "{";
  for (std::size_t i = 0; i < euler.size(); ++i) s += (i ? ", " : "") + euler[i].text();
  return s + "}";
}

inline std::string m2_ek(const EkPresentation &p) {
  std::ostringstream o;
  o << "-- Euler-Koszul complex K(S_A, beta)\n";
  o << "-- A = " << m2_matrix(p.A) << "\n";
  o << "-- beta = " << m2_list(p.beta) << "\n";
  o << "-- ranks by homological degree:";
  for (std::size_t q = 0; q < p.ranks.size(); ++q) o << " q=" << q << ":" << p.ranks[q].get_str();
  o << "\n";
  o << "needsPackage \"Dmodules\";\n";
  o << weyl_ring(p.n);
  o << toric_list(p.toric);
  o << "euler = " << euler_list(p.euler) << ";\n";
  o << "I = ideal(euler | toric);\n";
  o << "M = D^1/I;\n";
  for (const auto &m : p.differentials) {
    o << "-- K" << m.degree << " -> K" << m.degree - 1 << "; columns:";
    for (const auto &s : m.source_basis) o << " " << subset_label(s);
    o << "; rows:";
    for (const auto &s : m.target_basis) o << " " << (s.empty() ? std::string("e{}") : subset_label(s));
    o << "\n";
    o << "K" << m.degree << " = matrix{";
    for (std::size_t r = 0; r < m.entries.size(); ++r) {
      o << (r ? "," : "") << "{";
      for (std::size_t c = 0; c < m.entries[r].size(); ++c) {
        const auto &e = m.entries[r][c];
        o << (c ? ", " : "");
        if (e.sign == 0) o << "0";
        else o << (e.sign < 0 ? "-" : "") << "(" << p.euler[e.euler].text() << ")";
      }
      o << "}";
    }
    o << "};\n";
  }
  return o.str();
}

inline std::string m2_contiguity(const ContiguityPayload &c) {
  const std::size_t n = c.A.cols();
  RatVector shifted = c.beta;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += c.A(i, c.j);
  const std::string dj = "d" + std::to_string(c.j + 1);
  std::ostringstream o;
  o << "-- Contiguity morphism M_A(beta) -> M_A(beta + a_j), P |-> P*" << dj << "\n";
  o << "-- A = " << m2_matrix(c.A) << "\n";
  o << "-- beta = " << m2_list(c.beta) << ", j = " << c.j + 1 << ", beta + a_j = " << m2_list(shifted) << "\n";
  for (const auto &note : c.notes) o << "-- " << note << "\n";
  o << "needsPackage \"Dmodules\";\n";
  o << weyl_ring(n);
  o << toric_list(c.toric);
  o << "I0 = ideal(" << euler_list(euler_operators(c.A, c.beta)) << " | toric);\n";
  o << "I1 = ideal(" << euler_list(euler_operators(c.A, shifted)) << " | toric);\n";
  o << "M0 = D^1/I0;\n";
  o << "M1 = D^1/I1;\n";
  o << "f = map(M1, M0, matrix{{" << dj << "}});\n";
  o << "H0 = prune coker f;\n";
  o << "H1 = prune ker f;\n";
  o << "print H0;\n";
  o << "print H1;\n";
  return o.str();
}

inline std::string m2_border(const BorderPayload &b) {
  std::ostringstream o;
  o << "-- Direct images through border tori (summary only, nothing to evaluate)\n";
  o << "-- A = " << m2_matrix(b.A) << "\n";
  o << "-- beta = " << m2_list(b.beta) << "\n";
  for (const auto &r : b.reports) {
    std::string cols = "{";
    for (std::size_t i = 0; i < r.face.columns.size(); ++i)
      cols += (i ? "," : "") + std::to_string(r.face.columns[i] + 1);
    cols += "}";
    o << "-- face " << cols << ": dim " << r.dim << ", K = " << paren_list(r.k) << ", index "
      << r.index.get_str() << ", " << (r.nonzero ? "nonzero" : "zero") << "\n";
    o << "--   Q' basis:";
    for (std::size_t i = 0; i < r.qprime.rank(); ++i) o << " " << paren_list(r.qprime.vector(i));
    o << "\n--   Q'' basis:";
    for (std::size_t i = 0; i < r.qsecond.rank(); ++i) o << " " << paren_list(r.qsecond.vector(i));
    o << "\n--   beta' = " << paren_list(r.beta_prime) << ", beta'' = " << paren_list(r.beta_second) << "\n";
    o << "--   alpha:";
    for (const auto &a : r.alpha) o << " " << paren_list(a);
    o << "\n--   multiplicities:";
    for (std::size_t q = 0; q < r.multiplicity.size(); ++q) o << " q=" << q << ":" << r.multiplicity[q].get_str();
    o << "\n--   polynomial variables:";
    for (auto j : r.polynomial_variables) o << " x" << j + 1;
    o << "\n";
  }
  return o.str();
}

} // namespace detail

inline std::string export_script(std::string_view dialect, const ExportPayload &payload) {
  switch (parse_dialect(dialect)) {
  case Dialect::macaulay2:
    return std::visit(
        [](const auto &p) -> std::string {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, EkPresentation>) return detail::m2_ek(p);
          else if constexpr (std::is_same_v<T, ContiguityPayload>) return detail::m2_contiguity(p);
          else return detail::m2_border(p);
        },
        payload);
  }
  return {};
}

} // namespace gkz
