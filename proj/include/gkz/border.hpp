#pragma once

// Direct images of the twisted torus module through the border tori O_F.
//
// For a face F the image is nonzero exactly when the Q″-part of β is
// integral. It then splits into [Q′_F : Z·F] summands indexed by
// r ∈ ∏ [0, k_i), twisted by α_i = (β′_i − r_i)/k_i, each tensored with an
// exterior algebra on d − dim F generators.

#include "gkz/cone.hpp"
#include "gkz/exactlat.hpp"
#include "gkz/polyring.hpp"

#include <optional>
#include <vector>

namespace gkz {

struct BorderImageReport {
  Face face;                      // selected columns; their positive hull is a face
  std::size_t dim = 0;
  LatticeBasis qprime;            // adapted: Z·F is spanned by k_i·q_i
  IntVector k;
  Int index;
  LatticeBasis qsecond;
  RatVector beta_prime;           // coordinates in the q′ basis
  RatVector beta_second;          // coordinates in the q″ basis
  bool nonzero = false;
  std::vector<RatVector> alpha;   // one per r-tuple, lexicographic in r
  std::vector<Int> multiplicity;  // q ↦ binom(d − dim F, q)
  ColumnSet polynomial_variables; // x_j for j ∉ F
};

inline Int binomial_coefficient(std::size_t n, std::size_t k) {
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline BorderImageReport border_image(const GkzMatrix &G, const ColumnSet &F, const RatVector &beta) {
  const Face face = G.face_selector(F);
  const std::size_t d = G.d();
  if (beta.size() != d) throw Error(ErrorKind::DimensionMismatch, "β length");

  BorderImageReport r;
  r.face = face;
  r.dim = face.dim;
  auto sat = saturate_with_diagonal(G.matrix().columns(face.columns));
  r.qprime = sat.qprime;
  r.k = sat.k;
  r.index = sat.index();
  r.qsecond = split_complement(r.qprime);

  IntMatrix inv = unimodular_inverse(concat(r.qprime, r.qsecond));
  RatVector coords(d, Rat(0));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t i = 0; i < d; ++i) coords[a] += Rat(inv(a, i)) * beta[i];
  r.beta_prime.assign(coords.begin(), coords.begin() + static_cast<long>(r.dim));
  r.beta_second.assign(coords.begin() + static_cast<long>(r.dim), coords.end());
  r.nonzero = is_integral(r.beta_second);

  if (r.nonzero) {
    std::vector<Int> digits(r.dim, Int(0));
    for (;;) {
      RatVector a(r.dim);
      for (std::size_t i = 0; i < r.dim; ++i) a[i] = (r.beta_prime[i] - Rat(digits[i])) / Rat(r.k[i]);
      r.alpha.push_back(std::move(a));
      bool wrapped = true;
      for (std::size_t i = r.dim; i-- > 0;) {
        if (digits[i] + 1 < r.k[i]) {
          ++digits[i];
          wrapped = false;
          break;
        }
        digits[i] = 0;
      }
      if (wrapped) break;
    }
  }

  for (std::size_t q = 0; q <= d - r.dim; ++q) r.multiplicity.push_back(binomial_coefficient(d - r.dim, q));
  for (std::size_t j = 0; j < G.n(); ++j)
    if (!face.contains(j)) r.polynomial_variables.push_back(j);
  return r;
}

struct OrbitStratum {
  Face face;                      // selected columns; their positive hull is a face
  std::vector<Binomial> prime_generators;
};

/// One stratum O_F per face, with generators of its prime I_A^F. The monomial
/// generators are exactly the variables off the face.
inline std::vector<OrbitStratum> orbit_stratification(const GkzMatrix &G,
                                                      const TermOrder &ord = TermOrder::grevlex()) {
  std::vector<OrbitStratum> out;
  for (const auto &f : G.faces()) {
    auto gens = face_prime_generators(G, f.columns, ord);
    ColumnSet monomial_vars;
    for (const auto &g : gens) {
      if (!g.is_monomial()) continue;
      if (g.lead.degree() != 1)
        throw Error(ErrorKind::UnsupportedInput, "face prime has a non-variable monomial generator");
      for (std::size_t j = 0; j < G.n(); ++j)
        if (g.lead[j] == 1) monomial_vars.push_back(j);
    }
    ColumnSet off;
    for (std::size_t j = 0; j < G.n(); ++j)
      if (!f.contains(j)) off.push_back(j);
    if (monomial_vars != off)
      throw Error(ErrorKind::UnsupportedInput, "face prime monomials differ from the off-face variables");
    out.push_back({f, std::move(gens)});
  }
  return out;
}

} // namespace gkz
