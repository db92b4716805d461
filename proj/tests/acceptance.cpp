// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include "gkz/gkz.hpp"
#include "oracles.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace gkz;

namespace {

struct Check {
  std::string failure;
  void require(bool ok, const std::string &what) {
    if (!ok && failure.empty()) failure = what;
  }
};

RatVector rv(std::initializer_list<Rat> xs) { return {xs.begin(), xs.end()}; }

std::vector<std::string> strings(const std::vector<Binomial> &gens) {
  std::vector<std::string> out;
  for (const auto &g : gens) out.push_back(to_string(g));
  return out;
}

const IntMatrix QUADRANT{{1, 1, 0}, {0, 1, 1}};
const IntMatrix CUSP{{2, 3}};
const IntMatrix CUBIC{{1, 1, 1, 1}, {0, 1, 2, 3}};

void quadrant(Check &c) {
  auto G = validate(QUADRANT);
  auto toric = strings(toric_ideal(G).generators);
  c.require(toric == std::vector<std::string>{"d1*d3-d2"} || toric == std::vector<std::string>{"d2-d1*d3"},
            "toric ideal");

  ResonanceAnalyzer R(G);
  auto v = R.verdict(rv({1, -1}));
  c.require(!v.per_column[0].strongly_resonant, "j = 1 must not witness");
  c.require(v.per_column[1].strongly_resonant && v.per_column[2].strongly_resonant, "witnesses at j = 2, 3");
  c.require(!v.isomorphic && v.statement == "not isomorphic; witnesses j = 2 (k=1), j = 3 (k=1)",
            "verdict for (1,-1)");
  auto w = R.verdict(rv({2, 0}));
  c.require(!w.strongly_resonant && w.isomorphic && w.statement == "isomorphic", "verdict for (2,0)");
  c.require(R.cokernel_levels(rv({1, -1}), 1) == std::vector<Int>{Int(0)}, "cokernel levels");
  c.require(R.minimal_shift_full(rv({1, -1})) == 1, "minimal full shift");

  std::vector<ColumnSet> faces;
  for (const auto &f : G.faces()) faces.push_back(f.columns);
  c.require(faces == std::vector<ColumnSet>{{}, {0}, {2}, {0, 1, 2}}, "face lattice");

  auto b = border_image(G, {0}, rv({1, -1}));
  c.require(b.index == 1, "border index");
  c.require(b.beta_second.size() == 1 && abs(b.beta_second[0]) == 1 && b.nonzero, "beta'' and nonzero");
  c.require(b.alpha == std::vector<RatVector>{rv({1})}, "alpha list");
  c.require(b.multiplicity == std::vector<Int>{Int(1), Int(1)}, "multiplicities");
}

void sres_grid(Check &c) {
  ResonanceAnalyzer R(validate(QUADRANT));
  std::vector<oracle::Closure> closures;
  for (std::size_t j = 0; j < 3; ++j)
    closures.emplace_back(QUADRANT, oracle::quotient_degrees(QUADRANT, {j}, 60), 20, 60);
  for (long b1 = -5; b1 <= 5; ++b1)
    for (long b2 = -5; b2 <= 5; ++b2) {
      RatVector beta = rv({b1, b2});
      bool expected = b1 <= -1 || b2 <= -1;
      bool brute = false;
      for (std::size_t j = 0; j < 3; ++j) brute = brute || oracle::sres_j(closures[j], QUADRANT, beta, j, 50);
      std::string at = " at (" + std::to_string(b1) + "," + std::to_string(b2) + ")";
      c.require(R.strongly_resonant(beta) == expected, "library vs half-planes" + at);
      c.require(brute == expected, "oracle vs half-planes" + at);
    }
}

void lattice_index(Check &c) {
  auto G = validate(CUSP);
  c.require(strings(toric_ideal(G).generators) == std::vector<std::string>{"d1^3-d2^2"}, "cusp toric ideal");
  for (const Rat &beta : {Rat(5), Rat(-1), Rat(1, 3), Rat(-7, 4)}) {
    auto r = border_image(G, {0}, rv({beta}));
    c.require(r.k == IntVector{Int(2)} && r.index == 2, "K and index");
    Rat half = beta / 2, shifted = (beta - 1) / 2;
    c.require(r.alpha == std::vector<RatVector>{rv({half}), rv({shifted})}, "alpha at " + beta.get_str());
  }
  c.require(border_image(G, {0}, rv({5})).alpha == std::vector<RatVector>{rv({Rat(5, 2)}), rv({2})},
            "alpha at 5");
  auto q = qdeg_quotient(G, {0});
  bool points = q.size() == 2;
  std::vector<Int> shifts;
  for (const auto &p : q.pieces) {
    points = points && p.span.empty();
    shifts.push_back(p.shift[0]);
  }
  std::sort(shifts.begin(), shifts.end());
  c.require(points && shifts == std::vector<Int>{Int(-3), Int(0)}, "qdeg of S_A/<d1>");
}

IntMatrix random_matrix(std::mt19937 &rng) {
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_int_distribution<long> entry(-10, 10);
  IntMatrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
  return m;
}

void properties(Check &c) {
  std::mt19937 rng(20261015);
  for (int t = 0; t < 200; ++t) {
    IntMatrix M = random_matrix(rng);
    auto s = snf(M);
    bool chain = true;
    for (std::size_t i = 0; i + 1 < s.rank; ++i) chain = chain && s.D(i + 1, i + 1) % s.D(i, i) == 0;
    c.require(s.U * M * s.V == s.D && is_unimodular(s.U) && is_unimodular(s.V) && chain, "SNF instance");
    auto h = hnf(M);
    c.require(h.U * M == h.H && is_unimodular(h.U), "HNF instance");
  }

  std::uniform_int_distribution<std::size_t> nvars(2, 5), count(1, 3), ngens(1, 6), small(1, 5);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = nvars(rng);
    std::vector<Binomial> gens;
    for (std::size_t k = count(rng); k > 0; --k) {
      IntVector u(n);
      for (auto &x : u) x = entry(rng);
      gens.push_back(toric_binomial(u));
    }
    for (const auto &ord : {TermOrder::grevlex(), TermOrder::lex()})
      c.require(strings(buchberger(gens, ord, n, PairSelection::fifo).generators) ==
                    strings(buchberger(gens, ord, n, PairSelection::normal).generators),
                "pair disciplines disagree");
  }

  std::uniform_int_distribution<Exponent> e(0, 4);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = small(rng);
    std::vector<Monomial> mons;
    for (std::size_t k = ngens(rng); k > 0; --k) {
      Monomial g(n);
      for (auto &x : g.exps) x = e(rng);
      mons.push_back(g);
    }
    auto pairs = standard_pairs(mons, n);
    Monomial m(n);
    for (;;) {
      bool in_ideal = std::any_of(mons.begin(), mons.end(), [&](const Monomial &g) { return g.divides(m); });
      c.require(covered(pairs, m) == !in_ideal, "standard pair cover at " + to_string(m));
      std::size_t i = 0;
      while (i < n && m[i] == 5) m[i++] = 0;
      if (i == n) break;
      ++m[i];
    }
  }

  for (const auto &A : {QUADRANT, CUSP, CUBIC}) {
    auto G = validate(A);
    for (std::size_t j = 0; j < A.cols(); ++j)
      c.require(qdeg_quotient(G, {j}, TermOrder::lex()) == qdeg_quotient(G, {j}, TermOrder::grevlex()),
                "qdeg depends on the order");
  }
  c.require(toric_ideal(validate(CUBIC)).generators.size() == 3, "twisted cubic");
}

void consistency(Check &c) {
  ResonanceAnalyzer R(validate(QUADRANT));
  const IntVector eps = R.epsilon();
  std::mt19937 rng(6);
  std::uniform_int_distribution<long> entry(-6, 6);
  auto shifted = [&](const RatVector &beta, const Int &k) {
    RatVector q = beta;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += Rat(k * eps[i]);
    return q;
  };
  for (int t = 0; t < 200; ++t) {
    RatVector beta = rv({entry(rng), entry(rng)});
    auto v = R.verdict(beta);
    bool any = std::any_of(v.per_column.begin(), v.per_column.end(),
                           [](const SResResult &s) { return s.strongly_resonant; });
    c.require(v.isomorphic == !any, "isomorphism flag");
    if (any) c.require(R.is_resonant(beta).resonant, "SRes without Res");
    Int k = v.minimal_shift_full;
    c.require(!R.strongly_resonant(shifted(beta, k)), "k_min does not escape");
    if (k > 0) c.require(R.strongly_resonant(shifted(beta, k - 1)), "k_min - 1 escapes");
  }
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void golden(Check &c) {
  const std::string path = std::string(GKZ_TEST_DATA) + "/quadrant_contiguity.m2";
  const std::string expected = slurp(path);
  c.require(!expected.empty(), "golden file missing: " + path);
  c.require(expected.find("x1*d1-2, d2, d3") != std::string::npos, "golden header lacks the expected result");
  auto payload = contiguity_payload(validate(QUADRANT), rv({1, -1}), 1);
  payload.notes.push_back("expected: H0 and H1 are both isomorphic to D/ideal(x1*d1-2, d2, d3)");
  c.require(export_script("macaulay2", payload) == expected, "script differs from the golden file");
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check &)>>> criteria{
      {"quadrant matrix end to end", quadrant},
      {"strong resonance grid on [-5,5]^2", sres_grid},
      {"lattice index for A = [2 3]", lattice_index},
      {"property suites", properties},
      {"logical consistency", consistency},
      {"export golden file", golden},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception &e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 60) c.require(false, "over the 60 s budget");
    const bool ok = c.failure.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
    if (!ok) std::cout << " (" << c.failure << ")";
    std::cout << " [" << std::fixed << std::setprecision(2) << secs << " s]\n";
  }
  return failed == 0 ? 0 : 1;
}
