#include "gkz/polyring.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gkz;

namespace {

Binomial bin(Monomial lead, Monomial tail) { return {std::move(lead), std::move(tail)}; }
Binomial mono(Monomial m) { return {std::move(m), std::nullopt}; }

std::vector<std::string> strings(const GroebnerBasis &gb) {
  std::vector<std::string> out;
  for (const auto &g : gb.generators) out.push_back(to_string(g));
  return out;
}

std::vector<Rat> ones(std::size_t n) { return std::vector<Rat>(n, Rat(1)); }

// Saturates by every variable through the elimination route.
GroebnerBasis saturate_all(GroebnerBasis gb) {
  for (std::size_t j = 0; j < gb.nvars; ++j) gb = saturate(gb, j);
  return gb;
}

} // namespace

TEST(Monomial, Formatting) {
  EXPECT_EQ(to_string(Monomial{1, 0, 1}), "d1*d3");
  EXPECT_EQ(to_string(Monomial{3, 0}), "d1^3");
  EXPECT_EQ(to_string(Monomial{0, 0}), "1");
  EXPECT_EQ(to_string(bin({1, 0, 1}, {0, 1, 0})), "d1*d3-d2");
}

TEST(TermOrder, LexAndGrevlex) {
  auto lex = TermOrder::lex();
  auto grevlex = TermOrder::grevlex();
  EXPECT_TRUE(lex.less(Monomial{0, 2}, Monomial{1, 0}));
  EXPECT_TRUE(grevlex.less(Monomial{1, 0}, Monomial{0, 2}));
  // equal degree: more of the last variable makes a monomial smaller
  EXPECT_FALSE(grevlex.less(Monomial{0, 2, 0}, Monomial{1, 0, 1}));
  EXPECT_TRUE(grevlex.less(Monomial{1, 0, 1}, Monomial{0, 2, 0}));
}

TEST(Buchberger, SingleGeneratorsAreAlreadyReduced) {
  for (const auto &ord : {TermOrder::lex(), TermOrder::grevlex()}) {
    auto gb = buchberger({bin({1, 0, 1}, {0, 1, 0})}, ord, 3);
    EXPECT_EQ(strings(gb), std::vector<std::string>{"d1*d3-d2"});
  }
  auto cusp = buchberger({bin({3, 0}, {0, 2})}, TermOrder::grevlex(), 2);
  EXPECT_EQ(strings(cusp), std::vector<std::string>{"d1^3-d2^2"});
}

TEST(Buchberger, TwistedCubicAfterSaturation) {
  std::vector<Binomial> lattice{bin({1, 0, 1, 0}, {0, 2, 0, 0}), bin({0, 1, 0, 1}, {0, 0, 2, 0})};
  auto gb = saturate_all(buchberger(lattice, TermOrder::grevlex(), 4));
  EXPECT_EQ(strings(gb), (std::vector<std::string>{"d2^2-d1*d3", "d2*d3-d1*d4", "d3^2-d2*d4"}));
}

TEST(NormalForm, Examples) {
  auto gb = buchberger({bin({1, 0, 1}, {0, 1, 0})}, TermOrder::lex(), 3);
  EXPECT_EQ(normal_form(Monomial{0, 1, 0}, gb), (Monomial{0, 1, 0}));
  EXPECT_EQ(normal_form(Monomial{1, 0, 1}, gb), (Monomial{0, 1, 0}));
  EXPECT_FALSE(normal_form(bin({1, 0, 1}, {0, 1, 0}), gb));
  EXPECT_TRUE(contains(gb, bin({2, 0, 2}, {0, 2, 0})));
}

TEST(NormalForm, IdempotentOnRandomMonomials) {
  IntMatrix A{{1, 1, 1, 1}, {0, 1, 2, 3}};
  auto gb = toric_ideal(A, ones(4), TermOrder::grevlex());
  std::mt19937 rng(3);
  std::uniform_int_distribution<Exponent> e(0, 6);
  for (int t = 0; t < 200; ++t) {
    Monomial m{e(rng), e(rng), e(rng), e(rng)};
    auto nf = normal_form(m, gb);
    ASSERT_TRUE(nf);
    ASSERT_EQ(normal_form(*nf, gb), nf);
    ASSERT_EQ(oracle::substitute(A, *nf), oracle::substitute(A, m));
  }
}

TEST(Saturate, Examples) {
  auto gb = buchberger({bin({1, 1}, {1, 0})}, TermOrder::grevlex(), 2);
  auto s = saturate(gb, 0);
  ASSERT_EQ(s.generators.size(), 1u);
  EXPECT_EQ(s.generators[0], bin({0, 1}, {0, 0}));

  auto e23 = buchberger({bin({1, 0, 1}, {0, 1, 0})}, TermOrder::grevlex(), 3);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(strings(saturate(e23, j)), strings(e23));

  auto unit = saturate(buchberger({mono({1, 0})}, TermOrder::grevlex(), 2), 0);
  EXPECT_TRUE(unit.is_unit());
}

TEST(InitialIdeal, Examples) {
  auto gb = buchberger({bin({1, 0, 1}, {0, 1, 0})}, TermOrder::lex(), 3);
  EXPECT_EQ(initial_ideal(gb), (std::vector<Monomial>{Monomial{1, 0, 1}}));
  EXPECT_TRUE(initial_ideal(GroebnerBasis{{}, TermOrder::grevlex(), 3, true}).empty());
  auto cusp = buchberger({bin({3, 0}, {0, 2})}, TermOrder::grevlex(), 2);
  EXPECT_EQ(initial_ideal(cusp), (std::vector<Monomial>{Monomial{3, 0}}));
}

TEST(ToricIdeal, Examples) {
  EXPECT_EQ(strings(toric_ideal(IntMatrix{{1, 1, 0}, {0, 1, 1}}, {Rat(1), Rat(2), Rat(1)}, TermOrder::grevlex())),
            std::vector<std::string>{"d1*d3-d2"});
  EXPECT_EQ(strings(toric_ideal(IntMatrix{{2, 3}}, {Rat(2), Rat(3)}, TermOrder::grevlex())),
            std::vector<std::string>{"d1^3-d2^2"});
  EXPECT_TRUE(toric_ideal(IntMatrix::identity(2), ones(2), TermOrder::grevlex()).generators.empty());
}

TEST(ToricIdeal, AgreesWithKernelEnumerationAndEliminationRoute) {
  const std::vector<IntMatrix> mats{IntMatrix{{1, 1, 0}, {0, 1, 1}}, IntMatrix{{2, 3}},
                                    IntMatrix{{1, 1, 1, 1}, {0, 1, 2, 3}}, IntMatrix{{1, 1, 1, 1}, {0, 1, 3, 4}},
                                    IntMatrix{{1, 1, 1}, {0, 2, 5}}};
  for (const auto &A : mats) {
    std::vector<Rat> w(A.cols(), Rat(0));  // column sums are positive for these matrices
    for (std::size_t j = 0; j < A.cols(); ++j)
      for (std::size_t i = 0; i < A.rows(); ++i) w[j] += A(i, j);
    for (const auto &ord : {TermOrder::grevlex(), TermOrder::lex()}) {
      auto gb = toric_ideal(A, w, ord);
      for (const auto &g : gb.generators) {
        ASSERT_FALSE(g.is_monomial());
        ASSERT_EQ(oracle::substitute(A, g.lead), oracle::substitute(A, *g.tail));
      }
      for (const auto &u : oracle::kernel_vectors(A, 3)) ASSERT_TRUE(contains(gb, toric_binomial(u)));
      auto lattice = buchberger(lattice_basis_ideal(kernel_lattice(A)), ord, A.cols());
      ASSERT_EQ(strings(saturate_all(lattice)), strings(gb));
      ASSERT_EQ(strings(saturate_all(gb)), strings(gb));
    }
  }
}

TEST(Buchberger, PairDisciplinesGiveTheSameReducedBasis) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<std::size_t> nvars(2, 5), count(1, 3);
  std::uniform_int_distribution<long> entry(-4, 4);
  int checked = 0;
  while (checked < 50) {
    const std::size_t n = nvars(rng);
    std::vector<IntVector> basis;
    for (std::size_t k = count(rng); k > 0; --k) {
      IntVector u(n);
      for (auto &x : u) x = entry(rng);
      basis.push_back(u);
    }
    std::vector<Binomial> gens;
    for (const auto &u : basis) gens.push_back(toric_binomial(u));
    for (const auto &ord : {TermOrder::grevlex(), TermOrder::lex()}) {
      auto a = buchberger(gens, ord, n, PairSelection::fifo);
      auto b = buchberger(gens, ord, n, PairSelection::normal);
      ASSERT_EQ(strings(a), strings(b)) << "trial " << checked;
      for (const auto &g : gens) ASSERT_TRUE(contains(a, g));
    }
    ++checked;
  }
}
