#include "gkz/ekpresent.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace gkz;

namespace {

RatVector rv(std::initializer_list<Rat> xs) { return {xs.begin(), xs.end()}; }

std::vector<std::string> strings(const std::vector<GkzOperator> &ops) {
  std::vector<std::string> out;
  for (const auto &op : ops) out.push_back(to_string(op));
  return out;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST(Generators, Examples) {
  EXPECT_EQ(strings(gkz_generators(validate(IntMatrix{{1, 1, 0}, {0, 1, 1}}), rv({1, -1}))),
            (std::vector<std::string>{"x1*d1+x2*d2-1", "x2*d2+x3*d3+1", "d1*d3-d2"}));
  EXPECT_EQ(strings(gkz_generators(validate(IntMatrix{{2, 3}}), rv({0}))),
            (std::vector<std::string>{"2*x1*d1+3*x2*d2", "d1^3-d2^2"}));
  EXPECT_EQ(strings(gkz_generators(validate(IntMatrix::identity(2)), rv({0, 0}))),
            (std::vector<std::string>{"x1*d1", "x2*d2"}));
  EXPECT_EQ(EulerOperator({0, {Int(1)}, Rat(-3, 2)}).text(), "x1*d1+3/2");
}

TEST(Generators, AreHomogeneous) {
  for (const auto &A : {IntMatrix{{1, 1, 1, 1}, {0, 1, 2, 3}}, IntMatrix{{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}}) {
    auto p = ek_complex(validate(A), RatVector(A.rows(), Rat(0)));
    for (const auto &g : p.toric) EXPECT_EQ(oracle::substitute(A, g.lead), oracle::substitute(A, *g.tail));
    for (const auto &x : p.generator_degree) EXPECT_EQ(x, 0);
    ASSERT_EQ(p.euler.size(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) EXPECT_EQ(p.euler[i].coefficients, A.row(i));
  }
}

TEST(Koszul, QuadrantShape) {
  auto p = ek_complex(validate(IntMatrix{{1, 1, 0}, {0, 1, 1}}), rv({1, -1}));
  EXPECT_EQ(p.ranks, (std::vector<Int>{Int(1), Int(2), Int(1)}));
  ASSERT_EQ(p.differentials.size(), 2u);

  const auto &k1 = p.differentials[0];
  ASSERT_EQ(k1.entries.size(), 1u);
  EXPECT_EQ(k1.entries[0], (std::vector<KoszulEntry>{{1, 0}, {1, 1}}));

  // e{1,2} ↦ (E1 − β1)·e{2} − (E2 − β2)·e{1}
  const auto &k2 = p.differentials[1];
  EXPECT_EQ(k2.target_basis, (std::vector<ColumnSet>{{0}, {1}}));
  EXPECT_EQ(k2.entries[0][0], (KoszulEntry{-1, 1}));
  EXPECT_EQ(k2.entries[1][0], (KoszulEntry{1, 0}));
  EXPECT_TRUE(formal_square_is_zero(p));
}

TEST(Koszul, OneRow) {
  auto p = ek_complex(validate(IntMatrix{{2, 3}}), rv({Rat(1, 2)}));
  EXPECT_EQ(p.ranks, (std::vector<Int>{Int(1), Int(1)}));
  ASSERT_EQ(p.differentials.size(), 1u);
  EXPECT_EQ(p.differentials[0].entries, (std::vector<std::vector<KoszulEntry>>{{{1, 0}}}));
  EXPECT_TRUE(formal_square_is_zero(p));
}

TEST(Koszul, SquareVanishesAndSignsMatter) {
  auto p = ek_complex(validate(IntMatrix{{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}), rv({0, 1, 2}));
  EXPECT_EQ(p.ranks, (std::vector<Int>{Int(1), Int(3), Int(3), Int(1)}));
  EXPECT_TRUE(formal_square_is_zero(p));
  auto broken = p;
  for (auto &row : broken.differentials[1].entries)
    for (auto &e : row) e.sign = std::abs(e.sign);
  EXPECT_FALSE(formal_square_is_zero(broken));
}

TEST(Export, Dialects) {
  EXPECT_EQ(parse_dialect("M2"), Dialect::macaulay2);
  EXPECT_EQ(parse_dialect("Macaulay2"), Dialect::macaulay2);
  try {
    (void)parse_dialect("maple");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDialect);
  }
}

TEST(Export, EkScriptIsDeterministic) {
  auto G = validate(IntMatrix{{1, 1, 0}, {0, 1, 1}});
  auto a = export_script("macaulay2", ek_complex(G, rv({1, -1})));
  auto b = export_script("m2", ek_complex(G, rv({1, -1})));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("K2 = matrix{{-(x2*d2+x3*d3+1)},{(x1*d1+x2*d2-1)}};"), std::string::npos);
  EXPECT_NE(a.find("toric = {d1*d3-d2};"), std::string::npos);
}

TEST(Export, ContiguityGolden) {
  auto G = validate(IntMatrix{{1, 1, 0}, {0, 1, 1}});
  auto payload = contiguity_payload(G, rv({1, -1}), 1);
  payload.notes.push_back("expected: H0 and H1 are both isomorphic to D/ideal(x1*d1-2, d2, d3)");
  EXPECT_EQ(export_script("macaulay2", payload), slurp(std::string(GKZ_TEST_DATA) + "/quadrant_contiguity.m2"));
}

TEST(Export, ContiguityErrors) {
  auto G = validate(IntMatrix{{1, 1, 0}, {0, 1, 1}});
  EXPECT_THROW((void)contiguity_payload(G, rv({1, -1}), 3), Error);
  EXPECT_THROW((void)contiguity_payload(G, rv({1}), 0), Error);
}

TEST(Export, BorderSummary) {
  auto G = validate(IntMatrix{{2, 3}});
  BorderPayload b{G.matrix(), rv({5}), {border_image(G, {0}, rv({5}))}};
  auto s = export_script("macaulay2", b);
  EXPECT_NE(s.find("-- face {1}: dim 1, K = (2), index 2, nonzero"), std::string::npos);
  EXPECT_NE(s.find("(5/2) (2)"), std::string::npos);
}
