#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "pmcount/errors.hpp"
#include "pmcount/oracle.hpp"
#include "pmcount/pfaffian.hpp"

namespace pmcount {
namespace {

// Fraction-free elimination on an integer matrix (entries scaled to a common denominator first).
Rational bareiss_det(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class scale = 1;
  for (const auto& row : a) {
    for (const auto& x : row) scale = lcm(scale, mpz_class(x.get_den()));
  }
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = mpz_class(a[i][j].get_num() * (scale / a[i][j].get_den()));
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  mpz_class denom = 1;
  for (std::size_t i = 0; i < n; ++i) denom *= scale;
  Rational det(mpz_class(sign * m[n - 1][n - 1]), denom);
  det.canonicalize();
  return det;
}

TEST(Pfaffian, TwoByTwoAndOdd) {
  SkewMatrix a(2);
  a.set(0, 1, Rational(5, 3));
  EXPECT_EQ(pfaffian_exact(a), Rational(5, 3));
  SkewMatrix odd(3);
  odd.set(0, 1, 1);
  odd.set(1, 2, 2);
  EXPECT_EQ(pfaffian_exact(odd), 0);
  EXPECT_EQ(pfaffian_exact(SkewMatrix(0)), 1);
}

TEST(Pfaffian, SquareEqualsDeterminant) {
  std::mt19937_64 rng(8);
  std::bernoulli_distribution sparse(0.3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + 2 * (trial % 5);
    SkewMatrix a(n);
    std::vector<std::vector<Rational>> dense(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Rational x = sparse(rng) ? Rational(0) : testing::random_rational(rng, -4, 4, 5);
        a.set(i, j, x);
        dense[i][j] = x;
        dense[j][i] = -x;
      }
    }
    const Rational pf = pfaffian_exact(a);
    EXPECT_EQ(pf * pf, bareiss_det(dense)) << "n=" << n;
  }
}

TEST(Pfaffian, RejectsNonSkew) {
  SkewMatrix a(2);
  a.set(0, 0, 1);
  EXPECT_THROW(pfaffian_exact(a), PreconditionError);
}

TEST(Kasteleyn, CycleHasOddClockwiseBoundedFace) {
  const auto c4 = testing::cycle(4);
  const auto emb = *test_planarity(c4);
  const auto o = kasteleyn_orient(c4, emb);
  EXPECT_TRUE(is_kasteleyn(emb, o));
  for (std::size_t f = 0; f < faces(emb).size(); ++f) {
    if (f == emb.outer_face) continue;
    EXPECT_EQ(clockwise_count(faces(emb)[f], o) % 2, 1u);
  }
}

TEST(Kasteleyn, SingleEdge) {
  const WeightedMultigraph g({1, 2}, {{1, 2, 1}});
  const auto emb = *test_planarity(g);
  EXPECT_TRUE(is_kasteleyn(emb, kasteleyn_orient(g, emb)));
}

TEST(Kasteleyn, RandomPlanarGraphs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_planar(4 + seed % 11, 1.0, {}, seed);
    const auto emb = *test_planarity(g);
    const auto o = kasteleyn_orient(g, emb);
    ASSERT_TRUE(is_kasteleyn(emb, o)) << "seed " << seed;
    const auto a = oriented_matrix(g, o);
    EXPECT_TRUE(a.is_skew());
  }
}

TEST(PerfMatchPlanar, Fixtures) {
  EXPECT_EQ(perfmatch_planar(WeightedMultigraph({1, 2}, {{1, 2, -2}})), -2);
  EXPECT_EQ(perfmatch_planar(testing::cycle(4, {1, 1, 1, -1})), 0);
  EXPECT_EQ(perfmatch_planar(gen_grid(4, 4)), 36);
  EXPECT_EQ(perfmatch_planar(gen_grid(2, 2)), 2);
  EXPECT_EQ(perfmatch_planar(gen_grid(3, 3)), 0);
  EXPECT_EQ(perfmatch_planar(WeightedMultigraph()), 1);
  EXPECT_THROW(perfmatch_planar(testing::complete_graph(5)), NotPlanarError);
  EXPECT_THROW(perfmatch_planar(testing::k33()), NotPlanarError);
}

TEST(PerfMatchPlanar, ParallelEdgesAndComponents) {
  const WeightedMultigraph g({1, 2, 3, 4, 5, 6}, {{1, 2, 2}, {1, 2, 3}, {3, 4, Rational(1, 2)}, {5, 6, -1}});
  EXPECT_EQ(perfmatch_planar(g), Rational(-5, 2));
  const WeightedMultigraph odd_part({1, 2, 3, 4, 5}, {{1, 2, 1}, {3, 4, 1}, {4, 5, 1}});
  EXPECT_EQ(perfmatch_planar(odd_part), 0);
}

TEST(PerfMatchPlanar, MatchesOracle) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto g = gen_planar(2 + seed % 13, 0.8, {-3, 3, 2}, seed);
    EXPECT_EQ(perfmatch_planar(g), brute_perfmatch(g)) << "seed " << seed;
  }
}

}  // namespace
}  // namespace pmcount
