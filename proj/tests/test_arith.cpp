#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace chiralat;

TEST(Arith, IsqrtAndDivision) {
  for (long n = 0; n < 2000; ++n) {
    Integer r = isqrt(Integer(n));
    EXPECT_LE(r * r, n);
    EXPECT_GT((r + 1) * (r + 1), n);
  }
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(ceil_div(-7, 2), -3);
  EXPECT_EQ(mod_floor(-7, 3), 2);
  EXPECT_EQ(gcd(-12, 18), 6);
  EXPECT_EQ(lcm(4, 6), 12);
}

TEST(Arith, ExtendedGcd) {
  for (long a = -20; a <= 20; ++a)
    for (long b = -20; b <= 20; ++b) {
      auto [g, x, y] = ext_gcd(a, b);
      EXPECT_EQ(g, gcd(a, b));
      EXPECT_EQ(a * x + b * y, g);
    }
}

TEST(Arith, DeterminantMatchesCofactorExpansion) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 1 + t % 5;
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = d(rng);
    EXPECT_EQ(determinant(m), oracle::det(m));
  }
}

TEST(Arith, InverseAndSolve) {
  IntMatrix a{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  auto inv = inverse(a);
  ASSERT_TRUE(inv);
  EXPECT_EQ(*inv * to_rational(a), RatMatrix::identity(3));
  EXPECT_FALSE(inverse(IntMatrix{{1, 2}, {2, 4}}));
  auto x = solve(to_rational(a), RatVector{1, 0, 0});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], Rational(3, 4));
}

TEST(Arith, InertiaAgreesWithSylvester) {
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    IntMatrix g = oracle::random_pd(rng, 1 + t % 5);
    Inertia in = inertia(g);
    EXPECT_EQ(in.positive, g.rows());
    EXPECT_TRUE(oracle::positive_definite(g));
    Inertia neg = inertia(-g);
    EXPECT_EQ(neg.negative, g.rows());
  }
  Inertia u = inertia(IntMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(u.positive, 1u);
  EXPECT_EQ(u.negative, 1u);
  Inertia deg = inertia(IntMatrix{{2, -2}, {-2, 2}});
  EXPECT_EQ(deg.zero, 1u);
}

TEST(Arith, SmithNormalFormProperties) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int t = 0; t < 40; ++t) {
    std::size_t m = 1 + t % 4, n = 1 + (t / 4) % 4;
    IntMatrix a(m, n);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = d(rng);
    SmithForm s = smith_normal_form(a);
    EXPECT_EQ(s.u * a * s.v, s.d);
    EXPECT_EQ(abs(determinant(s.u)), 1);
    EXPECT_EQ(abs(determinant(s.v)), 1);
    std::size_t k = std::min(m, n);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) {
          EXPECT_EQ(s.d(r, c), 0);
        }
    for (std::size_t i = 0; i + 1 < k; ++i) {
      EXPECT_GE(s.d(i, i), 0);
      if (s.d(i, i) != 0) {
        EXPECT_EQ(s.d(i + 1, i + 1) % s.d(i, i), 0);
      }
      else EXPECT_EQ(s.d(i + 1, i + 1), 0);
    }
  }
}

TEST(Arith, IntegerKernelIsSaturatedBasis) {
  IntMatrix a{{2, 4, 6}};
  IntMatrix k = integer_kernel(a);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_EQ(a * k, IntMatrix(1, 2));
  // Saturation: (0, 3, -2) and (1, 1, -1) lie in the kernel lattice; the
  // Gram determinant of the basis is that of the primitive kernel.
  IntMatrix gram = k.transpose() * k;
  EXPECT_EQ(determinant(gram), 14);
}

TEST(Arith, RowBasisSpansSameLattice) {
  IntMatrix gens{{2, 0}, {0, 2}, {1, 1}};
  IntMatrix b = row_basis(gens);
  EXPECT_EQ(b.rows(), 2u);
  EXPECT_EQ(abs(determinant(b)), 2);
}
