#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace chiralat;

TEST(Enumerate, MatchesBoxSearchOnRandomGrams) {
  std::mt19937 rng(2024);
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < 16; ++t) {
      IntMatrix G = oracle::random_pd(rng, n, n <= 2 ? 3 : 2);
      for (long target = 0; target <= 8; ++target) {
        long b = oracle::box_bound(G, target);
        if (n == 4 && b > 6) continue;
        auto want = oracle::box_search(G, target, b);
        auto got = enumerate_short_vectors(G, target);
        EXPECT_EQ(got, want) << "n=" << n << " target=" << target;
      }
      ++cases;
    }
  EXPECT_GE(cases, 50u);
}

TEST(Enumerate, E8RootCounts) {
  IntMatrix G = oracle::e8_cartan();
  EXPECT_EQ(enumerate_short_vectors(G, 2).size(), 240u);
  EXPECT_EQ(enumerate_short_vectors(G, 4).size(), 2160u);
}

TEST(Enumerate, ConstraintsFilterLikeTheOracle) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + t % 3;
    IntMatrix G = oracle::random_pd(rng, n);
    long target = 2 + t % 6;
    std::vector<EnumConstraint> cons;
    IntVector a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = d(rng);
      b[i] = d(rng);
    }
    cons.push_back({a, Relation::Le, Integer(d(rng))});
    if (t % 2) cons.push_back({b, Relation::Eq, Integer(d(rng))});
    IntVector sign(n, 0);
    sign[t % n] = -1;
    cons.push_back({sign, Relation::Le, 0});
    std::vector<IntVector> want;
    for (const auto& v : oracle::box_search(G, target, oracle::box_bound(G, target))) {
      bool ok = true;
      for (const auto& c : cons) {
        Integer x = dot(c.normal, v);
        if (c.relation == Relation::Eq ? x != c.value : x > c.value) ok = false;
      }
      if (ok) want.push_back(v);
    }
    EXPECT_EQ(enumerate_short_vectors(G, target, cons), want);
  }
}

TEST(Enumerate, ThreadCountDoesNotChangeOutput) {
  Lattice L = build_lattice(parse_lattice_expression("E8+A2"));
  auto one = enumerate_short_vectors(L.gram, 4, {}, EnumOptions{1});
  auto four = enumerate_short_vectors(L.gram, 4, {}, EnumOptions{4});
  EXPECT_EQ(one, four);
  EXPECT_TRUE(std::is_sorted(one.begin(), one.end()));
}

TEST(Enumerate, RejectsIndefiniteGram) {
  EXPECT_THROW(enumerate_short_vectors(IntMatrix{{0, 1}, {1, 0}}, 2), invalid_input);
  EXPECT_EQ(enumerate_short_vectors(IntMatrix{{2}}, 0), (std::vector<IntVector>{IntVector{0}}));
}
