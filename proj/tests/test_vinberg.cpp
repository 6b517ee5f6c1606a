#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace chiralat;

namespace {

Lattice lat(const std::string& e) { return build_lattice(parse_lattice_expression(e)); }

const VinbergRun& table_run(const std::string& id) {
  static std::map<std::string, VinbergRun> cache;
  auto it = cache.find(id);
  if (it != cache.end()) return it->second;
  const auto& f = table_fixture(id);
  Lattice L = lat(f.lattice);
  VinbergRun run = vinberg_run(L, parse_components(L, f.base_point));
  apply_reference_labels(run);
  return cache.emplace(id, std::move(run)).first->second;
}

// Naive Vinberg: every root in a box, sorted by level, accepted greedily.
std::vector<IntVector> naive_vinberg(const Lattice& L, const IntVector& p, const std::vector<IntVector>& level0,
                                     long box, const Rational& max_level) {
  const std::size_t n = L.rank();
  std::vector<std::pair<Rational, IntVector>> cands;
  IntVector v(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      auto k = root_norm_of(L, v);
      if (!k || inner_product(L, p, v) >= 0) return;
      Rational lvl = root_level(L, p, Root{v, *k});
      if (lvl <= max_level) cands.push_back({lvl, v});
      return;
    }
    for (long x = -box; x <= box; ++x) {
      v[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(cands.begin(), cands.end());
  std::vector<IntVector> acc = level0;
  for (const auto& [lvl, c] : cands) {
    bool ok = true;
    for (const auto& a : acc)
      if (inner_product(L, a, c) > 0) ok = false;
    if (ok) acc.push_back(c);
  }
  return acc;
}

}  // namespace

class TableRuns : public ::testing::TestWithParam<std::string> {};

TEST_P(TableRuns, ReproducesTabulatedRoots) {
  const auto& f = table_fixture(GetParam());
  const auto& run = table_run(GetParam());
  auto c = compare_with_fixture(run, f);
  for (const auto& m : c.missing) ADD_FAILURE() << "missing " << m.label << " " << to_string(m.vec);
  for (const auto& m : c.unexpected) ADD_FAILURE() << "unexpected " << m.label << " " << to_string(m.vec);
  EXPECT_EQ(c.matched.size(), expand_rows(f).size());
  EXPECT_EQ(run.termination.status, RunStatus::Terminated);
}

TEST_P(TableRuns, AcceptedRootsAreSound) {
  const auto& run = table_run(GetParam());
  for (std::size_t i = 0; i < run.accepted.size(); ++i) {
    const auto& a = run.accepted[i];
    EXPECT_EQ(root_norm_of(run.lattice, a.root.vec), a.root.norm);
    EXPECT_EQ(root_level(run.lattice, run.base_point, a.root), a.level);
    EXPECT_LE(inner_product(run.lattice, run.base_point, a.root.vec), 0);
    for (std::size_t j = 0; j < run.accepted.size(); ++j)
      if (i != j) {
        EXPECT_LE(inner_product(run.lattice, a.root.vec, run.accepted[j].root.vec), 0);
      }
    if (i > 0) {
      EXPECT_LE(run.accepted[i - 1].level, a.level);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Tables, TableRuns, ::testing::Values("T1", "T2", "T3", "T4", "T5", "T6", "T7"));

TEST(Vinberg, TerminationRoutes) {
  EXPECT_EQ(table_run("T1").termination.criterion, "parabolic-cover");
  EXPECT_EQ(table_run("T2").termination.criterion, "parabolic-cover");
  EXPECT_EQ(table_run("T4").termination.criterion, "parabolic-cover");
  EXPECT_EQ(table_run("T5").termination.criterion, "parabolic-cover");
  EXPECT_EQ(table_run("T6").termination.criterion, "extension-count");
}

TEST(Vinberg, MaximalParabolicOfFirstTwoTables) {
  const auto& r1 = table_run("T1");
  ASSERT_EQ(r1.termination.maximal_parabolic.size(), 1u);
  auto g1 = build_coxeter_graph(r1.lattice, r1.roots(), r1.labels);
  EXPECT_EQ(classify_subdiagram(g1, r1.termination.maximal_parabolic[0]),
            (SubdiagramClass{SubdiagramKind::Parabolic, 2}));
  EXPECT_EQ(r1.termination.maximal_parabolic[0].size(), 3u);

  const auto& r2 = table_run("T2");
  ASSERT_EQ(r2.termination.maximal_parabolic.size(), 1u);
  auto g2 = build_coxeter_graph(r2.lattice, r2.roots(), r2.labels);
  const auto& J = r2.termination.maximal_parabolic[0];
  EXPECT_EQ(classify_subdiagram(g2, J), (SubdiagramClass{SubdiagramKind::Parabolic, 10}));
  EXPECT_EQ(detail::components(g2, J).size(), 2u);
}

TEST(Vinberg, FaceCensusOfMinusA1A2E8) {
  const auto& run = table_run("T6");
  auto g = build_coxeter_graph(run.lattice, run.roots(), run.labels);
  EXPECT_EQ(face_census(run, g), (std::pair<std::size_t, std::size_t>{31, 2}));
  // The dotted edge v3 - v5.
  std::size_t v3 = 0, v5 = 0;
  for (std::size_t i = 0; i < run.labels.size(); ++i) {
    if (run.labels[i] == "v3") v3 = i;
    if (run.labels[i] == "v5") v5 = i;
  }
  EXPECT_GT(g.weight(v3, v5), 4);
}

TEST(Vinberg, ToyLatticeWithDottedEdge) {
  Lattice L = build_lattice(parse_lattice_expression("<2,-6>"));
  VinbergRun run = vinberg_run(L);
  ASSERT_EQ(run.termination.status, RunStatus::Terminated);
  ASSERT_EQ(run.accepted.size(), 2u);
  auto g = build_coxeter_graph(L, run.roots(), run.labels);
  EXPECT_EQ(g.weight(0, 1), 16);
  EXPECT_EQ(face_census(run, g), (std::pair<std::size_t, std::size_t>{2, 0}));
}

TEST(Vinberg, StopsAtMaxLevel) {
  Lattice L = lat("-A1+A2");
  VinbergOptions o;
  o.max_level = 11;
  VinbergRun run = vinberg_run(L, o);
  EXPECT_EQ(run.termination.status, RunStatus::Exhausted);
  EXPECT_EQ(run.accepted.size(), 2u);
  o.max_level = 12;
  EXPECT_EQ(vinberg_run(L, o).termination.status, RunStatus::Terminated);
  EXPECT_THROW(face_census(run, build_coxeter_graph(L, run.roots())), invalid_input);
}

TEST(Vinberg, CandidatesAtLevel) {
  Lattice L = lat("-A1+A2");
  IntVector p{1, 0, 0};
  VinbergRun run = vinberg_run(L, p);
  std::vector<Root> level0{run.accepted[0].root, run.accepted[1].root};
  auto c = candidates_at_level(L, p, 12, level0);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].vec, (IntVector{3, -4, -2}));
  EXPECT_TRUE(candidates_at_level(L, p, 4, level0).empty());
  EXPECT_THROW(candidates_at_level(L, p, 0, level0), invalid_input);
}

TEST(Vinberg, AgreesWithNaiveSearch) {
  struct Case {
    std::string lattice;
    long box;
    long max_level;
  };
  for (const auto& c : {Case{"U+A2", 6, 9}, Case{"-A1+A2", 6, 12}, Case{"U+A2+A1", 5, 4}, Case{"<2,-6>", 12, 50}}) {
    Lattice L = lat(c.lattice);
    VinbergOptions o;
    o.max_level = c.max_level;
    VinbergRun run = vinberg_run(L, o);
    std::vector<IntVector> level0, got;
    for (const auto& a : run.accepted) {
      if (a.level == 0) level0.push_back(a.root.vec);
      got.push_back(a.root.vec);
    }
    auto want = naive_vinberg(L, run.base_point, level0, c.box, c.max_level);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << c.lattice;
  }
}

TEST(Vinberg, RejectsBadBasePoint) {
  Lattice L = lat("U+A2");
  EXPECT_THROW(vinberg_run(L, IntVector{1, 1, 0, 0}), invalid_input);
  EXPECT_THROW(vinberg_run(L, IntVector{1, -1, 0}), invalid_input);
}
