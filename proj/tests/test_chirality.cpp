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

const ChiralityVerdict& verdict(const std::string& e) {
  static std::map<std::string, ChiralityVerdict> cache;
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;
  return cache.emplace(e, classify_chirality(lat(e), preset_chirality_options())).first->second;
}

std::size_t index_of(const VinbergRun& run, const std::string& label) {
  for (std::size_t i = 0; i < run.labels.size(); ++i)
    if (run.labels[i] == label) return i;
  throw std::runtime_error("no vertex " + label);
}

}  // namespace

TEST(Chirality, ReflectionsOfEveryWall) {
  std::size_t checked = 0;
  for (const auto& f : table_fixtures()) {
    const auto& run = table_run(f.id);
    const Lattice& L = run.lattice;
    const IntMatrix id = IntMatrix::identity(L.rank());
    for (const auto& a : run.accepted) {
      Isometry r = reflection_matrix(L, a.root.vec);
      EXPECT_EQ(to_rational(r), oracle::rational_reflection(L.gram, a.root.vec));
      EXPECT_TRUE(is_isometry(L, r));
      EXPECT_EQ(r * r, id);
      EXPECT_EQ(r * a.root.vec, -a.root.vec);
      EXPECT_EQ(delta3_sign(L, r), a.root.norm == 2 ? 1 : -1) << f.id;
      EXPECT_EQ(delta3_sign(L, reflection_matrix(L, a.root.vec, true)), a.root.norm == 2 ? -1 : 1);
      ++checked;
    }
    EXPECT_EQ(delta3_sign(L, -id), -1);
    EXPECT_EQ(delta3_sign(L, id), 1);
  }
  EXPECT_GT(checked, 80u);
  EXPECT_THROW(reflection_matrix(lat("U+A2"), {1, 0, 0, 0}), invalid_input);
}

TEST(Chirality, VerdictsOfTheNineLattices) {
  for (const auto& e : expected_verdicts())
    EXPECT_EQ(verdict(e.lattice).verdict, e.verdict) << e.lattice << ": " << verdict(e.lattice).reason;
}

TEST(Chirality, WitnessOfUA22E8MapsV3ToV8Prime) {
  const auto& v = verdict("U+A2+2E8");
  ASSERT_TRUE(v.witness);
  const auto& run = table_run("T3");
  const auto& f = table_fixture("T3");
  auto rows = expand_rows(f);
  IntVector v3, v8p;
  for (const auto& r : rows) {
    if (r.label == "v3") v3 = r.vec;
    if (r.label == "v8p") v8p = r.vec;
  }
  const Isometry& m = v.witness->matrix;
  EXPECT_EQ(m * v3, v8p);
  EXPECT_EQ(delta3_sign(run.lattice, m), -1);
  EXPECT_EQ(m * m, IntMatrix::identity(20));
  // The reference involution: e7, e4', v6, e7' fixed, v1 and e4 swapped.
  for (const auto& l : {"e7", "e4p", "v6", "e7p"})
    EXPECT_EQ(m * run.accepted[index_of(run, l)].root.vec, run.accepted[index_of(run, l)].root.vec) << l;
  EXPECT_EQ(m * run.accepted[index_of(run, "v1")].root.vec, run.accepted[index_of(run, "e4")].root.vec);
  EXPECT_EQ(z3_shortcut(run.lattice, run.roots(), v.witness->symmetry, m), -1);
}

TEST(Chirality, WitnessOfUA2A1E8HasImageA2ComponentMinus4Minus2) {
  const auto& v = verdict("U+A2+A1+E8");
  ASSERT_TRUE(v.witness);
  const auto& run = table_run("T7");
  IntVector img = v.witness->matrix * run.accepted[index_of(run, "v3")].root.vec;
  EXPECT_EQ(img[2], -4);
  EXPECT_EQ(img[3], -2);
  EXPECT_EQ(img, run.accepted[index_of(run, "v8")].root.vec);
  EXPECT_EQ(delta3_sign(run.lattice, v.witness->matrix), -1);
  EXPECT_EQ(z3_shortcut(run.lattice, run.roots(), v.witness->symmetry, v.witness->matrix), -1);
}

TEST(Chirality, ShortcutAgreesWithDiscriminantAction) {
  const auto& run = table_run("T3");
  auto roots = run.roots();
  auto g = build_coxeter_graph(run.lattice, roots, run.labels);
  VertexSet hex;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (roots[i].norm == 2) hex.push_back(i);
  std::size_t reversing = 0, lifted = 0;
  for (const auto& s : graph_automorphisms(g, hex)) {
    auto m = symmetry_to_isometry(run.lattice, roots, s);
    ASSERT_TRUE(m);
    ++lifted;
    int d = delta3_sign(run.lattice, *m);
    EXPECT_EQ(z3_shortcut(run.lattice, roots, s, m), d);
    if (d == -1) ++reversing;
  }
  EXPECT_EQ(lifted, 72u);
  EXPECT_EQ(reversing, 36u);
}

TEST(Chirality, RestrictionPreservesDelta3) {
  std::size_t checked = 0;
  for (const auto& id : {"T2", "T5", "T6", "T7"}) {
    const auto& run = table_run(id);
    const Lattice& L = run.lattice;
    for (const auto& w : run.accepted) {
      if (w.root.norm != 6) continue;
      for (const auto& v : run.accepted) {
        if (v.root.norm != 2 || inner_product(L, v.root.vec, w.root.vec) != 0) continue;
        Isometry f = reflection_matrix(L, w.root.vec);
        for (const auto& u : run.accepted) {
          if (u.root.norm != 2 || inner_product(L, u.root.vec, v.root.vec) != 0) continue;
          Isometry h = f * reflection_matrix(L, u.root.vec);
          Restriction r = restrict_to_orthogonal(L, h, v.root.vec);
          EXPECT_EQ(r.lattice.rank() + 1, L.rank());
          EXPECT_EQ(delta3_sign(r.lattice, r.isometry), delta3_sign(L, h)) << id;
          ++checked;
        }
      }
    }
  }
  EXPECT_GE(checked, 20u);
}

TEST(Chirality, ExtensionByA1KeepsDelta3) {
  Lattice L = lat("U+A2");
  Isometry f = reflection_matrix(L, {0, 0, 1, -1});
  auto [Lx, fx] = extend_by_orthogonal_A1(L, f);
  EXPECT_EQ(Lx.gram, lat("U+A2+A1").gram);
  EXPECT_EQ(delta3_sign(Lx, fx), -1);
  auto [Ly, fy] = extend_by_orthogonal_A1(L, f, 0);
  EXPECT_EQ(Ly.gram(0, 0), 2);
  EXPECT_TRUE(is_isometry(Ly, fy));
}

TEST(Chirality, ReductionRoutes) {
  const auto& r = verdict("-A1+A2+2E8");
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->route, "restriction");
  EXPECT_EQ(delta3_sign(lat("-A1+A2+2E8"), r.witness->matrix), -1);
  const auto& e = verdict("U+A2+2E8+A1");
  ASSERT_TRUE(e.witness);
  EXPECT_EQ(e.witness->route, "extension");
  EXPECT_EQ(delta3_sign(lat("U+A2+2E8+A1"), e.witness->matrix), -1);
  ASSERT_TRUE(e.run);
  EXPECT_EQ(e.run->termination.status, RunStatus::Terminated);
}

TEST(Chirality, UnknownCases) {
  auto v = classify_chirality(lat("U(2)+E6(2)"));
  EXPECT_EQ(v.verdict, Verdict::Unknown);
  EXPECT_EQ(v.reason, "empty root system");
  ChiralityOptions o;
  o.max_level = 4;
  o.reductions = false;
  auto w = classify_chirality(lat("-A1+A2"), o);
  EXPECT_EQ(w.verdict, Verdict::Unknown);
  EXPECT_EQ(w.reason, "Vinberg not terminated");
  EXPECT_THROW(classify_chirality(lat("A2+E8")), invalid_input);
}

TEST(Chirality, LiftRequiresRationalSpan) {
  const auto& run = table_run("T1");
  GraphSymmetry s{{0}, {0}};
  EXPECT_FALSE(symmetry_to_isometry(run.lattice, run.roots(), s));
}
