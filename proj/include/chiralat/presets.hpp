#pragma once
// Reference data for the M- and (M-1)-cubic lattices: expected Vinberg
// vectors with their labels, symmetric subsets used for symmetry lifting,
// expected verdicts, the lattice catalog and the (r, d) chirality grid.

#include <regex>

#include "chirality.hpp"

namespace chiralat {

struct FixtureRow {
  std::string label;
  Rational level;
  std::vector<std::string> parts;  // one token per summand block
};

/// Expected Vinberg vectors for one lattice.  Level-0 basis vectors of E8
/// blocks (e1.., e1p..) are implied and added by expand_rows().
struct TableFixture {
  std::string id;
  std::string lattice;
  std::vector<std::string> base_point;
  std::vector<FixtureRow> rows;
  /// Labels of a vertex subset whose graph symmetries are lifted (empty if
  /// none is needed).
  std::vector<std::string> symmetric_subset = {};
  /// The reference involution of that subset: fixed vertices and swaps.
  std::vector<std::string> witness_fixed = {};
  std::vector<std::pair<std::string, std::string>> witness_swaps = {};
};

inline const std::vector<TableFixture>& table_fixtures() {
  static const std::vector<TableFixture> t = {
      {"T1",
       "U+A2",
       {"1,-1", "0,0"},
       {{"v1", 0, {"1,1", "0,0"}},
        {"v2", 0, {"0,0", "0,1"}},
        {"v3", 0, {"0,0", "1,-1"}},
        {"v4", 1, {"0,-1", "-1,-1"}}},
       {}},
      {"T2",
       "U+A2+E8",
       {"1,-1", "0,0", "0"},
       {{"v1", 0, {"1,1", "0,0", "0"}},
        {"v2", 0, {"0,0", "0,1", "0"}},
        {"v3", 0, {"0,0", "1,-1", "0"}},
        {"v4", 1, {"0,-1", "-1,-1", "0"}},
        {"v5", 1, {"0,-1", "0,0", "-e8*"}}},
       {}},
      {"T3",
       "U+A2+2E8",
       {"1,-1", "0,0", "0", "0"},
       {{"v1", 0, {"1,1", "0,0", "0", "0"}},
        {"v2", 0, {"0,0", "0,1", "0", "0"}},
        {"v3", 0, {"0,0", "1,-1", "0", "0"}},
        {"v4", 1, {"0,-1", "-1,-1", "0", "0"}},
        {"v5", 1, {"0,-1", "0,0", "-e8*", "0"}},
        {"v5p", 1, {"0,-1", "0,0", "0", "-e8*"}},
        {"v6", 16, {"2,-2", "-1,-1", "-e1*", "-e1*"}},
        {"v7", 36, {"3,-3", "-2,-1", "-e7*", "-e2*"}},
        {"v7p", 36, {"3,-3", "-2,-1", "-e2*", "-e7*"}},
        {"v8", 48, {"6,-6", "-4,-2", "-3e8*", "-3e1*"}},
        {"v8p", 48, {"6,-6", "-4,-2", "-3e1*", "-3e8*"}}},
       {"e1",  "e2",  "e3",  "e4",  "e5",  "e6",  "e7",  "e8", "e1p", "e2p", "e3p", "e4p",
        "e5p", "e6p", "e7p", "e8p", "v1",  "v2",  "v4",  "v5", "v5p", "v6",  "v7",  "v7p"},
       {"e7", "e4p", "v6", "e7p"},
       {{"v1", "e4"}}},
      {"T4",
       "-A1+A2",
       {"1", "0,0"},
       {{"v1", 0, {"0", "0,1"}}, {"v2", 0, {"0", "1,-1"}}, {"v3", 12, {"3", "-4,-2"}}},
       {}},
      {"T5",
       "U+A2+A1",
       {"1,-1", "0,0", "0"},
       {{"v1", 0, {"1,1", "0,0", "0"}},
        {"v2", 0, {"0,0", "0,1", "0"}},
        {"v3", 0, {"0,0", "1,-1", "0"}},
        {"v4", 0, {"0,0", "0,0", "1"}},
        {"v5", 1, {"0,-1", "-1,-1", "0"}},
        {"v6", 1, {"0,-1", "0,0", "-1"}}},
       {}},
      {"T6",
       "-A1+A2+E8",
       {"1", "0,0", "0"},
       {{"v1", 0, {"0", "0,1", "0"}},
        {"v2", 0, {"0", "1,-1", "0"}},
        {"v3", 4, {"1", "0,0", "-e1*"}},
        {"v4", 4, {"1", "-1,-1", "-e8*"}},
        {"v5", 12, {"3", "-4,-2", "0"}}},
       {}},
      {"T7",
       "U+A2+A1+E8",
       {"1,-1", "0,0", "0", "0"},
       {{"v1", 0, {"1,1", "0,0", "0", "0"}},
        {"v2", 0, {"0,0", "0,1", "0", "0"}},
        {"v3", 0, {"0,0", "1,-1", "0", "0"}},
        {"v4", 0, {"0,0", "0,0", "1", "0"}},
        {"v5", 1, {"0,-1", "-1,-1", "0", "0"}},
        {"v6", 1, {"0,-1", "0,0", "-1", "0"}},
        {"v7", 1, {"0,-1", "0,0", "0", "-e8*"}},
        {"v8", 48, {"6,-6", "-4,-2", "-3", "-3e1*"}}},
       {"e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "v1", "v2", "v5", "v6", "v7"},
       {"e7"},
       {{"v2", "e1"}}},
  };
  return t;
}

inline const TableFixture& table_fixture(std::string_view id) {
  for (const auto& f : table_fixtures())
    if (f.id == id) return f;
  throw invalid_input("unknown table: " + std::string(id));
}

/// Block component from a token: "0", "1,-1", "e3", "-e8*", "-3e1*".
inline IntVector parse_component(const Lattice& L, std::size_t block, const std::string& token) {
  const auto& b = L.blocks.at(block);
  const std::size_t n = b.size();
  static const std::regex dual(R"(^(-?)(\d*)e(\d+)(\*?)$)");
  std::smatch m;
  if (std::regex_match(token, m, dual)) {
    Integer coef = m[2].str().empty() ? Integer(1) : Integer(m[2].str());
    if (m[1].str() == "-") coef = -coef;
    std::size_t idx = std::stoul(m[3].str());
    if (idx == 0 || idx > n) throw invalid_input("basis index out of range in " + token);
    IntVector out(n, 0);
    if (m[4].str() == "*") {
      auto d = to_integer(dual_basis_vector(L, block, idx - 1));
      if (!d) throw invalid_input("dual vector is not integral in " + token);
      for (std::size_t i = 0; i < n; ++i) out[i] = coef * (*d)[b.start + i];
    } else {
      out[idx - 1] = coef;
    }
    return out;
  }
  if (token == "0") return IntVector(n, 0);
  IntVector out;
  std::stringstream ss(token);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Integer(std::stol(item)));
  if (out.size() != n) throw invalid_input("component has wrong length: " + token);
  return out;
}

inline IntVector parse_components(const Lattice& L, const std::vector<std::string>& parts) {
  if (parts.size() != L.blocks.size()) throw invalid_input("component count does not match summands");
  IntVector v;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    auto c = parse_component(L, b, parts[b]);
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

struct ExpectedRoot {
  std::string label;
  Rational level;
  IntVector vec;
};

/// All expected roots, including the implied E8 basis vectors at level 0.
inline std::vector<ExpectedRoot> expand_rows(const TableFixture& f) {
  Lattice L = build_lattice(parse_lattice_expression(f.lattice));
  std::vector<ExpectedRoot> out;
  std::size_t e8 = 0;
  for (std::size_t b = 0; b < L.blocks.size(); ++b) {
    const auto& s = L.blocks[b].summand;
    if (s.kind != SummandKind::E) continue;
    for (std::size_t i = 0; i < L.blocks[b].size(); ++i) {
      IntVector v(L.rank(), 0);
      v[L.blocks[b].start + i] = 1;
      out.push_back({"e" + std::to_string(i + 1) + std::string(e8, 'p'), 0, v});
    }
    ++e8;
  }
  for (const auto& r : f.rows) out.push_back({r.label, r.level, parse_components(L, r.parts)});
  return out;
}

/// Run versus fixture.  Roots up to the last tabulated level must agree
/// exactly; deeper roots are listed separately.
struct TableComparison {
  std::vector<ExpectedRoot> matched;
  std::vector<ExpectedRoot> missing;
  std::vector<ExpectedRoot> unexpected;
  std::vector<ExpectedRoot> beyond;
  Rational last_level = 0;
  bool ok() const { return missing.empty() && unexpected.empty(); }
};

inline TableComparison compare_with_fixture(const VinbergRun& run, const TableFixture& f) {
  TableComparison c;
  auto expected = expand_rows(f);
  for (const auto& e : expected) c.last_level = std::max(c.last_level, e.level);
  std::vector<bool> used(run.accepted.size(), false);
  for (const auto& e : expected) {
    bool hit = false;
    for (std::size_t i = 0; i < run.accepted.size() && !hit; ++i)
      if (!used[i] && run.accepted[i].root.vec == e.vec && run.accepted[i].level == e.level) {
        used[i] = true;
        hit = true;
      }
    (hit ? c.matched : c.missing).push_back(e);
  }
  for (std::size_t i = 0; i < run.accepted.size(); ++i) {
    if (used[i]) continue;
    ExpectedRoot r{i < run.labels.size() ? run.labels[i] : "", run.accepted[i].level, run.accepted[i].root.vec};
    (r.level <= c.last_level ? c.unexpected : c.beyond).push_back(std::move(r));
  }
  return c;
}

/// The fixture whose lattice has the same Gram matrix as L, if any.
inline const TableFixture* fixture_for(const Lattice& L) {
  for (const auto& f : table_fixtures()) {
    Lattice F = build_lattice(parse_lattice_expression(f.lattice));
    if (F.gram == L.gram) return &f;
  }
  return nullptr;
}

/// Replaces generic labels by the reference labels where coordinates match.
inline void apply_reference_labels(VinbergRun& run) {
  const TableFixture* f = fixture_for(run.lattice);
  if (!f) return;
  auto expected = expand_rows(*f);
  std::vector<std::string> labels(run.accepted.size());
  std::set<std::string> used;
  for (std::size_t i = 0; i < run.accepted.size(); ++i)
    for (const auto& e : expected)
      if (e.vec == run.accepted[i].root.vec) {
        labels[i] = e.label;
        used.insert(e.label);
      }
  for (std::size_t i = 0; i < run.accepted.size(); ++i) {
    if (!labels[i].empty()) continue;
    std::string l = run.labels.at(i);
    while (used.count(l)) l += "x";
    used.insert(l);
    labels[i] = l;
  }
  run.labels = std::move(labels);
}

inline std::vector<std::vector<IntVector>> preset_subsets(const Lattice& L) {
  const TableFixture* f = fixture_for(L);
  if (!f || f->symmetric_subset.empty()) return {};
  auto expected = expand_rows(*f);
  std::vector<IntVector> subset;
  for (const auto& label : f->symmetric_subset)
    for (const auto& e : expected)
      if (e.label == label) subset.push_back(e.vec);
  return {subset};
}

/// Involutions of the preset subset matching the reference description,
/// on a run carrying reference labels.
inline std::vector<GraphSymmetry> preset_symmetries(const VinbergRun& run, const CoxeterGraph& g) {
  const TableFixture* f = fixture_for(run.lattice);
  if (!f || f->witness_swaps.empty()) return {};
  auto index = [&](const std::string& label) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < run.labels.size(); ++i)
      if (run.labels[i] == label) return i;
    return std::nullopt;
  };
  VertexSet J;
  for (const auto& l : f->symmetric_subset) {
    auto i = index(l);
    if (!i) return {};
    J.push_back(*i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> want;
  for (const auto& l : f->witness_fixed)
    if (auto i = index(l)) want.push_back({*i, *i});
  for (const auto& [a, b] : f->witness_swaps) {
    auto i = index(a), j = index(b);
    if (!i || !j) return {};
    want.push_back({*i, *j});
    want.push_back({*j, *i});
  }
  std::vector<GraphSymmetry> out;
  for_each_graph_automorphism(g, J, [&](const GraphSymmetry& s) {
    for (const auto& [a, b] : want)
      if (s.apply(a) != b) return true;
    for (auto v : s.vertices)
      if (s.apply(s.apply(v)) != v) return true;
    out.push_back(s);
    return true;
  });
  return out;
}

/// Options wired to the reference presets.
inline ChiralityOptions preset_chirality_options() {
  ChiralityOptions o;
  o.preset_subsets = preset_subsets;
  o.relabel = apply_reference_labels;
  o.preferred_symmetries = preset_symmetries;
  return o;
}

/// Expected verdicts for the M-cubics (first three) and (M-1)-cubics.
struct ExpectedVerdict {
  std::string group;  // "verdicts6" or "verdicts7"
  std::string lattice;
  Verdict verdict;
};

inline const std::vector<ExpectedVerdict>& expected_verdicts() {
  static const std::vector<ExpectedVerdict> v = {
      {"verdicts6", "U+A2", Verdict::Chiral},
      {"verdicts6", "U+A2+E8", Verdict::Chiral},
      {"verdicts6", "U+A2+2E8", Verdict::Achiral},
      {"verdicts7", "-A1+A2", Verdict::Chiral},
      {"verdicts7", "U+A2+A1", Verdict::Chiral},
      {"verdicts7", "-A1+A2+E8", Verdict::Chiral},
      {"verdicts7", "U+A2+A1+E8", Verdict::Achiral},
      {"verdicts7", "-A1+A2+2E8", Verdict::Achiral},
      {"verdicts7", "U+A2+2E8+A1", Verdict::Achiral},
  };
  return v;
}

// ---------------------------------------------------------------------------
// Lattice catalog

/// The principal series: base + t A1 for t in [0, max_t].
inline std::vector<std::string> catalog_principal() {
  static const std::vector<std::pair<std::string, int>> series = {
      {"-A1+<6>", 9},     {"-A1+A2", 9},     {"U+A2", 9},        {"U+A2+D4", 6},
      {"-A1+<6>+E8", 5},  {"-A1+A2+E8", 5},  {"U+A2+E8", 5},     {"U+A2+D4+E8", 2},
      {"-A1+<6>+2E8", 1}, {"-A1+A2+2E8", 1}, {"U+A2+2E8", 1},
  };
  std::vector<std::string> out;
  for (const auto& [base, tmax] : series)
    for (int t = 0; t <= tmax; ++t) {
      if (t == 0)
        out.push_back(base);
      else if (t == 1)
        out.push_back(base + "+A1");
      else
        out.push_back(base + "+" + std::to_string(t) + "A1");
    }
  return out;
}

inline std::vector<std::string> catalog_additional() {
  return {"U(2)+E6(2)",     "U(2)+A2",          "U+E6(2)",       "U(2)+A2+D4",
          "U(2)+A2+2D4",    "U+A2+2D4",         "U(2)+A2+E8",    "U(2)+A2+D4+E8",
          "U(2)+A2+2E8",    "U+A2+E8(2)",       "U(2)+A2+E8(2)"};
}

/// rho = rank, r = 22 - rho, d = rank of the 2-part of the discriminant.
struct CatalogEntry {
  std::string lattice;
  std::size_t rho = 0;
  long r = 0;
  std::size_t d = 0;
  Integer det;
  Integer discr_order;
  Signature sig;
};

inline CatalogEntry catalog_entry(const std::string& expr) {
  Lattice L = build_lattice(parse_lattice_expression(expr));
  DiscriminantGroup D = discriminant_group(L);
  CatalogEntry e;
  e.lattice = expr;
  e.rho = L.rank();
  e.r = 22 - static_cast<long>(L.rank());
  e.d = primary_part(D, 2).generators.size();
  e.det = determinant(L.gram);
  e.discr_order = D.order();
  e.sig = L.sig;
  return e;
}

/// The (r, d) chirality grid of the principal series as printed: 'a' for
/// achiral, 'c' for chiral.
struct GridCell {
  int r;
  int d;
  char mark;
};

inline const std::vector<GridCell>& chirality_grid() {
  static const std::vector<GridCell> g = [] {
    std::vector<GridCell> out;
    auto row = [&](int d, std::initializer_list<std::pair<int, char>> cells) {
      for (auto [r, m] : cells) out.push_back({r, d, m});
    };
    row(11, {{11, 'a'}});
    row(10, {{10, 'a'}, {12, 'a'}});
    row(9, {{9, 'a'}, {11, 'a'}, {13, 'a'}});
    row(8, {{8, 'a'}, {10, 'a'}, {12, 'a'}, {14, 'a'}});
    row(7, {{7, 'a'}, {9, 'a'}, {11, 'a'}, {13, 'a'}, {15, 'a'}});
    row(6, {{6, 'a'}, {8, 'a'}, {10, 'a'}, {12, 'a'}, {14, 'a'}, {16, 'a'}});
    row(5, {{5, 'a'}, {7, 'a'}, {9, 'a'}, {11, 'a'}, {13, 'a'}, {15, 'c'}, {17, 'a'}});
    row(4, {{4, 'a'}, {6, 'a'}, {8, 'a'}, {10, 'a'}, {12, 'a'}, {14, 'c'}, {16, 'c'}, {18, 'a'}});
    row(3, {{3, 'a'}, {5, 'a'}, {7, 'a'}, {9, 'a'}, {11, 'a'}, {13, 'c'}, {15, 'c'}, {17, 'c'}, {19, 'c'}});
    row(2, {{2, 'a'}, {4, 'a'}, {6, 'a'}, {8, 'a'}, {10, 'a'}, {12, 'c'}, {14, 'c'}, {16, 'c'}, {18, 'c'}, {20, 'c'}});
    row(1, {{1, 'a'}, {3, 'a'}, {9, 'a'}, {11, 'c'}, {17, 'c'}, {19, 'c'}});
    row(0, {{2, 'a'}, {10, 'c'}, {18, 'c'}});
    return out;
  }();
  return g;
}

inline std::optional<char> grid_mark(long r, std::size_t d) {
  for (const auto& c : chirality_grid())
    if (c.r == r && c.d == static_cast<int>(d)) return c.mark;
  return std::nullopt;
}

/// Lattices outside rho + d >= 14 that are nevertheless achiral.
inline std::vector<std::string> achiral_extras() { return {"-A1+<6>+2A1", "-A1+<6>+3A1", "-A1+<6>+4A1", "U(2)+A2+D4"}; }

}  // namespace chiralat
