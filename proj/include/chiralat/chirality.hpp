#pragma once
// Lattice isometries from graph symmetries, their action on the 3-part of
// the discriminant group, and the chirality decision.

#include <map>
#include <mutex>

#include "vinberg.hpp"

namespace chiralat {

/// Integer matrix acting on lattice coordinates (columns are images of the
/// basis vectors).
using Isometry = IntMatrix;

inline bool is_isometry(const Lattice& L, const Isometry& m) {
  if (m.rows() != L.rank() || m.cols() != L.rank()) return false;
  if (!(m.transpose() * L.gram * m == L.gram)) return false;
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

/// x -> x - 2 (x.v / v^2) v, negated when `anti` is set.
inline Isometry reflection_matrix(const Lattice& L, const IntVector& v, bool anti = false) {
  auto k = root_norm_of(L, v);
  if (!k) throw invalid_input("reflection vector is not a 2-root or 6-root");
  const std::size_t n = L.rank();
  IntVector gv = L.gram * v;
  Isometry m = IntMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    Integer coef = 2 * gv[c] / *k;  // exact by the root condition
    for (std::size_t r = 0; r < n; ++r) m(r, c) -= coef * v[r];
  }
  if (anti) m = -m;
  return m;
}

/// The isometry of L (x) Q taking roots[j] to roots[sigma(j)] on the domain
/// of sigma, if that domain spans L rationally and the map is integral.
inline std::optional<Isometry> symmetry_to_isometry(const Lattice& L, const std::vector<Root>& roots,
                                                    const GraphSymmetry& sigma) {
  const std::size_t n = L.rank();
  const auto& J = sigma.vertices;
  if (J.size() != sigma.image.size()) throw invalid_input("malformed symmetry");
  for (auto j : J)
    if (j >= roots.size()) throw invalid_input("symmetry vertex out of range");
  for (std::size_t a = 0; a < J.size(); ++a) {
    if (roots[J[a]].norm != roots[sigma.image[a]].norm) throw invalid_input("symmetry does not preserve root norms");
    for (std::size_t b = a; b < J.size(); ++b)
      if (inner_product(L, roots[J[a]].vec, roots[J[b]].vec) !=
          inner_product(L, roots[sigma.image[a]].vec, roots[sigma.image[b]].vec))
        throw invalid_input("symmetry does not preserve inner products");
  }
  // Greedy rational basis from the domain.
  std::vector<std::size_t> pick;
  {
    std::vector<RatVector> rows;
    for (std::size_t a = 0; a < J.size() && pick.size() < n; ++a) {
      rows.push_back(to_rational(roots[J[a]].vec));
      RatMatrix m(rows.size(), n);
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
      if (rank(m) == rows.size())
        pick.push_back(a);
      else
        rows.pop_back();
    }
  }
  if (pick.size() < n) return std::nullopt;
  RatMatrix B(n, n), V(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) {
      B(r, c) = roots[J[pick[c]]].vec[r];
      V(r, c) = roots[sigma.image[pick[c]]].vec[r];
    }
  auto m = to_integer(V * *inverse(B));
  if (!m) return std::nullopt;
  for (std::size_t a = 0; a < J.size(); ++a)
    if (*m * roots[J[a]].vec != roots[sigma.image[a]].vec) return std::nullopt;
  if (!is_isometry(L, *m)) throw std::logic_error("lifted symmetry is not an isometry");
  return m;
}

/// Induced action on discr L: column i holds the class of f(g_i).
inline IntMatrix discr_action(const Lattice& L, const Isometry& f) {
  DiscriminantGroup D = discriminant_group(L);
  RatMatrix fr = to_rational(f);
  IntMatrix out(D.generators.size(), D.generators.size());
  for (std::size_t i = 0; i < D.generators.size(); ++i) {
    auto c = D.coordinates(fr * D.generators[i].lift);
    for (std::size_t r = 0; r < c.size(); ++r) out(r, i) = c[r];
  }
  return out;
}

/// +1 if f acts trivially on the 3-part of discr L, -1 if it acts by -1.
inline int delta3_sign(const Lattice& L, const Isometry& f) {
  DiscriminantGroup D3 = primary_part(discriminant_group(L), 3);
  if (D3.generators.size() != 1 || D3.generators[0].order != 3)
    throw invalid_input("3-part of the discriminant group is not Z/3");
  const auto& h = D3.generators[0].lift;
  Integer c0 = D3.coordinates(h)[0];
  Integer c1 = D3.coordinates(to_rational(f) * h)[0];
  if (c1 == c0) return 1;
  if (mod_floor(c1 + c0, 3) == 0) return -1;
  throw std::logic_error("isometry acts on Z/3 by neither +1 nor -1");
}

/// The summand carrying the 3-part: the first block whose determinant is
/// divisible by 3.
inline const SummandBlock& z3_block(const Lattice& L) {
  for (const auto& b : L.blocks)
    if (determinant(summand_gram(b.summand)) % 3 == 0) return b;
  throw invalid_input("no summand carries the 3-part of the discriminant");
}

/// -1 if some 6-root w among `roots` has block component of w - f(w) outside
/// 3 times the block, else +1.  Images of 6-roots come from sigma when they
/// are in its domain and from the lift otherwise.
inline int z3_shortcut(const Lattice& L, const std::vector<Root>& roots, const GraphSymmetry& sigma,
                       const std::optional<Isometry>& lift = std::nullopt) {
  const auto& b = z3_block(L);
  std::optional<Isometry> f = lift;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (roots[j].norm != 6) continue;
    IntVector img;
    auto it = std::find(sigma.vertices.begin(), sigma.vertices.end(), j);
    if (it != sigma.vertices.end()) {
      img = roots[sigma.image[static_cast<std::size_t>(it - sigma.vertices.begin())]].vec;
    } else {
      if (!f) f = symmetry_to_isometry(L, roots, sigma);
      if (!f) continue;
      img = *f * roots[j].vec;
    }
    for (std::size_t i = 0; i < b.size(); ++i)
      if ((roots[j].vec[b.start + i] - img[b.start + i]) % 3 != 0) return -1;
  }
  return 1;
}

/// L_v = v-orthogonal sublattice with the restriction of f.  `basis` holds
/// the chosen basis of L_v as columns in L coordinates.
struct Restriction {
  Lattice lattice;
  Isometry isometry;
  IntMatrix basis;
};

inline Restriction restrict_to_orthogonal(const Lattice& L, const Isometry& f, const IntVector& v) {
  if (f * v != v) throw invalid_input("isometry does not fix the vector");
  if (root_norm_of(L, v) != 2) throw invalid_input("vector is not a 2-root");
  const std::size_t n = L.rank();
  IntVector gv = L.gram * v;
  std::size_t pivot = n;
  for (std::size_t j = 0; j < n; ++j)
    if (abs(gv[j]) == 1) pivot = j;
  IntMatrix K;
  if (pivot < n) {
    K = IntMatrix(n, n - 1);
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == pivot) continue;
      K(i, c) = 1;
      K(pivot, c) = -gv[i] * gv[pivot];  // gv[pivot] = +-1
      ++c;
    }
  } else {
    IntMatrix row(1, n);
    for (std::size_t j = 0; j < n; ++j) row(0, j) = gv[j];
    K = integer_kernel(row);
  }
  IntMatrix gram = K.transpose() * L.gram * K;
  // Coordinates in K: solve K a = f K column by column.
  RatMatrix normal = to_rational(K.transpose() * L.gram * K);
  RatMatrix proj = *inverse(normal) * to_rational(K.transpose() * L.gram);
  auto a = to_integer(proj * to_rational(f * K));
  if (!a) throw std::logic_error("restriction is not integral");
  Restriction out{lattice_from_gram(gram), *a, K};
  if (!is_isometry(out.lattice, out.isometry)) throw std::logic_error("restriction is not an isometry");
  return out;
}

/// L = L_v + A1 with the new basis vector inserted at `position`; f acts as
/// f_v on L_v and fixes the new vector.
inline std::pair<Lattice, Isometry> extend_by_orthogonal_A1(const Lattice& Lv, const Isometry& fv,
                                                            std::optional<std::size_t> position = std::nullopt) {
  const std::size_t m = Lv.rank(), n = m + 1;
  const std::size_t pos = position.value_or(m);
  if (pos > m) throw invalid_input("insertion position out of range");
  auto map = [&](std::size_t i) { return i < pos ? i : i + 1; };
  IntMatrix gram(n, n), f(n, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      gram(map(i), map(j)) = Lv.gram(i, j);
      f(map(i), map(j)) = fv(i, j);
    }
  gram(pos, pos) = 2;
  f(pos, pos) = 1;
  LatticeSpec spec = Lv.spec;
  Lattice L;
  if (!spec.summands.empty() && !position) {
    spec.summands.push_back(detail::make(SummandKind::A, 1));
    L = build_lattice(spec);
  } else {
    L = lattice_from_gram(gram);
  }
  if (!is_isometry(L, f)) throw std::logic_error("extension is not an isometry");
  return {L, f};
}

// ---------------------------------------------------------------------------
// Chirality decision

enum class Verdict { Chiral, Achiral, Unknown };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Chiral: return "Chiral";
    case Verdict::Achiral: return "Achiral";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

struct Witness {
  std::string route;  // "automorphism", "subset", "restriction", "extension"
  GraphSymmetry symmetry;
  Isometry matrix;
  IntVector black_vertex;
  IntVector image_vertex;
  std::string black_label;
  std::string image_label;
};

struct ChiralityVerdict {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  std::optional<Witness> witness;
  std::optional<VinbergRun> run;
  std::vector<std::string> diagnostics;
};

struct ChiralityOptions {
  Rational max_level = 300;
  std::optional<IntVector> base_point;
  /// "auto": preset subsets plus the set of all 2-roots; "preset": preset
  /// subsets only; "none": full graph only.
  std::string subset = "auto";
  /// Extra vertex subsets, given by root coordinates.
  std::function<std::vector<std::vector<IntVector>>(const Lattice&)> preset_subsets;
  /// Relabels a finished run (reference labels for known lattices).
  std::function<void(VinbergRun&)> relabel;
  /// Subgraph symmetries tried before any search.
  std::function<std::vector<GraphSymmetry>(const VinbergRun&, const CoxeterGraph&)> preferred_symmetries;
  bool reductions = true;
  int reduction_depth = 2;
  std::size_t max_symmetries = 200000;
};

namespace detail {

inline std::string gram_key(const IntMatrix& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) os << g(i, j) << ',';
  return os.str();
}

/// Runs are deterministic, so they are shared within the process.
inline VinbergRun cached_run(const Lattice& L, const IntVector& p, const Rational& max_level) {
  static std::mutex mu;
  static std::map<std::string, VinbergRun> cache;
  std::ostringstream key;
  key << gram_key(L.gram) << '|' << to_string(p) << '|' << max_level;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key.str());
    if (it != cache.end()) {
      VinbergRun r = it->second;
      r.lattice = L;
      return r;
    }
  }
  VinbergOptions o;
  o.max_level = max_level;
  VinbergRun run = vinberg_run(L, p, o);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key.str(), run);
  return run;
}

inline bool all_norms_divisible_by_4(const IntMatrix& g) {
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j) % 2 != 0) return false;
      if (i == j && g(i, i) % 4 != 0) return false;
    }
  return true;
}

inline bool spans_over_z(const std::vector<IntVector>& vecs, std::size_t n) {
  if (vecs.size() < n) return false;
  IntMatrix m(vecs.size(), n);
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = vecs[i][j];
  IntMatrix h = row_basis(m);
  if (h.rows() != n) return false;
  Integer d = 1;
  for (std::size_t i = 0; i < n; ++i) d *= h(i, i);
  return abs(d) == 1;
}

inline bool spans_over_q(const std::vector<IntVector>& vecs, std::size_t n) {
  if (vecs.size() < n) return false;
  IntMatrix m(vecs.size(), n);
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = vecs[i][j];
  return rank(m) == n;
}

/// Fills the black/image fields of a witness: the first 6-root whose image
/// differs from it modulo 3 on the Z/3 block, else the first moved 6-root.
inline void describe_witness(const Lattice& L, const VinbergRun& run, Witness& w) {
  const auto roots = run.roots();
  std::optional<std::size_t> moved, differs;
  std::optional<SummandBlock> blk;
  try {
    blk = z3_block(L);
  } catch (const invalid_input&) {
  }
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (roots[j].norm != 6) continue;
    IntVector img = w.matrix * roots[j].vec;
    if (img == roots[j].vec) continue;
    if (!moved) moved = j;
    if (blk && !differs)
      for (std::size_t i = 0; i < blk->size(); ++i)
        if ((roots[j].vec[blk->start + i] - img[blk->start + i]) % 3 != 0) differs = j;
  }
  auto pick = differs ? differs : moved;
  if (!pick) return;
  w.black_vertex = roots[*pick].vec;
  w.black_label = run.labels[*pick];
  w.image_vertex = w.matrix * roots[*pick].vec;
  for (std::size_t j = 0; j < roots.size(); ++j)
    if (roots[j].vec == w.image_vertex) w.image_label = run.labels[j];
}

struct Search {
  std::optional<Witness> reversing;
  std::size_t lifted = 0;
  std::size_t direct = 0;
  std::size_t non_integral = 0;
  std::size_t visited = 0;
  bool truncated = false;
};

/// Looks for a Z/3-reversing lift among the symmetries of the subgraph on
/// J (the full graph when J is empty).  `accept` filters candidate lifts.
inline Search search_symmetries(const VinbergRun& run, const CoxeterGraph& g, const VertexSet& J,
                                std::size_t cap, const std::function<bool(const Isometry&)>& accept = {}) {
  Search s;
  const auto roots = run.roots();
  std::vector<std::pair<std::size_t, Witness>> found;
  for_each_graph_automorphism(g, J, [&](const GraphSymmetry& sigma) {
    if (++s.visited > cap) {
      s.truncated = true;
      return false;
    }
    auto m = symmetry_to_isometry(run.lattice, roots, sigma);
    if (!m) {
      ++s.non_integral;
      return true;
    }
    ++s.lifted;
    if (delta3_sign(run.lattice, *m) == 1) {
      ++s.direct;
      return true;
    }
    if (accept && !accept(*m)) return true;
    // Prefer involutions moving few vertices; ties keep enumeration order.
    bool involution = *m * *m == IntMatrix::identity(run.lattice.rank());
    std::size_t movedv = 0;
    for (std::size_t i = 0; i < sigma.vertices.size(); ++i)
      if (sigma.vertices[i] != sigma.image[i]) ++movedv;
    Witness w;
    w.symmetry = sigma;
    w.matrix = *m;
    found.push_back({(involution ? 0 : 1000000) + movedv, std::move(w)});
    return true;
  });
  if (!found.empty()) {
    auto best = std::min_element(found.begin(), found.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return a.second.symmetry.image < b.second.symmetry.image;
    });
    s.reversing = best->second;
  }
  return s;
}

inline std::optional<VertexSet> resolve_subset(const VinbergRun& run, const std::vector<IntVector>& coords) {
  VertexSet J;
  for (const auto& c : coords) {
    std::size_t at = run.accepted.size();
    for (std::size_t j = 0; j < run.accepted.size(); ++j)
      if (run.accepted[j].root.vec == c) at = j;
    if (at == run.accepted.size()) return std::nullopt;
    J.push_back(at);
  }
  std::sort(J.begin(), J.end());
  return J;
}

}  // namespace detail

/// Candidate vertex subsets for symmetry lifting: presets, then (in auto
/// mode) all 2-roots.  Only subsets spanning L over Z are kept.
inline std::vector<VertexSet> spanning_subsets(const VinbergRun& run, const ChiralityOptions& opts) {
  std::vector<VertexSet> out;
  const std::size_t n = run.lattice.rank();
  auto keep = [&](const VertexSet& J) {
    std::vector<IntVector> vecs;
    for (auto j : J) vecs.push_back(run.accepted[j].root.vec);
    if (detail::spans_over_z(vecs, n) && std::find(out.begin(), out.end(), J) == out.end()) out.push_back(J);
  };
  if (opts.subset != "none" && opts.preset_subsets)
    for (const auto& coords : opts.preset_subsets(run.lattice))
      if (auto J = detail::resolve_subset(run, coords)) keep(*J);
  if (opts.subset == "auto") {
    VertexSet J;
    for (std::size_t j = 0; j < run.accepted.size(); ++j)
      if (run.accepted[j].root.norm == 2) J.push_back(j);
    keep(J);
  }
  return out;
}

inline ChiralityVerdict classify_chirality(const Lattice& L, const ChiralityOptions& opts = {});

namespace detail {

/// A Z/3-reversing wall-preserving isometry fixing `fixed`, if the direct
/// search finds one.
inline std::optional<Witness> reversing_fixing(const Lattice& L, const IntVector& fixed, const ChiralityOptions& opts) {
  IntVector p = opts.base_point ? *opts.base_point : default_base_point(L);
  VinbergRun run = cached_run(L, p, opts.max_level);
  if (opts.relabel) opts.relabel(run);
  if (run.accepted.size() > 64) return std::nullopt;
  CoxeterGraph g = build_coxeter_graph(L, run.roots(), run.labels);
  auto accept = [&](const Isometry& m) { return m * fixed == fixed; };
  std::vector<VertexSet> sets;
  if (run.termination.status == RunStatus::Terminated) sets.push_back({});
  for (auto& J : spanning_subsets(run, opts)) sets.push_back(J);
  for (const auto& J : sets) {
    auto s = search_symmetries(run, g, J, opts.max_symmetries, accept);
    if (s.reversing) {
      s.reversing->route = J.empty() ? "automorphism" : "subset";
      describe_witness(L, run, *s.reversing);
      return s.reversing;
    }
  }
  return std::nullopt;
}

inline bool is_plain_a1(const Summand& s) { return s.kind == SummandKind::A && s.n == 1 && s.scale == 1 && s.sign == 1; }
inline bool is_minus_a1(const Summand& s) {
  return s.kind == SummandKind::Diag && s.entries.size() == 1 && s.entries[0] * s.scale * s.sign == -2;
}

/// L = L' + A1 with L' achiral gives a witness on L.
inline std::optional<ChiralityVerdict> via_extension(const Lattice& L, const ChiralityOptions& opts) {
  for (std::size_t b = L.blocks.size(); b-- > 0;) {
    if (!is_plain_a1(L.blocks[b].summand)) continue;
    LatticeSpec sub;
    for (std::size_t c = 0; c < L.blocks.size(); ++c)
      if (c != b) sub.summands.push_back(L.blocks[c].summand);
    if (sub.summands.empty()) return std::nullopt;
    Lattice Lv = build_lattice(sub);
    if (Lv.sig.negative != 1) return std::nullopt;
    ChiralityOptions o = opts;
    o.reduction_depth = opts.reduction_depth - 1;
    o.base_point.reset();
    ChiralityVerdict inner = classify_chirality(Lv, o);
    if (inner.verdict != Verdict::Achiral || !inner.witness) return std::nullopt;
    auto [Lext, f] = extend_by_orthogonal_A1(Lv, inner.witness->matrix, L.blocks[b].start);
    if (!(Lext.gram == L.gram)) return std::nullopt;
    if (delta3_sign(L, f) != -1) throw std::logic_error("extension changed the Z/3 action");
    ChiralityVerdict v;
    v.verdict = Verdict::Achiral;
    v.reason = "extension of a Z/3-reversing automorphism of " + to_string(sub) + " by the identity on A1";
    Witness w = *inner.witness;
    w.route = "extension";
    w.matrix = f;
    auto lift = [&](const IntVector& x) {
      if (x.empty()) return x;
      IntVector y;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (i == L.blocks[b].start) y.push_back(0);
        y.push_back(x[i]);
      }
      if (L.blocks[b].start == x.size()) y.push_back(0);
      return y;
    };
    w.black_vertex = lift(w.black_vertex);
    w.image_vertex = lift(w.image_vertex);
    v.witness = std::move(w);
    v.run = inner.run;
    if (v.run) v.diagnostics.push_back("certificate run is of " + to_string(v.run->lattice.spec));
    return v;
  }
  return std::nullopt;
}

/// L = (L' with a U summand)_v for v = u1 + u2 of that summand.
inline std::optional<ChiralityVerdict> via_restriction(const Lattice& L, const ChiralityOptions& opts) {
  for (std::size_t b = 0; b < L.blocks.size(); ++b) {
    if (!is_minus_a1(L.blocks[b].summand)) continue;
    LatticeSpec parent;
    std::size_t ustart = 0;
    for (std::size_t c = 0; c < L.blocks.size(); ++c) {
      if (c == b) {
        ustart = L.blocks[c].start;
        parent.summands.push_back(detail::make(SummandKind::U));
      } else {
        parent.summands.push_back(L.blocks[c].summand);
      }
    }
    Lattice P = build_lattice(parent);
    IntVector v(P.rank(), 0);
    v[ustart] = 1;
    v[ustart + 1] = 1;
    ChiralityOptions o = opts;
    o.base_point.reset();
    auto w = reversing_fixing(P, v, o);
    if (!w) return std::nullopt;
    Restriction r = restrict_to_orthogonal(P, w->matrix, v);
    if (!(r.lattice.gram == L.gram)) return std::nullopt;
    if (delta3_sign(L, r.isometry) != -1) throw std::logic_error("restriction changed the Z/3 action");
    ChiralityVerdict out;
    out.verdict = Verdict::Achiral;
    out.reason = "restriction of a Z/3-reversing automorphism of " + to_string(parent) + " fixing u1+u2";
    Witness wr = *w;
    wr.route = "restriction";
    wr.matrix = r.isometry;
    auto proj = [&](const IntVector& x) -> IntVector {
      if (x.empty() || inner_product(P, x, v) != 0) return {};
      RatMatrix normal = to_rational(r.basis.transpose() * P.gram * r.basis);
      RatVector c = *inverse(normal) * (to_rational(r.basis.transpose() * P.gram) * to_rational(x));
      auto ci = to_integer(c);
      return ci ? *ci : IntVector{};
    };
    wr.black_vertex = proj(w->black_vertex);
    wr.image_vertex = proj(w->image_vertex);
    out.witness = std::move(wr);
    out.run = cached_run(P, default_base_point(P), opts.max_level);
    if (opts.relabel) opts.relabel(*out.run);
    out.diagnostics.push_back("certificate run is of " + to_string(parent));
    return out;
  }
  return std::nullopt;
}

}  // namespace detail

/// Direct route: Vinberg run, then symmetry lifting on the full graph and on
/// spanning subsets.
inline ChiralityVerdict classify_direct(const Lattice& L, const ChiralityOptions& opts) {
  ChiralityVerdict out;
  IntVector p = opts.base_point ? *opts.base_point : default_base_point(L);
  VinbergRun run = detail::cached_run(L, p, opts.max_level);
  if (opts.relabel) opts.relabel(run);
  out.run = run;
  const auto roots = run.roots();
  const bool terminated = run.termination.status == RunStatus::Terminated;
  if (run.accepted.size() > 64) {
    out.reason = "too many walls for symmetry search";
    return out;
  }
  CoxeterGraph g = build_coxeter_graph(L, roots, run.labels);
  std::vector<IntVector> wall_vecs;
  for (const auto& r : roots) wall_vecs.push_back(r.vec);
  const bool spans_q = detail::spans_over_q(wall_vecs, L.rank());

  if (opts.preferred_symmetries)
    for (const auto& sigma : opts.preferred_symmetries(run, g)) {
      std::vector<IntVector> dom;
      for (auto j : sigma.vertices) dom.push_back(roots.at(j).vec);
      if (!detail::spans_over_z(dom, L.rank())) continue;
      auto m = symmetry_to_isometry(L, roots, sigma);
      if (!m || delta3_sign(L, *m) != -1) continue;
      out.verdict = Verdict::Achiral;
      out.reason = "Z/3-reversing symmetry of a subgraph spanning the lattice";
      Witness w;
      w.route = "subset";
      w.symmetry = sigma;
      w.matrix = *m;
      detail::describe_witness(L, run, w);
      out.witness = std::move(w);
      return out;
    }

  std::optional<detail::Search> full;
  if (terminated) {
    full = detail::search_symmetries(run, g, {}, opts.max_symmetries);
    if (full->reversing) {
      out.verdict = Verdict::Achiral;
      out.reason = "Z/3-reversing automorphism of the Coxeter graph";
      out.witness = full->reversing;
      out.witness->route = "automorphism";
      detail::describe_witness(L, run, *out.witness);
      return out;
    }
  }
  for (const auto& J : spanning_subsets(run, opts)) {
    auto s = detail::search_symmetries(run, g, J, opts.max_symmetries);
    if (s.reversing) {
      out.verdict = Verdict::Achiral;
      out.reason = "Z/3-reversing symmetry of a subgraph spanning the lattice";
      out.witness = s.reversing;
      out.witness->route = "subset";
      detail::describe_witness(L, run, *out.witness);
      return out;
    }
    if (s.truncated) out.diagnostics.push_back("subset symmetry search truncated");
  }
  if (!terminated) {
    out.reason = "Vinberg not terminated";
    return out;
  }
  if (!spans_q) {
    out.reason = "walls do not span the lattice";
    return out;
  }
  if (full->truncated) {
    out.reason = "symmetry search truncated";
    return out;
  }
  out.verdict = Verdict::Chiral;
  out.reason = full->lifted <= 1 ? "trivial symmetry group" : "all symmetries Z/3-direct";
  return out;
}

inline ChiralityVerdict classify_chirality(const Lattice& L, const ChiralityOptions& opts) {
  if (L.sig.negative != 1) throw invalid_input("lattice is not hyperbolic");
  if (detail::all_norms_divisible_by_4(L.gram)) {
    ChiralityVerdict v;
    v.reason = "empty root system";
    return v;
  }
  {
    DiscriminantGroup D3 = primary_part(discriminant_group(L), 3);
    if (D3.generators.size() != 1 || D3.generators[0].order != 3) {
      ChiralityVerdict v;
      v.reason = "3-part of the discriminant group is not Z/3";
      return v;
    }
  }
  if (opts.reductions && opts.reduction_depth > 0 && !L.blocks.empty()) {
    if (auto v = detail::via_extension(L, opts)) return *v;
    if (auto v = detail::via_restriction(L, opts)) return *v;
  }
  ChiralityVerdict direct = classify_direct(L, opts);
  return direct;
}

}  // namespace chiralat
