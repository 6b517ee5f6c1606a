#pragma once
// Coxeter graphs of root sets: weights, subdiagram classification and
// enumeration, colour/weight-preserving automorphisms, DOT output.

#include <bit>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "roots.hpp"

namespace chiralat {

enum class VertexColor { White, Black };

struct CoxeterGraph {
  std::vector<VertexColor> colors;
  std::vector<std::string> labels;
  IntMatrix gram;    // pairwise products
  IntMatrix weight;  // m_ij = 4 (v_i v_j)^2 / (v_i^2 v_j^2)

  std::size_t size() const { return colors.size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return i != j && weight(i, j) != 0; }
};

inline CoxeterGraph build_coxeter_graph(const Lattice& L, const std::vector<Root>& roots,
                                        std::vector<std::string> labels = {}) {
  const std::size_t n = roots.size();
  CoxeterGraph g;
  g.gram = IntMatrix(n, n);
  g.weight = IntMatrix(n, n);
  std::vector<IntVector> cov;
  for (std::size_t i = 0; i < n; ++i) {
    auto k = root_norm_of(L, roots[i].vec);
    if (!k || *k != roots[i].norm) throw invalid_input("vertex " + std::to_string(i) + " is not a root");
    g.colors.push_back(roots[i].norm == 2 ? VertexColor::White : VertexColor::Black);
    cov.push_back(L.gram * roots[i].vec);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      g.gram(i, j) = dot(cov[i], roots[j].vec);
      if (i == j) continue;
      Integer num = 4 * g.gram(i, j) * g.gram(i, j);
      Integer den = Integer(roots[i].norm) * roots[j].norm;
      if (num % den != 0) throw invalid_input("non-integral edge weight");
      g.weight(i, j) = num / den;
    }
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
  if (labels.size() != n) throw invalid_input("label count does not match vertex count");
  g.labels = std::move(labels);
  return g;
}

enum class SubdiagramKind { Elliptic, Parabolic, Lanner, Indefinite };

inline std::string_view kind_name(SubdiagramKind k) {
  switch (k) {
    case SubdiagramKind::Elliptic: return "elliptic";
    case SubdiagramKind::Parabolic: return "parabolic";
    case SubdiagramKind::Lanner: return "lanner";
    case SubdiagramKind::Indefinite: return "indefinite";
  }
  return "?";
}

/// Rank is |J| for elliptic and |J| - #components for parabolic.
/// Indefinite covers every remaining case, including mixtures of elliptic and
/// parabolic components.
struct SubdiagramClass {
  SubdiagramKind kind = SubdiagramKind::Indefinite;
  std::size_t rank = 0;
  bool operator==(const SubdiagramClass&) const = default;
};

using VertexSet = std::vector<std::size_t>;

namespace detail {

inline IntMatrix sub_gram(const CoxeterGraph& g, const VertexSet& J) {
  IntMatrix m(J.size(), J.size());
  for (std::size_t a = 0; a < J.size(); ++a)
    for (std::size_t b = 0; b < J.size(); ++b) m(a, b) = g.gram(J[a], J[b]);
  return m;
}

inline std::vector<VertexSet> components(const CoxeterGraph& g, const VertexSet& J) {
  std::vector<VertexSet> out;
  std::vector<bool> seen(J.size(), false);
  for (std::size_t s = 0; s < J.size(); ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      comp.push_back(J[a]);
      for (std::size_t b = 0; b < J.size(); ++b)
        if (!seen[b] && g.adjacent(J[a], J[b])) {
          seen[b] = true;
          stack.push_back(b);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Kind of a connected vertex set: elliptic, connected parabolic or neither.
inline SubdiagramKind connected_kind(const CoxeterGraph& g, const VertexSet& comp) {
  Inertia in = inertia(sub_gram(g, comp));
  if (in.positive == comp.size()) return SubdiagramKind::Elliptic;
  if (in.negative == 0 && in.zero == 1) return SubdiagramKind::Parabolic;
  return SubdiagramKind::Indefinite;
}

}  // namespace detail

inline SubdiagramClass classify_subdiagram(const CoxeterGraph& g, VertexSet J) {
  if (J.empty()) throw invalid_input("empty subdiagram");
  std::sort(J.begin(), J.end());
  J.erase(std::unique(J.begin(), J.end()), J.end());
  for (auto v : J)
    if (v >= g.size()) throw invalid_input("vertex index out of range");
  auto comps = detail::components(g, J);
  std::size_t ell = 0, par = 0;
  for (const auto& c : comps) {
    auto k = detail::connected_kind(g, c);
    if (k == SubdiagramKind::Elliptic) ++ell;
    if (k == SubdiagramKind::Parabolic) ++par;
  }
  if (ell == comps.size()) return {SubdiagramKind::Elliptic, J.size()};
  if (par == comps.size()) return {SubdiagramKind::Parabolic, J.size() - comps.size()};
  if (comps.size() == 1 && determinant(detail::sub_gram(g, J)) != 0) {
    bool critical = true;
    for (std::size_t drop = 0; drop < J.size() && critical; ++drop) {
      VertexSet K;
      for (std::size_t i = 0; i < J.size(); ++i)
        if (i != drop) K.push_back(J[i]);
      if (K.empty()) continue;
      for (const auto& c : detail::components(g, K))
        if (detail::connected_kind(g, c) != SubdiagramKind::Elliptic) critical = false;
    }
    if (critical) return {SubdiagramKind::Lanner, 0};
  }
  return {SubdiagramKind::Indefinite, 0};
}

/// Bitmask engine for subdiagram enumeration on graphs with at most 64
/// vertices.  Classification of connected pieces is cached.
class SubdiagramIndex {
 public:
  using Mask = std::uint64_t;

  explicit SubdiagramIndex(const CoxeterGraph& g) : g_(g), n_(g.size()) {
    if (n_ > 64) throw invalid_input("subdiagram enumeration supports at most 64 vertices");
    adj_.assign(n_, 0);
    w_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (g.adjacent(i, j)) adj_[i] |= Mask(1) << j;
        if (i != j && g.gram(i, j) > 0) acute_ = true;
        w_[i * n_ + j] = g.weight(i, j) > 4 ? 5 : static_cast<int>(g.weight(i, j));
      }
  }

  std::size_t size() const { return n_; }
  Mask neighbours(std::size_t v) const { return adj_[v]; }

  static VertexSet to_set(Mask m) {
    VertexSet out;
    while (m) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
      m &= m - 1;
    }
    return out;
  }
  static Mask to_mask(const VertexSet& s) {
    Mask m = 0;
    for (auto v : s) m |= Mask(1) << v;
    return m;
  }

  /// Connected component of `seed` inside `within`.
  Mask component_of(std::size_t seed, Mask within) const {
    Mask comp = Mask(1) << seed, frontier = comp;
    while (frontier) {
      std::size_t v = static_cast<std::size_t>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      Mask add = adj_[v] & within & ~comp;
      comp |= add;
      frontier |= add;
    }
    return comp;
  }

  SubdiagramKind connected_kind(Mask comp) {
    auto it = cache_.find(comp);
    if (it != cache_.end()) return it->second;
    auto k = detail::connected_kind(g_, to_set(comp));
    cache_.emplace(comp, k);
    return k;
  }

  /// Ellipticity of a connected set.  With no acute pairs the Gram matrix is
  /// determined by the weights, so the shape decides.
  bool connected_elliptic(Mask comp) {
    if (acute_) return connected_kind(comp) == SubdiagramKind::Elliptic;
    auto it = shape_cache_.find(comp);
    if (it != shape_cache_.end()) return it->second;
    bool e = elliptic_shape(comp);
    shape_cache_.emplace(comp, e);
    return e;
  }

  bool elliptic(Mask m) {
    while (m) {
      std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
      Mask c = component_of(v, m);
      if (!connected_elliptic(c)) return false;
      m &= ~c;
    }
    return true;
  }

  /// Elliptic after adding v to an elliptic set s.
  bool elliptic_with(Mask s, std::size_t v) { return connected_elliptic(component_of(v, s | (Mask(1) << v))); }

  /// Minimal non-elliptic vertex sets (all connected).  Parabolic ones are
  /// degenerate, Lanner ones are not.
  struct Critical {
    std::vector<Mask> parabolic;
    std::vector<Mask> lanner;
    std::vector<Mask> other;
  };

  const Critical& critical() {
    if (critical_) return *critical_;
    Critical out;
    std::set<Mask> seen_ell, seen_crit;
    std::vector<Mask> frontier;
    for (std::size_t v = 0; v < n_; ++v) {
      Mask m = Mask(1) << v;
      if (connected_elliptic(m) && seen_ell.insert(m).second) frontier.push_back(m);
    }
    while (!frontier.empty()) {
      Mask e = frontier.back();
      frontier.pop_back();
      Mask nb = 0;
      for (Mask t = e; t; t &= t - 1) nb |= adj_[static_cast<std::size_t>(std::countr_zero(t))];
      nb &= ~e;
      for (Mask t = nb; t; t &= t - 1) {
        std::size_t x = static_cast<std::size_t>(std::countr_zero(t));
        Mask s = e | (Mask(1) << x);
        if (connected_elliptic(s)) {
          if (seen_ell.insert(s).second) frontier.push_back(s);
          continue;
        }
        if (seen_crit.count(s)) continue;
        bool crit = true;
        for (Mask u = s; u && crit; u &= u - 1) {
          Mask rest = s & ~(u & -u);
          if (!elliptic(rest)) crit = false;
        }
        if (!crit) continue;
        seen_crit.insert(s);
        auto k = connected_kind(s);
        if (k == SubdiagramKind::Parabolic)
          out.parabolic.push_back(s);
        else if (determinant(detail::sub_gram(g_, to_set(s))) != 0)
          out.lanner.push_back(s);
        else
          out.other.push_back(s);
      }
    }
    std::sort(out.parabolic.begin(), out.parabolic.end());
    std::sort(out.lanner.begin(), out.lanner.end());
    std::sort(out.other.begin(), out.other.end());
    critical_ = std::move(out);
    return *critical_;
  }

  /// Parabolic sets (unions of pairwise disjoint, non-adjacent connected
  /// parabolic pieces) of the given total rank.
  std::vector<Mask> parabolic_of_rank(std::size_t rank) {
    const auto& pieces = critical().parabolic;
    std::vector<Mask> out;
    std::vector<Mask> closed(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      Mask c = pieces[i];
      for (Mask t = pieces[i]; t; t &= t - 1) c |= adj_[static_cast<std::size_t>(std::countr_zero(t))];
      closed[i] = c;
    }
    std::function<void(std::size_t, Mask, Mask, std::size_t)> rec = [&](std::size_t from, Mask used, Mask blocked,
                                                                          std::size_t r) {
      if (r == rank && used) out.push_back(used);
      if (r >= rank) return;
      for (std::size_t i = from; i < pieces.size(); ++i) {
        if (pieces[i] & blocked) continue;
        std::size_t pr = static_cast<std::size_t>(std::popcount(pieces[i])) - 1;
        if (r + pr > rank) continue;
        rec(i + 1, used | pieces[i], blocked | closed[i], r + pr);
      }
    };
    rec(0, 0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Visits elliptic sets of exactly `count` vertices; stop by returning false.
  void for_each_elliptic(std::size_t count, const std::function<bool(Mask)>& visit) {
    bool stop = false;
    std::function<void(std::size_t, Mask, std::size_t)> rec = [&](std::size_t v, Mask s, std::size_t k) {
      if (stop) return;
      if (k == count) {
        if (!visit(s)) stop = true;
        return;
      }
      if (n_ - v < count - k) return;
      if (elliptic_with(s, v)) rec(v + 1, s | (Mask(1) << v), k + 1);
      if (stop) return;
      rec(v + 1, s, k);
    };
    if (count == 0) {
      visit(0);
      return;
    }
    rec(0, 0, 0);
  }

 private:
  int w(std::size_t a, std::size_t b) const { return w_[a * n_ + b]; }

  // Connected elliptic Coxeter diagrams with crystallographic weights:
  // A, B, D, E6-8, F4, G2.
  bool elliptic_shape(Mask comp) const {
    VertexSet vs = to_set(comp);
    const std::size_t k = vs.size();
    if (k == 1) return true;
    std::size_t edges = 0, heavy = 0, triple = 0;
    std::vector<std::size_t> deg(k, 0);
    std::pair<std::size_t, std::size_t> heavy_edge{0, 0};
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        int x = w(vs[a], vs[b]);
        if (x == 0) continue;
        if (x > 3) return false;
        ++edges;
        ++deg[a];
        ++deg[b];
        if (x == 2) {
          ++heavy;
          heavy_edge = {a, b};
        }
        if (x == 3) ++triple;
      }
    if (edges != k - 1) return false;
    if (triple) return k == 2;
    std::size_t branch = k, branches = 0;
    for (std::size_t a = 0; a < k; ++a) {
      if (deg[a] > 3) return false;
      if (deg[a] == 3) {
        branch = a;
        ++branches;
      }
    }
    if (heavy > 1) return false;
    if (heavy == 1) {
      if (branches) return false;
      if (deg[heavy_edge.first] == 1 || deg[heavy_edge.second] == 1) return true;
      return k == 4;
    }
    if (branches == 0) return true;
    if (branches > 1) return false;
    std::vector<std::size_t> arms;
    for (std::size_t nb = 0; nb < k; ++nb) {
      if (nb == branch || w(vs[branch], vs[nb]) == 0) continue;
      std::size_t len = 1, prev = branch, cur = nb;
      while (deg[cur] == 2) {
        std::size_t next = k;
        for (std::size_t c = 0; c < k; ++c)
          if (c != prev && c != cur && w(vs[cur], vs[c]) != 0) next = c;
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return true;
    return arms[0] == 1 && arms[1] == 2 && arms[2] <= 4;
  }

  const CoxeterGraph& g_;
  std::size_t n_;
  std::vector<Mask> adj_;
  std::vector<int> w_;
  bool acute_ = false;
  std::unordered_map<Mask, SubdiagramKind> cache_;
  std::unordered_map<Mask, bool> shape_cache_;
  std::optional<Critical> critical_;
};

/// All vertex subsets of the requested class and rank, each sorted, in
/// lexicographic order.  Elliptic rank 0 yields nothing.
inline std::vector<VertexSet> enumerate_subdiagrams(const CoxeterGraph& g, SubdiagramKind kind, std::size_t rank) {
  SubdiagramIndex idx(g);
  std::vector<VertexSet> out;
  switch (kind) {
    case SubdiagramKind::Elliptic:
      if (rank == 0) return out;
      idx.for_each_elliptic(rank, [&](SubdiagramIndex::Mask m) {
        out.push_back(SubdiagramIndex::to_set(m));
        return true;
      });
      break;
    case SubdiagramKind::Parabolic:
      if (rank == 0) return out;
      for (auto m : idx.parabolic_of_rank(rank)) out.push_back(SubdiagramIndex::to_set(m));
      break;
    case SubdiagramKind::Lanner:
      for (auto m : idx.critical().lanner) out.push_back(SubdiagramIndex::to_set(m));
      break;
    case SubdiagramKind::Indefinite:
      throw invalid_input("indefinite subdiagrams are not enumerated");
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Name of a connected elliptic diagram (A_n, D_n, E_6..8, G_2), or empty.
inline std::string elliptic_type(const CoxeterGraph& g, const VertexSet& comp) {
  const std::size_t n = comp.size();
  if (n == 1) return "A1";
  std::vector<std::size_t> deg(n, 0);
  std::size_t edges = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Integer& w = g.weight(comp[a], comp[b]);
      if (w == 0) continue;
      if (n == 2 && w == 3) return "G2";
      if (w != 1) return {};
      ++deg[a];
      ++deg[b];
      ++edges;
    }
  if (edges != n - 1) return {};
  std::size_t branch = n, leaves = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (deg[a] > 3) return {};
    if (deg[a] == 3) {
      if (branch != n) return {};
      branch = a;
    }
    if (deg[a] == 1) ++leaves;
  }
  if (branch == n) return "A" + std::to_string(n);
  // arm lengths from the branch vertex
  std::vector<std::size_t> arms;
  for (std::size_t b = 0; b < n; ++b) {
    if (b == branch || g.weight(comp[branch], comp[b]) == 0) continue;
    std::size_t len = 1, prev = branch, cur = b;
    while (deg[cur] == 2) {
      std::size_t next = n;
      for (std::size_t c = 0; c < n; ++c)
        if (c != prev && c != cur && g.weight(comp[cur], comp[c]) != 0) next = c;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return "E" + std::to_string(n);
  return {};
}

/// A permutation of a vertex subset: vertices[i] -> image[i].
struct GraphSymmetry {
  VertexSet vertices;
  VertexSet image;

  bool is_identity() const { return vertices == image; }
  std::size_t apply(std::size_t v) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == v) return image[i];
    return v;
  }
  bool operator==(const GraphSymmetry&) const = default;
};

/// Colour- and weight-preserving permutations of J (all vertices when J is
/// empty).  `visit` may stop the search by returning false.
inline void for_each_graph_automorphism(const CoxeterGraph& g, VertexSet J,
                                        const std::function<bool(const GraphSymmetry&)>& visit) {
  if (J.empty()) {
    J.resize(g.size());
    std::iota(J.begin(), J.end(), 0);
  }
  std::sort(J.begin(), J.end());
  const std::size_t n = J.size();
  // Invariant: colour and the sorted weights to the rest of J.
  std::vector<std::pair<int, std::vector<Integer>>> inv(n);
  for (std::size_t a = 0; a < n; ++a) {
    inv[a].first = g.colors[J[a]] == VertexColor::White ? 0 : 1;
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) inv[a].second.push_back(g.weight(J[a], J[b]));
    std::sort(inv[a].second.begin(), inv[a].second.end());
  }
  // Search order: rarest invariant class first, then stay adjacent to
  // already placed vertices.
  std::map<std::pair<int, std::vector<Integer>>, std::size_t> freq;
  for (const auto& x : inv) ++freq[x];
  std::vector<std::size_t> order;
  std::vector<bool> placed(n, false);
  while (order.size() < n) {
    std::size_t best = n;
    std::size_t best_links = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (placed[a]) continue;
      std::size_t links = 0;
      for (auto o : order)
        if (g.adjacent(J[a], J[o])) ++links;
      if (best == n || links > best_links || (links == best_links && freq[inv[a]] < freq[inv[best]])) {
        best = a;
        best_links = links;
      }
    }
    placed[best] = true;
    order.push_back(best);
  }
  std::vector<std::size_t> img(n, n);
  std::vector<bool> used(n, false);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (stop) return;
    if (depth == n) {
      GraphSymmetry s;
      s.vertices = J;
      for (std::size_t a = 0; a < n; ++a) s.image.push_back(J[img[a]]);
      if (!visit(s)) stop = true;
      return;
    }
    const std::size_t a = order[depth];
    for (std::size_t b = 0; b < n && !stop; ++b) {
      if (used[b] || inv[b] != inv[a]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t c = order[d];
        if (g.weight(J[a], J[c]) != g.weight(J[b], J[img[c]])) ok = false;
      }
      if (!ok) continue;
      used[b] = true;
      img[a] = b;
      rec(depth + 1);
      used[b] = false;
      img[a] = n;
    }
  };
  rec(0);
}

inline std::vector<GraphSymmetry> graph_automorphisms(const CoxeterGraph& g, const VertexSet& J = {}) {
  std::vector<GraphSymmetry> out;
  for_each_graph_automorphism(g, J, [&](const GraphSymmetry& s) {
    out.push_back(s);
    return true;
  });
  std::sort(out.begin(), out.end(), [](const GraphSymmetry& a, const GraphSymmetry& b) { return a.image < b.image; });
  return out;
}

inline std::string to_dot(const CoxeterGraph& g) {
  std::ostringstream os;
  os << "graph coxeter {\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    os << "  \"" << g.labels[i] << "\" [shape=circle,style=filled,fillcolor="
       << (g.colors[i] == VertexColor::White ? "white" : "black") << "];\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Integer& w = g.weight(i, j);
      if (w == 0) continue;
      os << "  \"" << g.labels[i] << "\" -- \"" << g.labels[j] << "\"";
      if (w == 2)
        os << " [label=\"4\"]";
      else if (w == 3)
        os << " [label=\"6\"]";
      else if (w == 4)
        os << " [style=bold]";
      else if (w > 4)
        os << " [style=dashed]";
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace chiralat
