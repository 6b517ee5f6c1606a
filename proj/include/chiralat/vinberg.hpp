#pragma once
// Vinberg's algorithm on a hyperbolic lattice: level-0 simple roots at a
// base point, then roots level by level with termination certification.

#include "coxeter.hpp"

namespace chiralat {

struct AcceptedRoot {
  Root root;
  Rational level;
};

enum class RunStatus { Terminated, Exhausted, Running };

inline std::string_view status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Terminated: return "Terminated";
    case RunStatus::Exhausted: return "Exhausted";
    case RunStatus::Running: return "Running";
  }
  return "?";
}

/// Criterion names: "parabolic-cover" (no Lanner subdiagram and every
/// connected parabolic piece sits inside a parabolic set of rank n-1),
/// "extension-count" (every elliptic set of rank n-1 has exactly two
/// extensions), or "none".
struct TerminationReport {
  RunStatus status = RunStatus::Running;
  std::string criterion = "none";
  Rational max_level = 0;
  std::size_t root_rank = 0;
  std::size_t level0_rank = 0;
  std::size_t connected_parabolic = 0;
  std::size_t lanner = 0;
  std::size_t elliptic_checked = 0;
  std::vector<VertexSet> maximal_parabolic;
  std::size_t same_level_rejections = 0;
};

struct VinbergRun {
  Lattice lattice;
  IntVector base_point;
  std::vector<AcceptedRoot> accepted;
  std::vector<std::string> labels;
  TerminationReport termination;

  std::vector<Root> roots() const {
    std::vector<Root> out;
    for (const auto& a : accepted) out.push_back(a.root);
    return out;
  }
};

/// u1 - u2 of the first U or U(k) summand, otherwise the generator of the
/// first negative rank-1 summand.
inline IntVector default_base_point(const Lattice& L) {
  for (const auto& b : L.blocks)
    if (b.summand.kind == SummandKind::U) {
      IntVector p(L.rank(), 0);
      p[b.start] = 1;
      p[b.start + 1] = -1;
      return p;
    }
  for (const auto& b : L.blocks)
    if (b.summand.kind == SummandKind::Diag) {
      IntMatrix g = summand_gram(b.summand);
      for (std::size_t i = 0; i < g.rows(); ++i)
        if (g(i, i) < 0) {
          IntVector p(L.rank(), 0);
          p[b.start + i] = 1;
          return p;
        }
    }
  throw invalid_input("no default base point for this lattice");
}

inline Rational root_level(const Lattice& L, const IntVector& p, const Root& r) {
  Integer pv = inner_product(L, p, r.vec);
  return Rational(2 * pv * pv, r.norm);
}

namespace detail {

struct LevelClass {
  Rational level;
  int norm;
  Integer m;  // p.v = -m
};

inline Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

/// Merged grid of levels 2m^2/k up to max_level.
inline std::vector<LevelClass> level_grid(const Lattice& L, const IntVector& p, const Rational& max_level) {
  Integer g = content(L.gram * p);
  std::vector<LevelClass> out;
  for (Integer m = g; Rational(m * m) <= max_level; m += g) out.push_back({Rational(m * m), 2, m});
  Integer g6 = lcm(g, 3);
  for (Integer m = g6; Rational(m * m, 3) <= max_level; m += g6) out.push_back({Rational(m * m, 3), 6, m});
  std::sort(out.begin(), out.end(), [](const LevelClass& a, const LevelClass& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.norm < b.norm;
  });
  return out;
}

inline Integer lcm_of_denominators(const RatVector& v) {
  Integer d = 1;
  for (const auto& x : v) d = lcm(d, boost::multiprecision::denominator(x));
  return d;
}

/// Candidate search bound to a base point and a fixed level-0 system.
class LevelSearch {
 public:
  LevelSearch(const Lattice& L, IntVector p, const std::vector<Root>& level0) : L_(L), p_(std::move(p)) {
    gp_ = L.gram * p_;
    psq_ = -dot(gp_, p_);
    const std::size_t N = L.rank();
    IntMatrix span(level0.size(), N);
    for (std::size_t i = 0; i < level0.size(); ++i)
      for (std::size_t j = 0; j < N; ++j) span(i, j) = level0[i].vec[j];
    level0_rank_ = level0.empty() ? 0 : rank(span);
    cone_ = level0.size() == N - 1 && level0_rank_ == N - 1;
    if (cone_) {
      IntMatrix B(N, N);
      for (std::size_t j = 0; j < N; ++j) B(0, j) = gp_[j];
      for (std::size_t i = 0; i < level0.size(); ++i) {
        IntVector c = L.gram * level0[i].vec;
        for (std::size_t j = 0; j < N; ++j) B(i + 1, j) = c[j];
      }
      binv_ = *inverse(B);
      const std::size_t n = N - 1;
      IntMatrix C(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) C(i, j) = inner_product(L, level0[i].vec, level0[j].vec);
      RatMatrix cinv = *inverse(C);
      cden_ = common_denominator(cinv);
      q_ = IntMatrix(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q_(i, j) = boost::multiprecision::numerator(cinv(i, j) * Rational(cden_));
    } else {
      const std::size_t N2 = N;
      gpp_ = IntMatrix(N2, N2);
      for (std::size_t i = 0; i < N2; ++i)
        for (std::size_t j = 0; j < N2; ++j) gpp_(i, j) = psq_ * L.gram(i, j) + 2 * gp_[i] * gp_[j];
      l6_ = six_root_sublattice(L.gram);
    }
  }

  bool cone_mode() const { return cone_; }
  std::size_t level0_rank() const { return level0_rank_; }

  /// All k-roots with p.v = -m and v.w <= 0 for every w in `walls`
  /// (level-0 walls included), ascending lexicographic.
  std::vector<Root> candidates(int k, const Integer& m, const std::vector<Root>& walls, EnumOptions opts = {}) const {
    std::vector<Root> out;
    if (cone_)
      cone_candidates(k, m, walls, opts, out);
    else
      direct_candidates(k, m, walls, opts, out);
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return a.vec < b.vec; });
    return out;
  }

 private:
  void cone_candidates(int k, const Integer& m, const std::vector<Root>& walls, EnumOptions opts,
                       std::vector<Root>& out) const {
    const std::size_t N = L_.rank(), n = N - 1;
    // y^T C^{-1} y = k + m^2/|p^2|, scaled by cden.
    Rational rhs = Rational(k) + Rational(m * m, psq_);
    Rational scaled = rhs * Rational(cden_);
    if (boost::multiprecision::denominator(scaled) != 1) return;
    Integer target = boost::multiprecision::numerator(scaled);
    const Integer s = k == 6 ? 3 : 1;
    if (k == 6) {
      if (m % 3 != 0 || target % 9 != 0) return;
      target /= 9;
    }
    std::vector<EnumConstraint> cons;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector e(n, 0);
      e[i] = -1;
      cons.push_back({e, Relation::Le, 0});
    }
    for (const auto& w : walls) {
      IntVector gw = L_.gram * w.vec;
      if (dot(gw, p_) == 0) continue;  // level-0 walls are the sign constraints
      // w.v = a . z with z = (-m, -s y')
      RatVector a(N, Rational(0));
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t r = 0; r < N; ++r)
          if (gw[r] != 0) a[j] += Rational(gw[r]) * binv_(r, j);
      Integer den = lcm_of_denominators(a);
      IntVector normal(n);
      for (std::size_t i = 0; i < n; ++i) normal[i] = -s * boost::multiprecision::numerator(a[i + 1] * Rational(den));
      Integer value = boost::multiprecision::numerator(a[0] * Rational(den)) * m;
      cons.push_back({normal, Relation::Le, value});
    }
    for (const auto& y : enumerate_short_vectors(q_, target, cons, opts)) {
      RatVector z(N);
      z[0] = Rational(-m);
      for (std::size_t i = 0; i < n; ++i) z[i + 1] = Rational(-s * y[i]);
      auto v = to_integer(binv_ * z);
      if (!v) continue;
      if (root_norm_of(L_, *v) != k) continue;
      out.push_back({std::move(*v), k});
    }
  }

  void direct_candidates(int k, const Integer& m, const std::vector<Root>& walls, EnumOptions opts,
                         std::vector<Root>& out) const {
    const std::size_t N = L_.rank();
    IntMatrix basis = k == 6 ? l6_ : IntMatrix::identity(N);
    IntMatrix g = basis.transpose() * gpp_ * basis;
    Integer target = psq_ * k + 2 * m * m;
    auto pull = [&](const IntVector& cov) {
      IntVector r(basis.cols(), 0);
      for (std::size_t c = 0; c < basis.cols(); ++c)
        for (std::size_t i = 0; i < N; ++i) r[c] += cov[i] * basis(i, c);
      return r;
    };
    std::vector<EnumConstraint> cons;
    cons.push_back({pull(gp_), Relation::Eq, -m});
    for (const auto& w : walls) cons.push_back({pull(L_.gram * w.vec), Relation::Le, 0});
    for (const auto& c : enumerate_short_vectors(g, target, cons, opts)) {
      IntVector v = basis * c;
      if (root_norm_of(L_, v) != k) continue;
      out.push_back({std::move(v), k});
    }
  }

  const Lattice& L_;
  IntVector p_;
  IntVector gp_;
  Integer psq_;  // |p^2|
  std::size_t level0_rank_ = 0;
  bool cone_ = false;
  RatMatrix binv_;
  Integer cden_ = 1;
  IntMatrix q_;
  IntMatrix gpp_;
  IntMatrix l6_;
};

inline std::vector<Root> level_zero(const Lattice& L, const IntVector& p, const IntVector& functional) {
  auto r2 = roots_in_hyperplane(L, p, 2);
  auto r6 = roots_in_hyperplane(L, p, 6);
  r2.insert(r2.end(), r6.begin(), r6.end());
  return simple_root_basis(L, r2, functional);
}

inline void check_base_point(const Lattice& L, const IntVector& p) {
  if (p.size() != L.rank()) throw invalid_input("base point has wrong length");
  if (L.sig.negative != 1) throw invalid_input("lattice is not hyperbolic");
  if (norm(L, p) >= 0) throw invalid_input("base point must have negative square");
}

/// Labels e1.. (e1p.. for the second block, and so on) for basis vectors
/// of A/D/E summands of rank >= 3, v1, v2, ... for the rest.  Level-0 v's
/// are numbered by summand, then 2-roots before 6-roots.
inline std::vector<std::string> generic_labels(const Lattice& L, const std::vector<AcceptedRoot>& acc) {
  std::vector<std::string> out(acc.size());
  std::vector<std::size_t> block_of(L.rank(), 0), ordinal(L.blocks.size(), 0);
  std::size_t big = 0;
  for (std::size_t b = 0; b < L.blocks.size(); ++b) {
    const auto& s = L.blocks[b].summand;
    for (std::size_t i = 0; i < L.blocks[b].size(); ++i) block_of[L.blocks[b].start + i] = b;
    if (s.kind != SummandKind::U && s.kind != SummandKind::Diag && s.n >= 3) ordinal[b] = ++big;
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const auto& v = acc[i].root.vec;
    std::size_t nz = 0, at = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        ++nz;
        at = j;
      }
    if (acc[i].level == 0 && nz == 1 && v[at] == 1 && !L.blocks.empty() && ordinal[block_of[at]] > 0) {
      const auto b = block_of[at];
      out[i] = "e" + std::to_string(at - L.blocks[b].start + 1) + std::string(ordinal[b] - 1, 'p');
    } else {
      rest.push_back(i);
    }
  }
  auto first_block = [&](const IntVector& v) {
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) return L.blocks.empty() ? j : block_of[j];
    return std::size_t(0);
  };
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    if (acc[a].level != acc[b].level) return acc[a].level < acc[b].level;
    if (acc[a].level != 0) return false;
    auto ba = first_block(acc[a].root.vec), bb = first_block(acc[b].root.vec);
    if (ba != bb) return ba < bb;
    return acc[a].root.norm < acc[b].root.norm;
  });
  for (std::size_t i = 0; i < rest.size(); ++i) out[rest[i]] = "v" + std::to_string(i + 1);
  return out;
}

}  // namespace detail

/// Candidates at level d given the walls accepted so far (the level-0 walls
/// among them define the search cone).
inline std::vector<Root> candidates_at_level(const Lattice& L, const IntVector& p, const Rational& d,
                                             const std::vector<Root>& accepted, EnumOptions opts = {}) {
  detail::check_base_point(L, p);
  if (d <= 0) throw invalid_input("level must be positive");
  std::vector<std::pair<int, Integer>> classes;
  for (int k : {2, 6}) {
    Rational msq = d * Rational(k, 2);
    if (boost::multiprecision::denominator(msq) != 1) continue;
    Integer n = boost::multiprecision::numerator(msq);
    Integer r = isqrt(n);
    if (r * r != n) continue;
    if (k == 6 && r % 3 != 0) continue;
    classes.push_back({k, r});
  }
  if (classes.empty()) throw invalid_input("level is not of the form 2m^2/k");
  std::vector<Root> level0;
  for (const auto& w : accepted)
    if (inner_product(L, p, w.vec) == 0) level0.push_back(w);
  detail::LevelSearch search(L, p, level0);
  Integer g = detail::content(L.gram * p);
  std::vector<Root> out;
  for (const auto& [k, m] : classes) {
    if (m % g != 0) continue;
    auto c = search.candidates(k, m, accepted, opts);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

inline TerminationReport check_termination(const VinbergRun& run, const CoxeterGraph& graph);

struct VinbergOptions {
  Rational max_level = 300;
  std::optional<IntVector> functional;
  EnumOptions enumeration;
  /// Called after each searched level with (level, roots added, total).
  std::function<void(const Rational&, std::size_t, std::size_t)> progress;
};

inline VinbergRun vinberg_run(const Lattice& L, const IntVector& p, const VinbergOptions& opts = {}) {
  detail::check_base_point(L, p);
  VinbergRun run;
  run.lattice = L;
  run.base_point = p;
  IntVector functional = opts.functional ? *opts.functional : preset_functional(L);
  for (auto& r : detail::level_zero(L, p, functional)) run.accepted.push_back({std::move(r), Rational(0)});
  std::vector<Root> level0 = run.roots();
  detail::LevelSearch search(L, p, level0);
  std::size_t rejections = 0;

  auto certify = [&]() {
    run.labels = detail::generic_labels(L, run.accepted);
    if (run.accepted.size() > 64) return false;
    CoxeterGraph g = build_coxeter_graph(L, run.roots(), run.labels);
    run.termination = check_termination(run, g);
    run.termination.level0_rank = search.level0_rank();
    run.termination.same_level_rejections = rejections;
    return run.termination.status == RunStatus::Terminated;
  };

  bool done = !run.accepted.empty() && certify();
  if (!done) {
    for (const auto& cls : detail::level_grid(L, p, opts.max_level)) {
      auto cands = search.candidates(cls.norm, cls.m, run.roots(), opts.enumeration);
      bool added = false;
      std::size_t found = 0;
      for (auto& c : cands) {
        bool ok = true;
        IntVector gc = L.gram * c.vec;
        for (const auto& a : run.accepted)
          if (a.level == cls.level && dot(gc, a.root.vec) > 0) ok = false;
        if (!ok) {
          ++rejections;
          continue;
        }
        run.accepted.push_back({std::move(c), cls.level});
        added = true;
        ++found;
      }
      if (opts.progress) opts.progress(cls.level, found, run.accepted.size());
      if (added && certify()) {
        done = true;
        break;
      }
    }
  }
  run.labels = detail::generic_labels(L, run.accepted);
  if (!done) {
    if (run.accepted.size() <= 64 && !run.accepted.empty()) {
      CoxeterGraph g = build_coxeter_graph(L, run.roots(), run.labels);
      run.termination = check_termination(run, g);
    }
    run.termination.status = RunStatus::Exhausted;
    run.termination.criterion = "none";
  }
  run.termination.max_level = opts.max_level;
  run.termination.level0_rank = search.level0_rank();
  run.termination.same_level_rejections = rejections;
  return run;
}

inline VinbergRun vinberg_run(const Lattice& L, const VinbergOptions& opts = {}) {
  return vinberg_run(L, default_base_point(L), opts);
}

inline TerminationReport check_termination(const VinbergRun& run, const CoxeterGraph& graph) {
  TerminationReport rep;
  const Lattice& L = run.lattice;
  const std::size_t N = L.rank();
  if (N < 2) return rep;
  const std::size_t n = N - 1;
  {
    IntMatrix span(run.accepted.size(), N);
    for (std::size_t i = 0; i < run.accepted.size(); ++i)
      for (std::size_t j = 0; j < N; ++j) span(i, j) = run.accepted[i].root.vec[j];
    rep.root_rank = run.accepted.empty() ? 0 : rank(span);
  }
  if (graph.size() == 0) return rep;
  SubdiagramIndex idx(graph);
  const auto& crit = idx.critical();
  rep.connected_parabolic = crit.parabolic.size();
  rep.lanner = crit.lanner.size() + crit.other.size();
  auto maxpar = idx.parabolic_of_rank(n - 1);
  for (auto m : maxpar) rep.maximal_parabolic.push_back(SubdiagramIndex::to_set(m));

  if (rep.root_rank == N && rep.lanner == 0) {
    bool covered = true;
    for (auto piece : crit.parabolic) {
      bool found = false;
      for (auto m : maxpar)
        if ((piece & m) == piece) found = true;
      if (!found) {
        covered = false;
        break;
      }
    }
    if (covered) {
      rep.status = RunStatus::Terminated;
      rep.criterion = "parabolic-cover";
      return rep;
    }
  }

  bool any = false, ok = true;
  idx.for_each_elliptic(n - 1, [&](SubdiagramIndex::Mask s) {
    any = true;
    ++rep.elliptic_checked;
    std::size_t ext = 0;
    for (std::size_t x = 0; x < graph.size() && ext <= 2; ++x)
      if (!(s >> x & 1) && idx.elliptic_with(s, x)) ++ext;
    for (auto m : maxpar)
      if ((s & m) == s) ++ext;
    if (ext != 2) ok = false;
    return ok;
  });
  if (any && ok) {
    rep.status = RunStatus::Terminated;
    rep.criterion = "extension-count";
  }
  return rep;
}

/// (elliptic sets of rank n, parabolic sets of rank n-1): the finite and
/// ideal vertices of a terminated run's polyhedron.
inline std::pair<std::size_t, std::size_t> face_census(const VinbergRun& run, const CoxeterGraph& graph) {
  if (run.termination.status != RunStatus::Terminated) throw invalid_input("run has not terminated");
  const std::size_t n = run.lattice.rank() - 1;
  SubdiagramIndex idx(graph);
  std::size_t finite = 0;
  idx.for_each_elliptic(n, [&](SubdiagramIndex::Mask) {
    ++finite;
    return true;
  });
  return {finite, idx.parabolic_of_rank(n - 1).size()};
}

}  // namespace chiralat
