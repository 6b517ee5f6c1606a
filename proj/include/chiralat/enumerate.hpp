#pragma once
// Exact enumeration of lattice vectors of a given norm under a positive
// definite form, with linear side constraints pushed into the search.
//
// The search assigns coordinates one at a time.  At depth t the partial
// vector must admit a real completion, which is decided exactly with the
// Schur complement of the form onto the assigned coordinates (scaled to an
// integer matrix).  When every coordinate is sign-constrained to be
// non-negative and the form has non-negative entries, the partial form value
// is itself a lower bound and is used as a second prune.

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <thread>

#include "arith.hpp"

namespace chiralat {

enum class Relation { Eq, Le };

/// normal . v == value, or normal . v <= value (plain coordinate dot product).
struct EnumConstraint {
  IntVector normal;
  Relation relation = Relation::Le;
  Integer value = 0;
};

struct EnumOptions {
  /// Worker count; 0 means "read CHIRALAT_THREADS, default 1".
  std::size_t threads = 0;
};

inline std::size_t configured_threads() {
  if (const char* env = std::getenv("CHIRALAT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

namespace detail {

inline std::uint64_t isqrt_u64(std::uint64_t n) {
  if (n < 2) return n;
  std::uint64_t x = n, y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

template <class Int>
Int int_sqrt(const Int& n) {
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    return static_cast<std::int64_t>(isqrt_u64(static_cast<std::uint64_t>(n)));
  } else {
    return isqrt(n);
  }
}

template <class Int>
Int fdiv(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

template <class Int>
Int cdiv(const Int& a, const Int& b) {
  return -fdiv<Int>(-a, b);
}

template <class Int>
Int convert(const Integer& x) {
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    return x.convert_to<std::int64_t>();
  } else {
    return x;
  }
}

/// Problem data after permuting coordinates into search order.
struct Prepared {
  std::size_t n = 0;
  std::vector<std::size_t> order;  // search position -> original coordinate
  IntMatrix gram;                  // permuted
  Integer target;
  std::vector<IntMatrix> schur;  // schur[t]: (t+1)x(t+1), scaled
  std::vector<Integer> schur_scale;
  std::vector<Integer> lower, upper;  // per position, from sign constraints
  std::vector<bool> has_lower, has_upper;
  bool monotone = false;
  struct Cons {
    IntVector normal;  // permuted
    Relation relation;
    Integer value;
    std::size_t complete_depth;  // position at which support is fully assigned
    std::size_t partial_from;    // first position from which partial checks are valid (n = never)
  };
  std::vector<Cons> cons;
};

template <class Int>
struct Kernel {
  std::size_t n;
  std::vector<std::vector<Int>> schur;  // flattened (t+1)^2
  std::vector<Int> scaled_target;
  std::vector<Int> gram;  // n*n
  Int target;
  std::vector<Int> lower, upper;
  std::vector<char> has_lower, has_upper;
  bool monotone;
  struct Cons {
    std::vector<Int> normal;
    Relation relation;
    Int value;
    std::size_t complete_depth;
    std::size_t partial_from;
  };
  std::vector<Cons> cons;
  std::vector<std::vector<std::size_t>> cons_at_depth;       // complete at depth
  std::vector<std::vector<std::size_t>> partial_at_depth;    // partial check valid at depth

  explicit Kernel(const Prepared& p) : n(p.n), monotone(p.monotone) {
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t m = t + 1;
      std::vector<Int> s(m * m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s[i * m + j] = convert<Int>(p.schur[t](i, j));
      schur.push_back(std::move(s));
      scaled_target.push_back(convert<Int>(p.schur_scale[t] * p.target));
    }
    gram.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram[i * n + j] = convert<Int>(p.gram(i, j));
    target = convert<Int>(p.target);
    for (std::size_t i = 0; i < n; ++i) {
      lower.push_back(convert<Int>(p.lower[i]));
      upper.push_back(convert<Int>(p.upper[i]));
      has_lower.push_back(p.has_lower[i]);
      has_upper.push_back(p.has_upper[i]);
    }
    cons_at_depth.resize(n);
    partial_at_depth.resize(n);
    for (std::size_t c = 0; c < p.cons.size(); ++c) {
      Cons k;
      for (const auto& x : p.cons[c].normal) k.normal.push_back(convert<Int>(x));
      k.relation = p.cons[c].relation;
      k.value = convert<Int>(p.cons[c].value);
      k.complete_depth = p.cons[c].complete_depth;
      k.partial_from = p.cons[c].partial_from;
      cons_at_depth[k.complete_depth].push_back(c);
      for (std::size_t d = k.partial_from; d < k.complete_depth; ++d) partial_at_depth[d].push_back(c);
      cons.push_back(std::move(k));
    }
  }

  // Range of admissible values for coordinate t given y[0..t-1].
  bool range(const std::vector<Int>& y, std::size_t t, Int& lo, Int& hi) const {
    const std::size_t m = t + 1;
    const auto& s = schur[t];
    const Int a = s[t * m + t];
    Int b = 0, c = 0;
    for (std::size_t j = 0; j < t; ++j) {
      if (y[j] == 0) continue;
      b += s[t * m + j] * y[j];
      Int row = 0;
      for (std::size_t l = 0; l < t; ++l)
        if (y[l] != 0) row += s[j * m + l] * y[l];
      c += y[j] * row;
    }
    Int disc = b * b - a * (c - scaled_target[t]);
    if (disc < 0) return false;
    Int r = int_sqrt<Int>(disc);
    lo = cdiv<Int>(-b - r, a);
    hi = fdiv<Int>(-b + r, a);
    if (monotone) {
      const Int ga = gram[t * n + t];
      Int gb = 0, gc = 0;
      for (std::size_t j = 0; j < t; ++j) {
        if (y[j] == 0) continue;
        gb += gram[t * n + j] * y[j];
        Int row = 0;
        for (std::size_t l = 0; l < t; ++l)
          if (y[l] != 0) row += gram[j * n + l] * y[l];
        gc += y[j] * row;
      }
      Int gdisc = gb * gb - ga * (gc - target);
      if (gdisc < 0) return false;
      Int gr = int_sqrt<Int>(gdisc);
      Int ghi = fdiv<Int>(-gb + gr, ga);
      if (ghi < hi) hi = ghi;
    }
    if (has_lower[t] && lower[t] > lo) lo = lower[t];
    if (has_upper[t] && upper[t] < hi) hi = upper[t];
    return lo <= hi;
  }

  bool constraints_ok(const std::vector<Int>& y, std::size_t t) const {
    for (std::size_t c : cons_at_depth[t]) {
      const auto& k = cons[c];
      Int s = 0;
      for (std::size_t j = 0; j <= t; ++j)
        if (k.normal[j] != 0 && y[j] != 0) s += k.normal[j] * y[j];
      if (k.relation == Relation::Eq ? s != k.value : s > k.value) return false;
    }
    for (std::size_t c : partial_at_depth[t]) {
      const auto& k = cons[c];
      Int s = 0;
      for (std::size_t j = 0; j <= t; ++j)
        if (k.normal[j] != 0 && y[j] != 0) s += k.normal[j] * y[j];
      if (s > k.value) return false;
    }
    return true;
  }

  Int form(const std::vector<Int>& y) const {
    Int q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (y[i] == 0) continue;
      Int row = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (y[j] != 0) row += gram[i * n + j] * y[j];
      q += y[i] * row;
    }
    return q;
  }

  void dfs(std::vector<Int>& y, std::size_t t, std::vector<std::vector<Int>>& out) const {
    Int lo, hi;
    if (!range(y, t, lo, hi)) return;
    for (Int v = lo; v <= hi; ++v) {
      y[t] = v;
      if (!constraints_ok(y, t)) continue;
      if (t + 1 == n) {
        if (form(y) == target) out.push_back(y);
      } else {
        dfs(y, t + 1, out);
      }
    }
    y[t] = 0;
  }

  std::vector<std::vector<Int>> run(std::size_t threads) const {
    std::vector<Int> y(n, 0);
    Int lo, hi;
    if (!range(y, 0, lo, hi)) return {};
    std::vector<Int> firsts;
    for (Int v = lo; v <= hi; ++v) firsts.push_back(v);
    threads = std::max<std::size_t>(1, std::min(threads, firsts.size()));
    std::vector<std::vector<std::vector<Int>>> parts(threads);
    auto work = [&](std::size_t w) {
      std::vector<Int> yy(n, 0);
      for (std::size_t i = w; i < firsts.size(); i += threads) {
        yy[0] = firsts[i];
        if (!constraints_ok(yy, 0)) continue;
        if (n == 1) {
          if (form(yy) == target) parts[w].push_back(yy);
        } else {
          dfs(yy, 1, parts[w]);
        }
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    std::vector<std::vector<Int>> all;
    for (auto& p : parts)
      for (auto& v : p) all.push_back(std::move(v));
    return all;
  }
};

inline Integer abs_max(const IntMatrix& m) {
  Integer best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) best = std::max(best, abs(m(i, j)));
  return best;
}

}  // namespace detail

/// All integer v with v^T G v == target satisfying every constraint, in
/// ascending lexicographic order.  G must be positive definite.
inline std::vector<IntVector> enumerate_short_vectors(const IntMatrix& G, const Integer& target,
                                                      const std::vector<EnumConstraint>& constraints = {},
                                                      EnumOptions opts = {}) {
  const std::size_t n = G.rows();
  if (n == 0 || G.cols() != n) throw invalid_input("Gram matrix must be square and non-empty");
  {
    Inertia in = inertia(G);
    if (in.positive != n) throw invalid_input("Gram matrix is not positive definite");
  }
  for (const auto& c : constraints)
    if (c.normal.size() != n) throw invalid_input("constraint normal has wrong length");
  if (target < 0) return {};

  auto satisfies = [&](const IntVector& v) {
    for (const auto& c : constraints) {
      Integer s = dot(c.normal, v);
      if (c.relation == Relation::Eq ? s != c.value : s > c.value) return false;
    }
    return true;
  };
  if (target == 0) {
    IntVector zero(n, 0);
    if (satisfies(zero)) return {zero};
    return {};
  }

  detail::Prepared p;
  p.n = n;
  p.target = target;

  // Sign constraints: normal = -e_j (y_j >= -value) or +e_j (y_j <= value).
  std::vector<bool> is_sign(constraints.size(), false);
  std::vector<std::optional<Integer>> lower(n), upper(n);
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    const auto& k = constraints[c];
    if (k.relation != Relation::Le) continue;
    std::size_t nz = 0, at = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (k.normal[j] != 0) {
        ++nz;
        at = j;
      }
    if (nz != 1 || abs(k.normal[at]) != 1) continue;
    is_sign[c] = true;
    if (k.normal[at] < 0) {
      Integer lb = -k.value;
      if (!lower[at] || *lower[at] < lb) lower[at] = lb;
    } else {
      if (!upper[at] || *upper[at] > k.value) upper[at] = k.value;
    }
  }

  // Search order: coordinates touched by more constraints go first.
  std::vector<std::size_t> touch(n, 0);
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    if (is_sign[c]) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (constraints[c].normal[j] != 0) ++touch[j];
  }
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), 0);
  std::stable_sort(p.order.begin(), p.order.end(), [&](std::size_t a, std::size_t b) { return touch[a] > touch[b]; });

  p.gram = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.gram(i, j) = G(p.order[i], p.order[j]);

  auto ginv = inverse(p.gram);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t m = t + 1;
    RatMatrix sub(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) sub(i, j) = (*ginv)(i, j);
    RatMatrix s = *inverse(sub);
    Integer den = common_denominator(s);
    IntMatrix si(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        si(i, j) = boost::multiprecision::numerator(s(i, j) * Rational(den));
    p.schur.push_back(std::move(si));
    p.schur_scale.push_back(den);
  }

  p.lower.assign(n, 0);
  p.upper.assign(n, 0);
  p.has_lower.assign(n, false);
  p.has_upper.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t o = p.order[i];
    if (lower[o]) {
      p.lower[i] = *lower[o];
      p.has_lower[i] = true;
    }
    if (upper[o]) {
      p.upper[i] = *upper[o];
      p.has_upper[i] = true;
    }
  }
  bool all_nonneg = true;
  for (std::size_t i = 0; i < n; ++i)
    if (!p.has_lower[i] || p.lower[i] < 0) all_nonneg = false;
  bool gram_nonneg = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.gram(i, j) < 0) gram_nonneg = false;
  p.monotone = all_nonneg && gram_nonneg;

  for (std::size_t c = 0; c < constraints.size(); ++c) {
    if (is_sign[c]) continue;
    detail::Prepared::Cons k;
    k.normal.resize(n);
    for (std::size_t i = 0; i < n; ++i) k.normal[i] = constraints[c].normal[p.order[i]];
    k.relation = constraints[c].relation;
    k.value = constraints[c].value;
    k.complete_depth = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (k.normal[i] != 0) k.complete_depth = i;
    // A <= constraint can be checked on a prefix once every remaining term
    // is known to be non-negative.
    k.partial_from = n;
    if (k.relation == Relation::Le) {
      std::size_t from = k.complete_depth;
      while (from > 0) {
        const std::size_t j = from;  // position that would still be unassigned
        const bool nonneg_term = (k.normal[j] == 0) || (k.normal[j] > 0 && p.has_lower[j] && p.lower[j] >= 0) ||
                                 (k.normal[j] < 0 && p.has_upper[j] && p.upper[j] <= 0);
        if (!nonneg_term) break;
        --from;
      }
      k.partial_from = from;
    }
    p.cons.push_back(std::move(k));
  }

  // Magnitude bounds decide whether 64-bit arithmetic is safe.
  std::vector<Integer> coord_bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational b2 = (*ginv)(i, i) * Rational(target);
    coord_bound[i] = isqrt(boost::multiprecision::numerator(b2) / boost::multiprecision::denominator(b2)) + 1;
    if (p.has_lower[i]) coord_bound[i] = std::max(coord_bound[i], abs(p.lower[i]));
    if (p.has_upper[i]) coord_bound[i] = std::max(coord_bound[i], abs(p.upper[i]));
  }
  Integer ymax = 0;
  for (const auto& b : coord_bound) ymax = std::max(ymax, b);
  Integer worst = 0;
  for (std::size_t t = 0; t < n; ++t) {
    Integer e = detail::abs_max(p.schur[t]) * Integer(n) * ymax;
    worst = std::max(worst, e * e * Integer(n) * Integer(n) + abs(p.schur_scale[t] * target) * detail::abs_max(p.schur[t]));
  }
  {
    Integer e = detail::abs_max(p.gram) * Integer(n) * ymax;
    worst = std::max(worst, e * e * Integer(n) * Integer(n) + abs(target) * detail::abs_max(p.gram));
  }
  for (const auto& k : p.cons) {
    Integer s = abs(k.value);
    for (const auto& x : k.normal) s += abs(x) * ymax;
    worst = std::max(worst, s);
  }
  const std::size_t threads = opts.threads ? opts.threads : configured_threads();

  std::vector<IntVector> result;
  auto unpermute = [&](const auto& y) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[p.order[i]] = Integer(y[i]);
    return v;
  };
  if (worst < (Integer(1) << 62)) {
    detail::Kernel<std::int64_t> k(p);
    for (const auto& y : k.run(threads)) result.push_back(unpermute(y));
  } else {
    detail::Kernel<Integer> k(p);
    for (const auto& y : k.run(threads)) result.push_back(unpermute(y));
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace chiralat
