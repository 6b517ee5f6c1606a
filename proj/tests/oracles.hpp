#pragma once
// Independent reference implementations used only by the tests.  They are
// deliberately naive: brute force over boxes, cofactor expansion, etc.

#include <functional>
#include <random>

#include "chiralat/chiralat.hpp"

namespace oracle {

using namespace chiralat;

/// Laplace expansion along the first row.
inline Integer det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, cc = 0; k < n; ++k)
        if (k != c) minor(r - 1, cc++) = m(r, k);
    Integer t = m(0, c) * det(minor);
    s += (c % 2 == 0) ? t : Integer(-t);
  }
  return s;
}

/// Positive definite by Sylvester's criterion.
inline bool positive_definite(const IntMatrix& m) {
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    IntMatrix lead(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) lead(r, c) = m(r, c);
    if (det(lead) <= 0) return false;
  }
  return true;
}

/// Every vector in [-b, b]^n with v^T G v == target, lexicographic order.
inline std::vector<IntVector> box_search(const IntMatrix& G, long target, long b) {
  const std::size_t n = G.rows();
  std::vector<IntVector> out;
  IntVector v(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (dot(G * v, v) == target) out.push_back(v);
      return;
    }
    for (long x = -b; x <= b; ++x) {
      v[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// Box half-width guaranteeing completeness: |v_i| <= sqrt(target * (G^-1)_ii).
inline long box_bound(const IntMatrix& G, long target) {
  auto inv = *inverse(G);
  Rational best = 0;
  for (std::size_t i = 0; i < G.rows(); ++i) best = std::max(best, inv(i, i));
  Rational t = best * target;
  long b = 0;
  while (Rational(b * b) < t) ++b;
  return b;
}

/// Random positive definite integer matrix of rank n: A^T A + D.
inline IntMatrix random_pd(std::mt19937& rng, std::size_t n, int spread = 2) {
  std::uniform_int_distribution<int> d(-spread, spread);
  IntMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = d(rng);
  IntMatrix g = a.transpose() * a;
  for (std::size_t i = 0; i < n; ++i) g(i, i) += 1;
  return g;
}

/// Coordinates of the Bourbaki-labelled E8 Cartan matrix, built from the
/// edge list e1-e3-e4-e5-e6-e7-e8 with e2 on e4.
inline IntMatrix e8_cartan() {
  IntMatrix c(8, 8);
  for (std::size_t i = 0; i < 8; ++i) c(i, i) = 2;
  const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {2, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}};
  for (auto [a, b] : edges) c(a - 1, b - 1) = c(b - 1, a - 1) = -1;
  return c;
}

/// Reflection in a root computed from the rational formula, independent of
/// reflection_matrix.
inline RatMatrix rational_reflection(const IntMatrix& gram, const IntVector& v) {
  const std::size_t n = gram.rows();
  RatMatrix m = RatMatrix::identity(n);
  Rational vv = dot(gram * v, v);
  IntVector gv = gram * v;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) -= Rational(2) * Rational(gv[c]) / vv * Rational(v[r]);
  return m;
}

}  // namespace oracle
