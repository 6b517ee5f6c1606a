#pragma once
// 2-roots and 6-roots: recognition, enumeration in negative-definite
// complements, and extraction of simple systems.

#include "enumerate.hpp"
#include "lattice.hpp"

namespace chiralat {

/// A lattice vector together with its norm (2 or 6).
struct Root {
  IntVector vec;
  int norm = 2;
  bool operator==(const Root&) const = default;
};

/// 2 for v^2 = 2; 6 for v^2 = 6 with every product v.e_i divisible by 3.
inline std::optional<int> root_norm_of(const Lattice& L, const IntVector& v) {
  if (v.size() != L.rank()) return std::nullopt;
  IntVector gv = L.gram * v;
  Integer n = dot(gv, v);
  if (n == 2) return 2;
  if (n == 6) {
    for (const auto& x : gv)
      if (x % 3 != 0) return std::nullopt;
    return 6;
  }
  return std::nullopt;
}

/// Columns form a basis of {v : G v = 0 mod 3}.
inline IntMatrix six_root_sublattice(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  IntMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = gram(i, j);
    a(i, n + i) = -3;
  }
  IntMatrix k = integer_kernel(a);
  IntMatrix gens(k.cols(), n);
  for (std::size_t c = 0; c < k.cols(); ++c)
    for (std::size_t r = 0; r < n; ++r) gens(c, r) = k(r, c);
  return row_basis(gens).transpose();
}

/// All k-roots orthogonal to p, in ascending lexicographic order.
inline std::vector<Root> roots_in_hyperplane(const Lattice& L, const IntVector& p, int k) {
  if (k != 2 && k != 6) throw invalid_input("root norm must be 2 or 6");
  if (p.size() != L.rank()) throw invalid_input("base point has wrong length");
  if (norm(L, p) >= 0) throw invalid_input("base point must have negative square");
  const std::size_t n = L.rank();
  IntMatrix ambient = k == 6 ? six_root_sublattice(L.gram) : IntMatrix::identity(n);
  IntVector gp = L.gram * p;
  IntMatrix row(1, ambient.cols());
  for (std::size_t c = 0; c < ambient.cols(); ++c) {
    Integer s = 0;
    for (std::size_t r = 0; r < n; ++r) s += gp[r] * ambient(r, c);
    row(0, c) = s;
  }
  IntMatrix basis = ambient * integer_kernel(row);
  std::vector<Root> out;
  if (basis.cols() == 0) return out;
  IntMatrix h = basis.transpose() * L.gram * basis;
  for (const auto& c : enumerate_short_vectors(h, k)) {
    IntVector v = basis * c;
    if (root_norm_of(L, v) == k) out.push_back({std::move(v), k});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return a.vec < b.vec; });
  return out;
}

/// (1, N, N^2, ...) with N exceeding every coordinate in absolute value.
inline IntVector generic_functional(const std::vector<Root>& roots, std::size_t rank) {
  Integer big = 0;
  for (const auto& r : roots)
    for (const auto& x : r.vec) big = std::max(big, abs(x));
  big += 1;
  IntVector c(rank);
  Integer pw = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    c[i] = pw;
    pw *= big;
  }
  return c;
}

/// Per-summand covector: U -> (-1,0), A2 -> (-4,-1), every other basis
/// vector -> -1.
inline IntVector preset_functional(const Lattice& L) {
  IntVector c(L.rank(), Integer(-1));
  for (const auto& b : L.blocks) {
    const auto& s = b.summand;
    if (s.kind == SummandKind::U) {
      c[b.start] = -1;
      c[b.start + 1] = 0;
    } else if (s.kind == SummandKind::A && s.n == 2) {
      c[b.start] = -4;
      c[b.start + 1] = -1;
    }
  }
  return c;
}

/// Simple roots of the finite root system `roots` for the chamber on which
/// the coordinate functional is negative.  If the functional vanishes on a
/// root, the generic functional is used instead.
inline std::vector<Root> simple_root_basis(const Lattice& L, const std::vector<Root>& roots, IntVector functional) {
  if (roots.empty()) return {};
  if (functional.size() != L.rank()) throw invalid_input("functional has wrong length");
  auto vanishes = [&](const IntVector& c) {
    for (const auto& r : roots)
      if (dot(c, r.vec) == 0) return true;
    return false;
  };
  if (vanishes(functional)) {
    functional = generic_functional(roots, L.rank());
    if (vanishes(functional)) throw invalid_input("could not find a regular functional");
  }
  std::vector<Root> pos;
  for (const auto& r : roots)
    if (dot(functional, r.vec) < 0) pos.push_back(r);
  std::vector<IntVector> cov;
  for (const auto& r : pos) cov.push_back(L.gram * r.vec);
  std::vector<Root> simple;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    bool decomposable = false;
    for (std::size_t j = 0; j < pos.size() && !decomposable; ++j) {
      if (i == j) continue;
      Integer vw = dot(cov[j], pos[i].vec);
      if (vw <= 0) continue;
      // R_w(v) = v - (2 vw / w^2) w
      Integer coef = 2 * vw / pos[j].norm;
      IntVector img = pos[i].vec - coef * pos[j].vec;
      if (dot(functional, img) < 0) decomposable = true;
    }
    if (!decomposable) simple.push_back(pos[i]);
  }
  std::sort(simple.begin(), simple.end(), [](const Root& a, const Root& b) { return a.vec < b.vec; });
  return simple;
}

}  // namespace chiralat
