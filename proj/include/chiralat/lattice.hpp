#pragma once
// Lattices given as orthogonal sums of standard summands, their Gram
// matrices, signatures, dual vectors and discriminant forms.

#include <cctype>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "arith.hpp"

namespace chiralat {

enum class SummandKind { U, A, D, E, Diag };

inline std::string_view kind_name(SummandKind k) {
  switch (k) {
    case SummandKind::U: return "U";
    case SummandKind::A: return "A";
    case SummandKind::D: return "D";
    case SummandKind::E: return "E";
    case SummandKind::Diag: return "diag";
  }
  return "?";
}

/// One orthogonal summand, optionally rescaled, negated and repeated.
struct Summand {
  SummandKind kind = SummandKind::U;
  int n = 0;                  // for A/D/E
  std::vector<long> entries;  // for diag
  long scale = 1;
  int sign = 1;
  int count = 1;

  bool operator==(const Summand&) const = default;

  std::size_t block_rank() const {
    switch (kind) {
      case SummandKind::U: return 2;
      case SummandKind::Diag: return entries.size();
      default: return static_cast<std::size_t>(n);
    }
  }
};

struct LatticeSpec {
  std::vector<Summand> summands;
  bool operator==(const LatticeSpec&) const = default;
};

inline void validate(const Summand& s) {
  switch (s.kind) {
    case SummandKind::A:
      if (s.n < 1) throw invalid_input("A_n requires n >= 1");
      break;
    case SummandKind::D:
      if (s.n < 2) throw invalid_input("D_n requires n >= 2");
      break;
    case SummandKind::E:
      if (s.n < 6 || s.n > 8) throw invalid_input("E_n requires n in {6,7,8}");
      break;
    case SummandKind::Diag:
      if (s.entries.empty()) throw invalid_input("diag summand needs entries");
      for (long e : s.entries)
        if (e == 0) throw invalid_input("diag entries must be non-zero");
      break;
    case SummandKind::U: break;
  }
  if (s.scale < 1) throw invalid_input("scale must be a positive integer");
  if (s.sign != 1 && s.sign != -1) throw invalid_input("sign must be +1 or -1");
  if (s.count < 1) throw invalid_input("count must be a positive integer");
}

inline void validate(const LatticeSpec& spec) {
  if (spec.summands.empty()) throw invalid_input("lattice spec has no summands");
  for (const auto& s : spec.summands) validate(s);
}

namespace detail {

// Bourbaki numbering: chain 1-3-4-5-6-7-8 with 2 attached to 4.
inline std::vector<std::pair<int, int>> e_edges(int n) {
  std::vector<std::pair<int, int>> all = {{1, 3}, {3, 4}, {2, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}};
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : all)
    if (a <= n && b <= n) out.emplace_back(a, b);
  return out;
}

inline IntMatrix cartan_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  IntMatrix g(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  for (auto [a, b] : edges) {
    g(a - 1, b - 1) = -1;
    g(b - 1, a - 1) = -1;
  }
  return g;
}

inline IntMatrix unscaled_block(const Summand& s) {
  switch (s.kind) {
    case SummandKind::U: return IntMatrix{{0, 1}, {1, 0}};
    case SummandKind::A: {
      std::vector<std::pair<int, int>> edges;
      for (int i = 1; i < s.n; ++i) edges.emplace_back(i, i + 1);
      return cartan_from_edges(s.n, edges);
    }
    case SummandKind::D: {
      std::vector<std::pair<int, int>> edges;
      for (int i = 1; i + 2 < s.n; ++i) edges.emplace_back(i, i + 1);
      if (s.n >= 3) {
        edges.emplace_back(s.n - 2, s.n - 1);
        edges.emplace_back(s.n - 2, s.n);
      }
      return cartan_from_edges(s.n, edges);
    }
    case SummandKind::E: return cartan_from_edges(s.n, e_edges(s.n));
    case SummandKind::Diag: {
      IntMatrix g(s.entries.size(), s.entries.size());
      for (std::size_t i = 0; i < s.entries.size(); ++i) g(i, i) = s.entries[i];
      return g;
    }
  }
  return {};
}

}  // namespace detail

/// Gram matrix of a single copy of the summand (scale and sign applied).
inline IntMatrix summand_gram(const Summand& s) {
  IntMatrix g = detail::unscaled_block(s);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= Integer(s.scale) * s.sign;
  return g;
}

struct SummandBlock {
  std::size_t start = 0;
  Summand summand;  // count == 1
  std::size_t size() const { return summand.block_rank(); }
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  bool operator==(const Signature&) const = default;
};

/// A non-degenerate integral lattice with its Gram matrix in a fixed basis.
struct Lattice {
  LatticeSpec spec;
  IntMatrix gram;
  std::vector<SummandBlock> blocks;
  Signature sig;

  std::size_t rank() const { return gram.rows(); }
  bool is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram(i, i) % 2 != 0) return false;
    return true;
  }
};

inline Signature signature(const IntMatrix& gram) {
  Inertia in = inertia(gram);
  if (in.zero != 0) throw invalid_input("degenerate Gram matrix");
  return {in.positive, in.negative};
}

inline Signature signature(const Lattice& L) { return signature(L.gram); }

inline Lattice lattice_from_gram(IntMatrix gram, LatticeSpec spec = {}) {
  if (gram.rows() != gram.cols() || gram.rows() == 0) throw invalid_input("Gram matrix must be square and non-empty");
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram(i, j) != gram(j, i)) throw invalid_input("Gram matrix must be symmetric");
  Lattice L;
  L.spec = std::move(spec);
  L.gram = std::move(gram);
  L.sig = signature(L.gram);
  return L;
}

inline void check_e8_convention();

inline Lattice build_lattice(const LatticeSpec& spec) {
  validate(spec);
  std::vector<SummandBlock> blocks;
  std::size_t rank = 0;
  for (const auto& s : spec.summands) {
    Summand one = s;
    one.count = 1;
    for (int c = 0; c < s.count; ++c) {
      blocks.push_back({rank, one});
      rank += one.block_rank();
    }
  }
  IntMatrix gram(rank, rank);
  for (const auto& b : blocks) {
    if (b.summand.kind == SummandKind::E && b.summand.n == 8) check_e8_convention();
    IntMatrix g = summand_gram(b.summand);
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) gram(b.start + i, b.start + j) = g(i, j);
  }
  Lattice L = lattice_from_gram(std::move(gram), spec);
  L.blocks = std::move(blocks);
  return L;
}

inline Integer inner_product(const Lattice& L, const IntVector& x, const IntVector& y) {
  if (x.size() != L.rank() || y.size() != L.rank()) throw invalid_input("vector length does not match lattice rank");
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0 && L.gram(i, j) != 0) s += x[i] * L.gram(i, j) * y[j];
  }
  return s;
}

inline Rational inner_product(const Lattice& L, const RatVector& x, const RatVector& y) {
  if (x.size() != L.rank() || y.size() != L.rank()) throw invalid_input("vector length does not match lattice rank");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0 && L.gram(i, j) != 0) s += x[i] * Rational(L.gram(i, j)) * y[j];
  }
  return s;
}

inline Integer norm(const Lattice& L, const IntVector& x) { return inner_product(L, x, x); }

/// G*x: the covector of x, i.e. the vector of products with the basis.
inline IntVector covector(const Lattice& L, const IntVector& x) { return L.gram * x; }

/// Dual of basis vector `index` inside summand block `block`, extended by
/// zero outside the block.
inline RatVector dual_basis_vector(const Lattice& L, std::size_t block, std::size_t index) {
  if (block >= L.blocks.size()) throw invalid_input("summand index out of range");
  const auto& b = L.blocks[block];
  if (index >= b.size()) throw invalid_input("basis index out of range");
  IntMatrix g = summand_gram(b.summand);
  auto inv = inverse(g);
  if (!inv) throw invalid_input("summand Gram is singular");
  RatVector out(L.rank(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) out[b.start + i] = (*inv)(i, index);
  return out;
}

inline void check_e8_convention() {
  static std::once_flag once;
  std::call_once(once, [] {
    Summand e8{SummandKind::E, 8, {}, 1, 1, 1};
    auto inv = inverse(detail::unscaled_block(e8));
    const long expected[8] = {2, 3, 4, 6, 5, 4, 3, 2};  // e8* in e1..e8
    for (std::size_t i = 0; i < 8; ++i)
      if ((*inv)(i, 7) != expected[i]) throw std::logic_error("E8 Gram convention does not reproduce e8*");
    if ((*inv)(7, 7) != 2 || (*inv)(0, 0) != 4) throw std::logic_error("E8 Gram convention: unexpected dual norms");
  });
}

// ---------------------------------------------------------------------------
// Discriminant group

/// discr L = L^* / L with generators from the Smith form of the Gram matrix.
///
/// Each generator is recorded as `multiplier * V[:,factor_index] / d` where
/// U G V = diag(d) is the Smith form; subgroups (primary parts) reuse the same
/// coordinate map with a different multiplier.
struct DiscriminantGroup {
  struct Generator {
    Integer order;
    RatVector lift;
    std::size_t factor_index = 0;
    Integer multiplier = 1;
  };

  std::vector<Generator> generators;
  IntMatrix gram;
  IntMatrix snf_u;
  std::vector<Integer> snf_diag;
  bool even = false;

  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (const auto& g : generators) out.push_back(g.order);
    return out;
  }

  Integer order() const {
    Integer o = 1;
    for (const auto& g : generators) o *= g.order;
    return o;
  }

  /// Coordinates of the class of a dual vector x, one residue per generator.
  std::vector<Integer> coordinates(const RatVector& x) const {
    RatVector y = to_rational(gram) * x;
    auto yi = to_integer(y);
    if (!yi) throw invalid_input("vector is not in the dual lattice");
    IntVector z = snf_u * *yi;
    std::vector<Integer> out;
    for (const auto& g : generators) {
      const Integer& d = snf_diag[g.factor_index];
      Integer c = mod_floor(z[g.factor_index], d);
      if (c % g.multiplier != 0) throw invalid_input("class is not in this subgroup");
      out.push_back(mod_floor(c / g.multiplier, g.order));
    }
    return out;
  }

  /// True if x is in the lattice.
  bool is_trivial_class(const RatVector& x) const { return static_cast<bool>(to_integer(x)); }

  RatVector lift(const std::vector<Integer>& coeffs) const {
    if (coeffs.size() != generators.size()) throw invalid_input("coefficient count mismatch");
    RatVector x(gram.rows(), Rational(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += Rational(coeffs[i]) * generators[i].lift[j];
    return x;
  }

  /// Finite quadratic form value in Q/2Z, reduced into [0, 2).
  Rational q(const RatVector& x) const {
    if (!even) throw invalid_input("quadratic form is defined only for even lattices");
    Rational v = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        if (x[i] != 0 && x[j] != 0) v += x[i] * Rational(gram(i, j)) * x[j];
    return reduce_mod(v, 2);
  }

  Rational q_of(const std::vector<Integer>& coeffs) const { return q(lift(coeffs)); }

  static Rational reduce_mod(const Rational& v, long m) {
    Integer num = boost::multiprecision::numerator(v);
    Integer den = boost::multiprecision::denominator(v);
    Integer md = den * m;
    return Rational(mod_floor(num, md), den);
  }
};

inline DiscriminantGroup discriminant_group(const IntMatrix& gram) {
  if (determinant(gram) == 0) throw invalid_input("degenerate Gram matrix");
  SmithForm s = smith_normal_form(gram);
  DiscriminantGroup D;
  D.gram = gram;
  D.snf_u = s.u;
  const std::size_t n = gram.rows();
  for (std::size_t i = 0; i < n; ++i) D.snf_diag.push_back(s.d(i, i));
  D.even = true;
  for (std::size_t i = 0; i < n; ++i)
    if (gram(i, i) % 2 != 0) D.even = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& d = D.snf_diag[i];
    if (d == 1) continue;
    RatVector lift(n);
    for (std::size_t r = 0; r < n; ++r) lift[r] = Rational(s.v(r, i), d);
    D.generators.push_back({d, std::move(lift), i, 1});
  }
  return D;
}

inline DiscriminantGroup discriminant_group(const Lattice& L) { return discriminant_group(L.gram); }

/// Subgroup of classes whose order is a power of `prime`.
inline DiscriminantGroup primary_part(const DiscriminantGroup& D, long prime) {
  if (prime < 2) throw invalid_input("prime must be >= 2");
  DiscriminantGroup P = D;
  P.generators.clear();
  for (const auto& g : D.generators) {
    Integer pp = 1;
    Integer rest = g.order;
    while (rest % prime == 0) {
      rest /= prime;
      pp *= prime;
    }
    if (pp == 1) continue;
    DiscriminantGroup::Generator h = g;
    h.order = pp;
    h.multiplier = g.multiplier * rest;
    for (auto& x : h.lift) x *= Rational(rest);
    P.generators.push_back(std::move(h));
  }
  return P;
}

// ---------------------------------------------------------------------------
// Spec parsing and formatting

namespace detail {

inline Summand make(SummandKind k, int n = 0) {
  Summand s;
  s.kind = k;
  s.n = n;
  return s;
}

}  // namespace detail

/// Parses the compact notation used in lattice tables, e.g. "U+A2+2E8",
/// "-A1+<6>+3A1", "U(2)+E6(2)".  "-A1" and "<6>" become diag summands.
inline LatticeSpec parse_lattice_expression(std::string_view text) {
  LatticeSpec spec;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&]() -> long {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw invalid_input("expected a number in lattice expression '" + std::string(text) + "'");
    return std::stol(std::string(text.substr(start, i - start)));
  };
  bool first = true;
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+') {
      if (first) throw invalid_input("leading '+' in lattice expression");
      ++i;
    } else if (text[i] == '-') {
      sign = -1;
      ++i;
    } else if (!first) {
      throw invalid_input("expected '+' or '-' in lattice expression '" + std::string(text) + "'");
    }
    first = false;
    skip_ws();
    int count = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) count = static_cast<int>(read_int());
    if (i >= text.size()) throw invalid_input("truncated lattice expression");
    Summand s;
    const char c = text[i];
    if (c == 'U') {
      ++i;
      s = detail::make(SummandKind::U);
    } else if (c == 'A' || c == 'D' || c == 'E') {
      ++i;
      const int n = static_cast<int>(read_int());
      s = detail::make(c == 'A' ? SummandKind::A : c == 'D' ? SummandKind::D : SummandKind::E, n);
    } else if (c == '<') {
      ++i;
      s = detail::make(SummandKind::Diag);
      while (true) {
        skip_ws();
        long v_sign = 1;
        if (i < text.size() && text[i] == '-') {
          v_sign = -1;
          ++i;
        }
        s.entries.push_back(v_sign * read_int());
        skip_ws();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == '>') {
          ++i;
          break;
        }
        throw invalid_input("unterminated <...> in lattice expression");
      }
    } else {
      throw invalid_input(std::string("unknown summand kind '") + c + "'");
    }
    if (i < text.size() && text[i] == '(') {
      ++i;
      s.scale = read_int();
      if (i >= text.size() || text[i] != ')') throw invalid_input("expected ')' in lattice expression");
      ++i;
    }
    s.count = count;
    if (sign < 0) {
      if (s.kind == SummandKind::A && s.n == 1) {
        // -A1 is the rank-one lattice <-2>.
        s = Summand{SummandKind::Diag, 0, {-2 * s.scale}, 1, 1, count};
      } else {
        s.sign = -1;
      }
    }
    validate(s);
    spec.summands.push_back(std::move(s));
  }
  validate(spec);
  return spec;
}

inline std::string to_string(const Summand& s) {
  std::string body;
  switch (s.kind) {
    case SummandKind::U: body = "U"; break;
    case SummandKind::A: body = "A" + std::to_string(s.n); break;
    case SummandKind::D: body = "D" + std::to_string(s.n); break;
    case SummandKind::E: body = "E" + std::to_string(s.n); break;
    case SummandKind::Diag:
      if (s.entries.size() == 1 && s.entries[0] == -2 && s.scale == 1 && s.sign == 1) {
        body = "-A1";
      } else {
        body = "<";
        for (std::size_t i = 0; i < s.entries.size(); ++i) body += (i ? "," : "") + std::to_string(s.entries[i]);
        body += ">";
      }
      break;
  }
  if (s.scale != 1) body += "(" + std::to_string(s.scale) + ")";
  std::string prefix = s.sign < 0 ? "-" : "";
  if (s.count != 1) {
    if (body[0] == '-') {
      prefix = "-";
      body = body.substr(1);
    }
    prefix += std::to_string(s.count);
  }
  return prefix + body;
}

inline std::string to_string(const LatticeSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.summands.size(); ++i) {
    std::string t = to_string(spec.summands[i]);
    if (i > 0 && t[0] != '-') out += "+";
    out += t;
  }
  return out;
}

using nlohmann::ordered_json;

inline ordered_json to_json(const Summand& s) {
  ordered_json j;
  j["kind"] = std::string(kind_name(s.kind));
  if (s.kind == SummandKind::A || s.kind == SummandKind::D || s.kind == SummandKind::E) j["n"] = s.n;
  if (s.kind == SummandKind::Diag) j["entries"] = s.entries;
  if (s.scale != 1) j["scale"] = s.scale;
  if (s.sign != 1) j["sign"] = s.sign;
  if (s.count != 1) j["count"] = s.count;
  return j;
}

inline ordered_json to_json(const LatticeSpec& spec) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : spec.summands) arr.push_back(to_json(s));
  return arr;
}

inline Summand summand_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw invalid_input("summand must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const char* allowed[] = {"kind", "n", "entries", "scale", "sign", "count"};
    if (std::find_if(std::begin(allowed), std::end(allowed), [&](const char* k) { return it.key() == k; }) ==
        std::end(allowed))
      throw invalid_input("unknown key '" + it.key() + "' in summand");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) throw invalid_input("summand needs a string 'kind'");
  const std::string kind = j["kind"];
  Summand s;
  if (kind == "U")
    s.kind = SummandKind::U;
  else if (kind == "A")
    s.kind = SummandKind::A;
  else if (kind == "D")
    s.kind = SummandKind::D;
  else if (kind == "E")
    s.kind = SummandKind::E;
  else if (kind == "diag")
    s.kind = SummandKind::Diag;
  else
    throw invalid_input("unknown summand kind '" + kind + "'");
  auto get_int = [&](const char* key, long dflt) -> long {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number_integer()) throw invalid_input(std::string("'") + key + "' must be an integer");
    return j[key].get<long>();
  };
  s.n = static_cast<int>(get_int("n", 0));
  if ((s.kind == SummandKind::A || s.kind == SummandKind::D || s.kind == SummandKind::E) && !j.contains("n"))
    throw invalid_input("A/D/E summand needs 'n'");
  if (s.kind == SummandKind::Diag) {
    if (!j.contains("entries") || !j["entries"].is_array()) throw invalid_input("diag summand needs 'entries'");
    for (const auto& e : j["entries"]) {
      if (!e.is_number_integer()) throw invalid_input("diag entries must be integers");
      s.entries.push_back(e.get<long>());
    }
  }
  s.scale = get_int("scale", 1);
  s.sign = static_cast<int>(get_int("sign", 1));
  s.count = static_cast<int>(get_int("count", 1));
  validate(s);
  return s;
}

inline LatticeSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw invalid_input("lattice spec must be a JSON array");
  LatticeSpec spec;
  for (const auto& s : j) spec.summands.push_back(summand_from_json(s));
  validate(spec);
  return spec;
}

/// Parses a JSON spec document.
inline LatticeSpec parse_lattice_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw invalid_input(std::string("malformed lattice spec: ") + e.what());
  }
  return spec_from_json(j);
}

}  // namespace chiralat
