#pragma once
// Exact integer/rational linear algebra used throughout the library.
//
// Everything here works on arbitrary-precision values; no floating point.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace chiralat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Raised when an operation receives structurally invalid input.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw invalid_input("ragged matrix literal");
      for (long x : row) data_.emplace_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_col(std::size_t c, const std::vector<T>& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw invalid_input("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw invalid_input("matrix-vector dimension mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a(i, k) != 0 && v[k] != 0) out[i] += a(i, k) * v[k];
    return out;
  }

  friend Matrix operator-(const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x = -x;
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline Integer isqrt(const Integer& n) {
  if (n < 0) throw invalid_input("isqrt of negative value");
  return boost::multiprecision::sqrt(n);
}

/// floor(a / b) for b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

/// Non-negative remainder.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
inline std::tuple<Integer, Integer, Integer> ext_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw invalid_input("dot product dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw invalid_input("vector sum dimension mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw invalid_input("vector difference dimension mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline IntVector operator-(const IntVector& a) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

inline IntVector operator*(const Integer& s, const IntVector& a) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

inline IntVector to_int_vector(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

/// Returns the integer vector if every entry of `v` is integral.
inline std::optional<IntVector> to_integer(const RatVector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (boost::multiprecision::denominator(x) != 1) return std::nullopt;
    out.push_back(boost::multiprecision::numerator(x));
  }
  return out;
}

inline std::optional<IntMatrix> to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (boost::multiprecision::denominator(m(i, j)) != 1) return std::nullopt;
      out(i, j) = boost::multiprecision::numerator(m(i, j));
    }
  return out;
}

inline Integer common_denominator(const RatMatrix& m) {
  Integer d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = lcm(d, boost::multiprecision::denominator(m(i, j)));
  return d;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw invalid_input("determinant of non-square matrix");
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Rank over the rationals.
inline std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

/// Inverse over the rationals; nullopt when singular.
inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw invalid_input("inverse of non-square matrix");
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline std::optional<RatMatrix> inverse(const IntMatrix& m) { return inverse(to_rational(m)); }

/// Solve `m x = b` over the rationals for square non-singular `m`.
inline std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b) {
  auto inv = inverse(m);
  if (!inv) return std::nullopt;
  return *inv * b;
}

/// Inertia of a symmetric matrix: (positive, negative, zero) counts.
///
/// Computed by congruence diagonalisation over the rationals.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

inline Inertia inertia(const RatMatrix& sym) {
  const std::size_t n = sym.rows();
  if (n != sym.cols()) throw invalid_input("inertia of non-square matrix");
  RatMatrix a = sym;
  Inertia out;
  std::vector<bool> done(n, false);
  std::size_t remaining = n;
  while (remaining > 0) {
    // Prefer a non-zero diagonal pivot.
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && a(i, i) != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // All remaining diagonal entries vanish; look for an off-diagonal entry.
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j)
          if (!done[j] && a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      }
      if (pi == n) {
        out.zero += remaining;
        break;
      }
      // Replace row/col pi by row/col pi + pj: the new diagonal is 2 a(pi,pj) != 0.
      for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
      p = pi;
    }
    const Rational piv = a(p, p);
    if (piv > 0)
      ++out.positive;
    else
      ++out.negative;
    done[p] = true;
    --remaining;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, p) == 0) continue;
      Rational f = a(i, p) / piv;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j]) continue;
        a(i, j) -= f * a(p, j);
      }
      a(i, p) = 0;
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!done[j]) a(p, j) = 0;
  }
  return out;
}

inline Inertia inertia(const IntMatrix& sym) { return inertia(to_rational(sym)); }

/// Row-style Hermite reduction: returns a basis (as rows) of the Z-span of
/// the given rows.  Zero rows are dropped.
inline IntMatrix row_basis(const IntMatrix& gens) {
  IntMatrix a = gens;
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // Euclid on column c among rows r..m-1.
    while (true) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (a(i, c) != 0 && (p == m || abs(a(i, c)) < abs(a(p, c)))) p = i;
      if (p == m) break;
      a.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (a(i, c) == 0) continue;
        Integer q = floor_div(a(i, c), a(r, c));
        for (std::size_t j = c; j < n; ++j) a(i, j) -= q * a(r, j);
        if (a(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (std::size_t j = c; j < n; ++j) a(r, j) = -a(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(a(i, c), a(r, c));
      if (q == 0) continue;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= q * a(r, j);
    }
    ++r;
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j);
  return out;
}

/// Basis (as columns) of the integer kernel {x in Z^n : A x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& a_in) {
  const std::size_t m = a_in.rows(), n = a_in.cols();
  // Column operations on [A; I].
  IntMatrix a = a_in;
  IntMatrix t = IntMatrix::identity(n);
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < m; ++i) a(i, dst) -= q * a(i, src);
    for (std::size_t i = 0; i < n; ++i) t(i, dst) -= q * t(i, src);
  };
  std::size_t piv = 0;
  for (std::size_t r = 0; r < m && piv < n; ++r) {
    while (true) {
      std::size_t p = n;
      for (std::size_t j = piv; j < n; ++j)
        if (a(r, j) != 0 && (p == n || abs(a(r, j)) < abs(a(r, p)))) p = j;
      if (p == n) break;
      a.swap_cols(piv, p);
      t.swap_cols(piv, p);
      bool clean = true;
      for (std::size_t j = piv + 1; j < n; ++j) {
        if (a(r, j) == 0) continue;
        col_axpy(j, piv, floor_div(a(r, j), a(r, piv)));
        if (a(r, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(r, piv) != 0) ++piv;
  }
  IntMatrix k(n, n - piv);
  for (std::size_t j = piv; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - piv) = t(i, j);
  // Tidy the kernel basis with a Hermite pass for deterministic output.
  IntMatrix rows = row_basis(k.transpose());
  return rows.transpose();
}

/// Smith normal form: U * A * V = D with U, V unimodular.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
};

inline SmithForm smith_normal_form(const IntMatrix& a_in) {
  const std::size_t m = a_in.rows(), n = a_in.cols();
  IntMatrix a = a_in;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);
  auto row_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < n; ++j) a(dst, j) -= q * a(src, j);
    for (std::size_t j = 0; j < m; ++j) u(dst, j) -= q * u(src, j);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < m; ++i) a(i, dst) -= q * a(i, src);
    for (std::size_t i = 0; i < n; ++i) v(i, dst) -= q * v(i, src);
  };
  const std::size_t lim = std::min(m, n);
  for (std::size_t k = 0; k < lim; ++k) {
    while (true) {
      // Pivot on the entry of minimal absolute value in the trailing block.
      std::size_t pi = m, pj = n;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (a(i, j) != 0 && (pi == m || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      a.swap_rows(k, pi);
      u.swap_rows(k, pi);
      a.swap_cols(k, pj);
      v.swap_cols(k, pj);
      bool clean = true;
      for (std::size_t i = k + 1; i < m; ++i)
        if (a(i, k) != 0) {
          row_axpy(i, k, floor_div(a(i, k), a(k, k)));
          if (a(i, k) != 0) clean = false;
        }
      for (std::size_t j = k + 1; j < n; ++j)
        if (a(k, j) != 0) {
          col_axpy(j, k, floor_div(a(k, j), a(k, k)));
          if (a(k, j) != 0) clean = false;
        }
      if (!clean) continue;
      // Divisibility: the pivot must divide every trailing entry.
      std::size_t bad_i = m;
      for (std::size_t i = k + 1; i < m && bad_i == m; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (a(i, j) % a(k, k) != 0) {
            bad_i = i;
            break;
          }
      if (bad_i == m) break;
      row_axpy(k, bad_i, Integer(-1));  // row k += row bad_i
    }
    if (k < m && k < n && a(k, k) < 0) {
      for (std::size_t j = 0; j < n; ++j) a(k, j) = -a(k, j);
      for (std::size_t j = 0; j < m; ++j) u(k, j) = -u(k, j);
    }
  }
  return {u, a, v};
}

inline std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace chiralat
