#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "dpalpha/errors.hpp"

namespace dpa {

// Dense matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c)
        throw DomainError("IntMatrix: ragged row list");
      for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  mpz_class& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const mpz_class& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<mpz_class> row(int i) const {
    std::vector<mpz_class> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  bool row_is_zero(int i) const {
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("IntMatrix multiply: shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

// Rank over Q by fraction-free (Bareiss) elimination.
inline int rank(IntMatrix m) {
  int r = 0;
  mpz_class prev = 1;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) swap(m(r, j), m(piv, j));
    for (int i = r + 1; i < m.rows(); ++i) {
      for (int j = c + 1; j < m.cols(); ++j) {
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

// Determinant of a square matrix, fraction-free.
inline mpz_class determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw DomainError("determinant: matrix not square");
  int n = m.rows();
  mpz_class prev = 1;
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) swap(m(c, j), m(piv, j));
      sign = -sign;
    }
    for (int i = c + 1; i < n; ++i) {
      for (int j = c + 1; j < n; ++j)
        m(i, j) = (m(c, c) * m(i, j) - m(i, c) * m(c, j)) / prev;
      m(i, c) = 0;
    }
    prev = m(c, c);
  }
  return sign > 0 ? m(n - 1, n - 1) : mpz_class(-m(n - 1, n - 1));
}

struct HermiteResult {
  IntMatrix h;  // row-style Hermite normal form
  IntMatrix u;  // unimodular, u * m == h
};

// Row-style HNF: echelon with positive pivots, entries above each pivot
// reduced into [0, pivot).  U tracks the row operations; det(U) = +-1.
inline HermiteResult hermite_form(const IntMatrix& m_in) {
  IntMatrix m = m_in;
  IntMatrix u = IntMatrix::identity(m.rows());
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) {
        swap(m(r, j), m(piv, j));
      }
    if (piv != r)
      for (int j = 0; j < u.cols(); ++j) swap(u(r, j), u(piv, j));
    for (int i = r + 1; i < m.rows(); ++i) {
      while (m(i, c) != 0) {
        mpz_class q = m(r, c) / m(i, c);  // truncated division is fine here
        for (int j = 0; j < m.cols(); ++j) m(r, j) -= q * m(i, j);
        for (int j = 0; j < u.cols(); ++j) u(r, j) -= q * u(i, j);
        for (int j = 0; j < m.cols(); ++j) swap(m(r, j), m(i, j));
        for (int j = 0; j < u.cols(); ++j) swap(u(r, j), u(i, j));
      }
    }
    if (m(r, c) < 0) {
      for (int j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
      for (int j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
    }
    for (int i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      if (q != 0) {
        for (int j = 0; j < m.cols(); ++j) m(i, j) -= q * m(r, j);
        for (int j = 0; j < u.cols(); ++j) u(i, j) -= q * u(r, j);
      }
    }
    ++r;
  }
  return {std::move(m), std::move(u)};
}

// Basis of the right kernel {x : M x = 0} as rows; the basis is primitive
// (it extends to a basis of Z^cols).
inline IntMatrix kernel(const IntMatrix& m) {
  auto hr = hermite_form(m.transpose());
  std::vector<std::vector<mpz_class>> rows;
  for (int i = 0; i < hr.h.rows(); ++i)
    if (hr.h.row_is_zero(i)) rows.push_back(hr.u.row(i));
  return IntMatrix::from_rows(rows);
}

// Basis of Z^n intersected with the Q-span of the input vectors.
inline std::vector<std::vector<mpz_class>> saturation_basis(
    const std::vector<std::vector<mpz_class>>& vectors) {
  if (vectors.empty()) throw DomainError("saturation_basis: empty input");
  IntMatrix a = IntMatrix::from_rows(vectors);
  int n = a.cols();
  IntMatrix ker = kernel(a);
  if (ker.rows() == n) throw DomainError("saturation_basis: all input vectors are zero");
  if (ker.rows() == 0) {
    std::vector<std::vector<mpz_class>> full;
    for (int i = 0; i < n; ++i) {
      std::vector<mpz_class> e(n, 0);
      e[i] = 1;
      full.push_back(std::move(e));
    }
    return full;
  }
  IntMatrix sat = kernel(ker);
  std::vector<std::vector<mpz_class>> out;
  for (int i = 0; i < sat.rows(); ++i) out.push_back(sat.row(i));
  return out;
}

// Exact coefficients w with sum_i w_i basis_i = v.  Throws DomainError if v
// is outside the span and InternalError if the coefficients come out
// non-integral (impossible for a saturated basis).
inline std::vector<mpz_class> coordinates_in_basis(
    const std::vector<mpz_class>& v, const std::vector<std::vector<mpz_class>>& basis) {
  size_t r = basis.size();
  size_t n = v.size();
  // solve B^T w = v by rational elimination
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(r + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < r; ++j) {
      if (basis[j].size() != n) throw DomainError("coordinates_in_basis: length mismatch");
      m[i][j] = basis[j][i];
    }
    m[i][r] = v[i];
  }
  size_t row = 0;
  std::vector<int> pivot_col(n, -1);
  for (size_t c = 0; c < r && row < n; ++c) {
    size_t piv = row;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[piv], m[row]);
    mpq_class p = m[row][c];
    for (size_t j = c; j <= r; ++j) m[row][j] /= p;
    for (size_t i = 0; i < n; ++i) {
      if (i == row || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (size_t j = c; j <= r; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col[row] = static_cast<int>(c);
    ++row;
  }
  for (size_t i = row; i < n; ++i)
    if (m[i][r] != 0) throw DomainError("coordinates_in_basis: vector outside span");
  std::vector<mpq_class> w(r, 0);
  for (size_t i = 0; i < row; ++i) w[pivot_col[i]] = m[i][r];
  std::vector<mpz_class> out(r);
  for (size_t j = 0; j < r; ++j) {
    if (w[j].get_den() != 1)
      throw InternalError("coordinates_in_basis: non-integral coordinate after saturation");
    out[j] = w[j].get_num();
  }
  return out;
}

// gcd of the maximal minors of a full-row-rank basis matrix; 1 iff the rows
// span a saturated (primitive) sublattice.
inline mpz_class maximal_minor_gcd(const std::vector<std::vector<mpz_class>>& basis) {
  IntMatrix b = IntMatrix::from_rows(basis);
  int r = b.rows(), n = b.cols();
  if (r > n) throw DomainError("maximal_minor_gcd: more rows than columns");
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  mpz_class g = 0;
  while (true) {
    IntMatrix sub(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) sub(i, j) = b(i, idx[j]);
    mpz_class d = determinant(sub);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (g == 1) return g;
    int k = r - 1;
    while (k >= 0 && idx[k] == n - r + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int i = k + 1; i < r; ++i) idx[i] = idx[i - 1] + 1;
  }
  return g;
}

}  // namespace dpa
