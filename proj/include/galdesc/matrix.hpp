#pragma once

// Dense exact linear algebra over any field element type T providing
//   T::context_type, T::zero(ctx), T::one(ctx), x.context(), x.is_zero(),
//   x.inverse(), x.apply(aut), + - * ==.
// Both FieldElem (finite fields) and CycloElem (cyclotomic fields) qualify.
// Matrices are values: every operation returns a fresh result.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "galdesc/error.hpp"

namespace galdesc {

template <class T>
class Matrix {
 public:
  using value_type = T;
  using Ctx = typename T::context_type;

  Matrix() = default;
  Matrix(const Ctx& ctx, std::size_t rows, std::size_t cols)
      : ctx_(&ctx), r_(rows), c_(cols), a_(rows * cols, T::zero(ctx)) {}

  static Matrix zeros(const Ctx& ctx, std::size_t r, std::size_t c) { return Matrix(ctx, r, c); }
  static Matrix identity(const Ctx& ctx, std::size_t d) { return scalar(ctx, d, T::one(ctx)); }
  static Matrix scalar(const Ctx& ctx, std::size_t d, const T& s) {
    Matrix m(ctx, d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = s;
    return m;
  }
  static Matrix diagonal(const Ctx& ctx, const std::vector<T>& diag) {
    Matrix m(ctx, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }
  static Matrix from_rows(const Ctx& ctx, const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) throw Error(Errc::DimensionMismatch, "matrix needs at least one row");
    Matrix m(ctx, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.c_) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < m.c_; ++j) {
        if (&rows[i][j].context() != &ctx) throw Error(Errc::ContextMismatch, "matrix entry from another field");
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }
  /// d x d permutation matrix of the d-cycle e_j -> e_{j+1 mod d}.
  static Matrix cycle_permutation(const Ctx& ctx, std::size_t d) {
    Matrix m(ctx, d, d);
    for (std::size_t j = 0; j < d; ++j) m((j + 1) % d, j) = T::one(ctx);
    return m;
  }
  /// Column vector from entries.
  static Matrix column(const Ctx& ctx, const std::vector<T>& v) {
    Matrix m(ctx, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  const Ctx& context() const { return *ctx_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool is_square() const { return r_ == c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  T& at(std::size_t i, std::size_t j) {
    if (i >= r_ || j >= c_) throw Error(Errc::DimensionMismatch, "matrix index out of range");
    return (*this)(i, j);
  }
  const T& at(std::size_t i, std::size_t j) const {
    if (i >= r_ || j >= c_) throw Error(Errc::DimensionMismatch, "matrix index out of range");
    return (*this)(i, j);
  }
  const std::vector<T>& data() const { return a_; }

  Matrix operator+(const Matrix& o) const {
    same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }
  Matrix operator-() const { return zeros(*ctx_, r_, c_) - *this; }
  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
    if (ctx_ != o.ctx_) throw Error(Errc::ContextMismatch, "matrices over different fields");
    Matrix r(*ctx_, r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t l = 0; l < c_; ++l) {
        const T& t = (*this)(i, l);
        if (t.is_zero()) continue;
        for (std::size_t j = 0; j < o.c_; ++j) r(i, j) += t * o(l, j);
      }
    return r;
  }
  /// Right scalar multiplication X*lambda.
  Matrix operator*(const T& s) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = x * s;
    return r;
  }
  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.a_) x = s * x;
    return r;
  }
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix& operator-=(const Matrix& o) { return *this = *this - o; }
  Matrix& operator*=(const Matrix& o) { return *this = *this * o; }

  bool operator==(const Matrix& o) const { return ctx_ == o.ctx_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const T& x) { return x.is_zero(); });
  }
  bool is_identity() const { return is_square() && *this == identity(*ctx_, r_); }
  /// If the matrix equals s*I, returns s.
  std::optional<T> scalar_value() const {
    if (!is_square() || r_ == 0) return std::nullopt;
    const T s = (*this)(0, 0);
    if (*this == scalar(*ctx_, r_, s)) return s;
    return std::nullopt;
  }

  /// Entrywise automorphism.
  template <class Aut>
  Matrix apply(const Aut& a) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = x.apply(a);
    return r;
  }

  Matrix transpose() const {
    Matrix r(*ctx_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > r_ || c0 + nc > c_) throw Error(Errc::DimensionMismatch, "block out of range");
    Matrix r(*ctx_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw Error(Errc::DimensionMismatch, "block out of range");
    for (std::size_t i = 0; i < b.r_; ++i)
      for (std::size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  Matrix col(std::size_t j) const { return block(0, j, r_, 1); }
  Matrix row(std::size_t i) const { return block(i, 0, 1, c_); }

 private:
  void same_shape(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error(Errc::DimensionMismatch, "matrix shapes differ");
    if (ctx_ != o.ctx_) throw Error(Errc::ContextMismatch, "matrices over different fields");
  }

  const Ctx* ctx_ = nullptr;
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "," : "") << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

template <class T, class Aut>
Matrix<T> apply_aut_mat(const Aut& a, const Matrix<T>& m) {
  return m.apply(a);
}

/// Reduced row echelon form with first-nonzero pivoting (deterministic).
template <class T>
struct Echelon {
  Matrix<T> rref;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  T det_factor;                     // product of pivots times sign, valid for square input
};

template <class T>
Echelon<T> row_reduce(Matrix<T> a) {
  const auto& ctx = a.context();
  T det = T::one(ctx);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
      det = -det;
    }
    const T pv = a(r, c);
    det *= pv;
    const T inv = pv.inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = a(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const T t = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= t * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots), det};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return row_reduce(m).pivots.size();
}

template <class T>
T det(const Matrix<T>& m) {
  if (!m.is_square()) throw Error(Errc::DimensionMismatch, "determinant of non-square matrix");
  auto e = row_reduce(m);
  if (e.pivots.size() < m.rows()) return T::zero(m.context());
  return e.det_factor;
}

template <class T>
bool is_invertible(const Matrix<T>& m) {
  return m.is_square() && rank(m) == m.rows();
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (!m.is_square()) throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t d = m.rows();
  Matrix<T> aug(m.context(), d, 2 * d);
  aug.set_block(0, 0, m);
  aug.set_block(0, d, Matrix<T>::identity(m.context(), d));
  auto e = row_reduce(std::move(aug));
  if (e.pivots.size() < d || e.pivots[d - 1] != d - 1) throw Error(Errc::SingularMatrix, "matrix is singular");
  return e.rref.block(0, d, d, d);
}
template <class T>
Matrix<T> invert(const Matrix<T>& m) {
  return inverse(m);
}

/// Basis of {v : M v = 0} as column vectors, one per free column in increasing
/// order, with a 1 in the free coordinate.
template <class T>
std::vector<Matrix<T>> nullspace(const Matrix<T>& m) {
  const auto& ctx = m.context();
  auto e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Matrix<T>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Matrix<T> v(ctx, m.cols(), 1);
    v(f, 0) = T::one(ctx);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v(e.pivots[i], 0) = -e.rref(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

/// A solution of M x = b, if any.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& m, const Matrix<T>& b) {
  if (b.rows() != m.rows()) throw Error(Errc::DimensionMismatch, "right-hand side shape");
  Matrix<T> aug(m.context(), m.rows(), m.cols() + b.cols());
  aug.set_block(0, 0, m);
  aug.set_block(0, m.cols(), b);
  auto e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() >= m.cols()) return std::nullopt;
  Matrix<T> x(m.context(), m.cols(), b.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.rref(i, m.cols() + j);
  return x;
}

namespace detail {

template <class T>
Matrix<T> flatten_row(const Matrix<T>& m) {
  Matrix<T> v(m.context(), 1, m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(0, i * m.cols() + j) = m(i, j);
  return v;
}

template <class T>
Matrix<T> unflatten(const Matrix<T>& v, std::size_t r, std::size_t c) {
  Matrix<T> m(v.context(), r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = v(i * c + j, 0);
  return m;
}

}  // namespace detail

/// E-basis of {D : rho_i D = D tw_i for all i}. The conditions are flattened
/// into d^2 linear equations per generator in the d^2 entries of D (row-major).
template <class T>
std::vector<Matrix<T>> solve_sylvester_like(const std::vector<Matrix<T>>& rho, const std::vector<Matrix<T>>& tw) {
  if (rho.size() != tw.size() || rho.empty())
    throw Error(Errc::DimensionMismatch, "generator lists must be nonempty and of equal length");
  const auto& ctx = rho[0].context();
  const std::size_t d = rho[0].rows();
  Matrix<T> sys(ctx, rho.size() * d * d, d * d);
  for (std::size_t g = 0; g < rho.size(); ++g) {
    if (rho[g].rows() != d || !rho[g].is_square() || tw[g].rows() != d || !tw[g].is_square())
      throw Error(Errc::DimensionMismatch, "generators must all be d x d");
    // (rho D)_{ij} = sum_l rho_{il} D_{lj};  (D tw)_{ij} = sum_l D_{il} tw_{lj}.
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t row = g * d * d + i * d + j;
        for (std::size_t l = 0; l < d; ++l) {
          sys(row, l * d + j) += rho[g](i, l);
          sys(row, i * d + l) -= tw[g](l, j);
        }
      }
  }
  std::vector<Matrix<T>> out;
  for (const auto& v : nullspace(sys)) out.push_back(detail::unflatten(v, d, d));
  return out;
}

/// Incrementally maintained row-echelon basis of a subspace of E^k.
template <class T>
class SpanBasis {
 public:
  SpanBasis(const typename T::context_type& ctx, std::size_t k) : ctx_(&ctx), k_(k) {}

  /// Reduces v against the basis; adds it and returns true if independent.
  bool insert(std::vector<T> v) {
    reduce(v);
    std::size_t p = 0;
    while (p < k_ && v[p].is_zero()) ++p;
    if (p == k_) return false;
    const T inv = v[p].inverse();
    for (auto& x : v) x = x * inv;
    rows_.emplace_back(p, std::move(v));
    return true;
  }
  bool contains(std::vector<T> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const T& x) { return x.is_zero(); });
  }
  std::size_t dim() const { return rows_.size(); }

 private:
  void reduce(std::vector<T>& v) const {
    for (const auto& [p, row] : rows_) {
      if (v[p].is_zero()) continue;
      const T t = v[p];
      for (std::size_t j = 0; j < k_; ++j) v[j] -= t * row[j];
    }
  }

  const typename T::context_type* ctx_;
  std::size_t k_;
  std::vector<std::pair<std::size_t, std::vector<T>>> rows_;
};

/// Dimension of the E-algebra generated by the given d x d matrices (and I).
template <class T>
std::size_t algebra_dimension(const std::vector<Matrix<T>>& gens) {
  if (gens.empty()) return 1;
  const auto& ctx = gens[0].context();
  const std::size_t d = gens[0].rows();
  SpanBasis<T> span(ctx, d * d);
  std::vector<Matrix<T>> queue{Matrix<T>::identity(ctx, d)};
  span.insert(queue[0].data());
  for (std::size_t head = 0; head < queue.size() && span.dim() < d * d; ++head) {
    for (const auto& g : gens) {
      Matrix<T> w = queue[head] * g;
      if (span.insert(w.data())) queue.push_back(std::move(w));
    }
  }
  return span.dim();
}

/// Burnside criterion: the generators span the full matrix algebra over E.
template <class T>
bool burnside_spans(const std::vector<Matrix<T>>& gens) {
  if (gens.empty()) return false;
  const std::size_t d = gens[0].rows();
  return algebra_dimension(gens) == d * d;
}

}  // namespace galdesc
