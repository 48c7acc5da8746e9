#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slmod/scalar.hpp"

namespace slmod {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : e_(n) {}
  Vector(std::initializer_list<Scalar> xs) : e_(xs) {}
  explicit Vector(std::vector<Scalar> xs) : e_(std::move(xs)) {}

  static Vector unit(std::size_t n, std::size_t i) {
    Vector v(n);
    v.e_.at(i) = 1;
    return v;
  }
  static Vector from_ints(const std::vector<int>& xs) {
    Vector v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v.e_[i] = xs[i];
    return v;
  }

  std::size_t size() const noexcept { return e_.size(); }
  const Scalar& operator[](std::size_t i) const { return e_[i]; }
  Scalar& operator[](std::size_t i) { return e_[i]; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }
  const std::vector<Scalar>& entries() const noexcept { return e_; }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }
  std::optional<std::size_t> leading_index() const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (!e_[i].is_zero()) return i;
    return std::nullopt;
  }

  Vector& operator+=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (!o.e_[i].is_zero()) e_[i] += o.e_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (!o.e_[i].is_zero()) e_[i] -= o.e_[i];
    return *this;
  }
  Vector& operator*=(const Scalar& c) {
    for (auto& x : e_)
      if (!x.is_zero()) x *= c;
    return *this;
  }
  // this += c * o
  void axpy(const Scalar& c, const Vector& o) {
    check_same(o);
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (!o.e_[i].is_zero()) e_[i] += c * o.e_[i];
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Scalar& c, Vector a) { return a *= c; }
  Vector operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const Vector&, const Vector&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) s += (i ? ", " : "") + e_[i].to_string();
    return s + ")";
  }

 private:
  std::vector<Scalar> e_;
  void check_same(const Vector& o) const {
    if (o.size() != size()) throw std::invalid_argument("vector length mismatch");
  }
};

inline Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  // E_{ij}, zero based
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m.at(i, j) = 1;
    return m;
  }
  static Matrix outer(const Vector& u, const Vector& v) {
    Matrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero()) m(i, j) = u[i] * v[j];
    }
    return m;
  }
  static Matrix from_rows(const std::vector<Vector>& rs, std::size_t cols) {
    Matrix m(rs.size(), cols);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (rs[i].size() != cols) throw std::invalid_argument("from_rows: length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rs[i][j];
    }
    return m;
  }
  static Matrix from_cols(const std::vector<Vector>& cs, std::size_t rows) {
    Matrix m(rows, cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (cs[j].size() != rows) throw std::invalid_argument("from_cols: length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cs[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Scalar& at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
    return a_[i * cols_ + j];
  }
  const Scalar& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
    return a_[i * cols_ + j];
  }

  Vector row(std::size_t i) const {
    Vector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  Vector col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vector flatten() const { return Vector(a_); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    Vector out(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Scalar& a = (*this)(i, j);
        if (!a.is_zero()) out[i] += a * v[j];
      }
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
      }
    return c;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!o.a_[i].is_zero()) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!o.a_[i].is_zero()) a_[i] -= o.a_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Scalar& c, Matrix a) {
    for (auto& x : a.a_)
      if (!x.is_zero()) x *= c;
    return a;
  }
  Matrix operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> a_;
  void check_same(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("matrix shape mismatch");
  }
};

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// Row-compressed copy of a matrix for repeated products in hot loops.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(const Matrix& m) : rows_(m.rows()), cols_(m.cols()), start_(m.rows() + 1, 0) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j)
        if (!m(i, j).is_zero()) {
          col_.push_back(static_cast<std::uint32_t>(j));
          val_.push_back(m(i, j));
        }
      start_[i + 1] = col_.size();
    }
  }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return val_.size(); }

  // c * v + M v
  Vector apply_shifted(const Scalar& c, const Vector& v) const {
    if (v.size() != cols_ || rows_ != cols_) throw std::invalid_argument("apply_shifted: dimension mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Scalar s;
      if (!c.is_zero() && !v[i].is_zero()) s = c * v[i];
      for (std::size_t t = start_[i]; t < start_[i + 1]; ++t) {
        const Scalar& x = v[col_[t]];
        if (!x.is_zero()) s += val_[t] * x;
      }
      out[i] = std::move(s);
    }
    return out;
  }
  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Scalar s;
      for (std::size_t t = start_[i]; t < start_[i + 1]; ++t) {
        const Scalar& x = v[col_[t]];
        if (!x.is_zero()) s += val_[t] * x;
      }
      out[i] = std::move(s);
    }
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> start_;
  std::vector<std::uint32_t> col_;
  std::vector<Scalar> val_;
};

class Subspace;
Subspace rref(const Matrix& m);

// A subspace of Q^n kept as the rows of its reduced row echelon form, so two
// equal subspaces always have identical bases.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient), basis_(0, ambient) {}
  static Subspace full(std::size_t n) { return rref(Matrix::identity(n)); }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return pivots_.size(); }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  Vector basis_vector(std::size_t i) const { return basis_.row(i); }
  std::vector<Vector> basis_vectors() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
  }

  Vector reduce(Vector v) const {
    if (v.size() != ambient_) throw std::invalid_argument("reduce: ambient mismatch");
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      Scalar c = v[pivots_[i]];
      if (c.is_zero()) continue;
      for (std::size_t j = pivots_[i]; j < ambient_; ++j)
        if (!basis_(i, j).is_zero()) v[j] -= c * basis_(i, j);
    }
    return v;
  }
  bool contains(const Vector& v) const { return reduce(v).is_zero(); }
  bool contains(const Subspace& s) const {
    if (s.ambient_ != ambient_) throw std::invalid_argument("contains: ambient mismatch");
    if (s.dim() > dim()) return false;
    for (std::size_t i = 0; i < s.dim(); ++i)
      if (!contains(s.basis_vector(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  friend Subspace rref(const Matrix& m);
  friend class SubspaceBuilder;
  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

// Reduced row echelon form of the row space. Rows are first scaled to integer
// entries, then eliminated fraction free (each update divides by the previous
// pivot), and only the final pivot rows are normalised to leading entry 1.
inline Subspace rref(const Matrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<Scalar>> a(R, std::vector<Scalar>(C));
  for (std::size_t i = 0; i < R; ++i) {
    mpz_class l = 1;
    bool big = false;
    for (std::size_t j = 0; j < C; ++j) {
      const Scalar& x = m(i, j);
      if (!x.is_zero() && !x.is_integer()) {
        big = true;
        mpz_class d = x.to_mpq().get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
      }
    }
    Scalar scale = big ? Scalar(mpq_class(l)) : Scalar(1);
    for (std::size_t j = 0; j < C; ++j) a[i][j] = big ? m(i, j) * scale : m(i, j);
  }

  std::vector<std::size_t> piv;
  Scalar prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && a[p][c].is_zero()) ++p;
    if (p == R) continue;
    std::swap(a[p], a[r]);
    const Scalar pv = a[r][c];
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r) continue;
      const Scalar f = a[i][c];
      for (std::size_t j = 0; j < C; ++j) {
        if (f.is_zero()) {
          if (!a[i][j].is_zero()) a[i][j] = a[i][j] * pv / prev;
        } else if (!a[i][j].is_zero() || !a[r][j].is_zero()) {
          a[i][j] = (pv * a[i][j] - f * a[r][j]) / prev;
        }
      }
    }
    prev = pv;
    piv.push_back(c);
    ++r;
  }

  Subspace s(C);
  s.basis_ = Matrix(r, C);
  s.pivots_ = piv;
  for (std::size_t i = 0; i < r; ++i) {
    Scalar inv = a[i][piv[i]].inverse();
    for (std::size_t j = 0; j < C; ++j)
      if (!a[i][j].is_zero()) s.basis_(i, j) = a[i][j] * inv;
  }
  return s;
}

inline std::size_t rank(const Matrix& m) { return rref(m).dim(); }

inline Subspace span(const std::vector<Vector>& vs, std::size_t ambient) {
  return rref(Matrix::from_rows(vs, ambient));
}

// Null space of m acting on column vectors.
inline Subspace kernel(const Matrix& m) {
  Subspace e = rref(m);
  const std::size_t C = m.cols();
  std::vector<bool> is_piv(C, false);
  for (auto p : e.pivots()) is_piv[p] = true;
  std::vector<Vector> gens;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_piv[f]) continue;
    Vector v(C);
    v[f] = 1;
    for (std::size_t i = 0; i < e.dim(); ++i) v[e.pivots()[i]] = -e.basis()(i, f);
    gens.push_back(std::move(v));
  }
  return span(gens, C);
}

inline Subspace image(const Matrix& m, const Subspace& s) {
  if (s.ambient_dim() != m.cols()) throw std::invalid_argument("image: dimension mismatch");
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < s.dim(); ++i) gens.push_back(m.apply(s.basis_vector(i)));
  return span(gens, m.rows());
}
inline Subspace image(const Matrix& m) { return image(m, Subspace::full(m.cols())); }

inline Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum: ambient mismatch");
  auto gens = a.basis_vectors();
  for (auto& v : b.basis_vectors()) gens.push_back(std::move(v));
  return span(gens, a.ambient_dim());
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: ambient mismatch");
  const std::size_t n = a.ambient_dim(), da = a.dim(), db = b.dim();
  if (da == 0 || db == 0) return Subspace(n);
  // Solve sum y_i a_i - sum z_j b_j = 0.
  Matrix m(n, da + db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < n; ++j) m(j, i) = a.basis()(i, j);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < n; ++j) m(j, da + i) = -b.basis()(i, j);
  Subspace k = kernel(m);
  std::vector<Vector> gens;
  for (std::size_t t = 0; t < k.dim(); ++t) {
    Vector x(n);
    for (std::size_t i = 0; i < da; ++i) x.axpy(k.basis()(t, i), a.basis_vector(i));
    gens.push_back(std::move(x));
  }
  return span(gens, n);
}

inline bool member(const Subspace& s, const Vector& v) { return s.contains(v); }

// Kernel of m restricted to s, as a subspace of the ambient space of s.
inline Subspace kernel_on(const Matrix& m, const Subspace& s) {
  if (s.ambient_dim() != m.cols()) throw std::invalid_argument("kernel_on: dimension mismatch");
  Matrix ms = m * s.basis().transpose();
  Subspace k = kernel(ms);
  std::vector<Vector> gens;
  for (std::size_t t = 0; t < k.dim(); ++t) {
    Vector x(s.ambient_dim());
    for (std::size_t i = 0; i < s.dim(); ++i) x.axpy(k.basis()(t, i), s.basis_vector(i));
    gens.push_back(std::move(x));
  }
  return span(gens, s.ambient_dim());
}

// Grows a subspace one vector at a time while keeping the rows in reduced
// echelon form. Used by closure loops where most inserted vectors are
// already members.
class SubspaceBuilder {
 public:
  explicit SubspaceBuilder(std::size_t ambient = 0) : ambient_(ambient) {}
  explicit SubspaceBuilder(const Subspace& s) : ambient_(s.ambient_dim()) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
      rows_.push_back(s.basis_vector(i));
      piv_.push_back(s.pivots()[i]);
    }
  }

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient_dim() const noexcept { return ambient_; }

  Vector reduce(Vector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v[piv_[i]].is_zero()) continue;
      Scalar c = v[piv_[i]];
      v.axpy(-c, rows_[i]);
    }
    return v;
  }
  bool contains(const Vector& v) const { return reduce(v).is_zero(); }

  // Returns the normalised residual when v enlarges the span.
  std::optional<Vector> insert(const Vector& v) {
    if (v.size() != ambient_) throw std::invalid_argument("insert: ambient mismatch");
    if (rows_.size() == ambient_) return std::nullopt;
    Vector r = reduce(v);
    auto lead = r.leading_index();
    if (!lead) return std::nullopt;
    const std::size_t p = *lead;
    r *= r[p].inverse();
    for (auto& row : rows_)
      if (!row[p].is_zero()) {
        Scalar c = row[p];
        row.axpy(-c, r);
      }
    auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
    piv_.insert(piv_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, r);
    return r;
  }

  Subspace build() const {
    Subspace s(ambient_);
    s.basis_ = Matrix::from_rows(rows_, ambient_);
    s.pivots_ = piv_;
    return s;
  }

 private:
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> piv_;
};

}  // namespace slmod
