#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slmod/exact_linalg.hpp"
#include "slmod/exterior_algebra.hpp"

namespace slmod {

enum class AlgebraKind { H, W, S };

inline std::string to_string(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::H: return "H";
    case AlgebraKind::W: return "W";
    case AlgebraKind::S: return "S";
  }
  return "?";
}

// Integer grading vector k in Z^N.
struct Degree {
  std::vector<int> k;

  Degree() = default;
  explicit Degree(std::vector<int> v) : k(std::move(v)) {}
  Degree(std::initializer_list<int> v) : k(v) {}
  static Degree zero(int N) { return Degree(std::vector<int>(static_cast<std::size_t>(N), 0)); }

  std::size_t size() const noexcept { return k.size(); }
  int operator[](std::size_t i) const { return k[i]; }
  bool is_zero() const {
    for (int x : k)
      if (x) return false;
    return true;
  }
  int sup_norm() const {
    int m = 0;
    for (int x : k) m = std::max(m, x < 0 ? -x : x);
    return m;
  }
  Vector as_vector() const { return Vector::from_ints(k); }

  friend Degree operator+(const Degree& a, const Degree& b) {
    if (a.size() != b.size()) throw std::invalid_argument("degree length mismatch");
    Degree c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.k[i] += b.k[i];
    return c;
  }
  friend Degree operator-(const Degree& a) {
    Degree c = a;
    for (auto& x : c.k) x = -x;
    return c;
  }
  friend bool operator==(const Degree&, const Degree&) = default;
  friend auto operator<=>(const Degree&, const Degree&) = default;

  std::string to_string(char sep = ',') const {
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(k[i]);
    return s;
  }
};

// k + beta
inline Vector shifted(const Degree& k, const Vector& beta) {
  if (k.size() != beta.size()) throw std::invalid_argument("shifted: length mismatch");
  Vector v(beta.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = beta[i] + Scalar(k[i]);
  return v;
}

// Whether beta is integral, and if so the degree -beta.
inline std::optional<Degree> special_degree(const Vector& beta) {
  std::vector<int> k;
  for (const auto& b : beta) {
    if (!b.is_integer()) return std::nullopt;
    k.push_back(static_cast<int>(-b.to_int64()));
  }
  return Degree(std::move(k));
}

// bar(w) = (w_{n+1}, ..., w_{2n}, -w_1, ..., -w_n)
inline Vector bar(const Vector& w) {
  if (w.size() % 2 != 0) throw std::invalid_argument("bar: length must be even");
  const std::size_t n = w.size() / 2;
  Vector out(w.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = w[n + i];
    out[n + i] = -w[i];
  }
  return out;
}

inline Scalar sympl_form(const Vector& u, const Vector& v) { return dot(bar(u), v); }

// [h_r, h_s] = (bar r | s) h_{r+s}
inline std::pair<Scalar, Degree> bracket_h(const Degree& r, const Degree& s) {
  return {sympl_form(r.as_vector(), s.as_vector()), r + s};
}

// The matrix J with bar(w) = J w.
inline Matrix bar_matrix(int N) {
  if (N % 2 != 0) throw std::invalid_argument("bar_matrix: N must be even");
  const int n = N / 2;
  Matrix J(N, N);
  for (int i = 0; i < n; ++i) {
    J(i, n + i) = 1;
    J(n + i, i) = -1;
  }
  return J;
}

// r bar(r)^T
inline Matrix rank_one_sym(const Vector& r) { return Matrix::outer(r, bar(r)); }

inline bool in_sp(const Matrix& A) {
  Matrix J = bar_matrix(static_cast<int>(A.rows()));
  return (A.transpose() * J + J * A).is_zero();
}

enum class SpKind { X, Y, Z, U, V, H };

// Zero-based root vectors of sp_N, N = 2n, i and j in [0, n).
inline Matrix sp_generator(SpKind kind, int i, int j, int N) {
  if (N % 2 != 0 || N <= 0) throw std::invalid_argument("sp_generator: N must be even and positive");
  const int n = N / 2;
  if (i < 0 || i >= n || j < 0 || j >= n) throw std::invalid_argument("sp_generator: index out of range");
  auto E = [N](int a, int b) { return Matrix::unit(N, a, b); };
  switch (kind) {
    case SpKind::X: return E(i, j) - E(n + j, n + i);
    case SpKind::Y: return E(i, n + j) + E(j, n + i);
    case SpKind::Z: return E(n + j, i) + E(n + i, j);
    case SpKind::U: return E(i, n + i);
    case SpKind::V: return E(n + i, i);
    case SpKind::H: return E(i, i) - E(n + i, n + i);
  }
  throw std::invalid_argument("sp_generator: unknown kind");
}

// Standard basis of sp_N built from root vectors and the Cartan H_i.
inline std::vector<Matrix> sp_basis(int N) {
  const int n = N / 2;
  std::vector<Matrix> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.push_back(sp_generator(SpKind::X, i, j, N));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out.push_back(sp_generator(SpKind::Y, i, j, N));
      out.push_back(sp_generator(SpKind::Z, i, j, N));
    }
  for (int i = 0; i < n; ++i) {
    out.push_back(sp_generator(SpKind::U, i, i, N));
    out.push_back(sp_generator(SpKind::V, i, i, N));
    out.push_back(sp_generator(SpKind::H, i, i, N));
  }
  return out;
}

// All nonzero integer vectors with entries in [-bound, bound], lexicographic.
inline std::vector<Degree> sample_set(int N, int bound) {
  std::vector<Degree> out;
  std::vector<int> cur(static_cast<std::size_t>(N), -bound);
  while (true) {
    Degree d(cur);
    if (!d.is_zero()) out.push_back(d);
    int i = N - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == bound) cur[static_cast<std::size_t>(i--)] = -bound;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
  }
  return out;
}

// Finite-dimensional gl_N representations used for the J-set tests.
struct Rep {
  enum class Type { Lambda, Sym2 } type = Type::Lambda;
  int p = 1;
  static Rep lambda(int p) { return {Type::Lambda, p}; }
  static Rep sym2() { return {Type::Sym2, 2}; }
  std::size_t dim(int N) const { return type == Type::Lambda ? binom(N, p) : binom(N + 1, 2); }
  Matrix matrix(const Matrix& A) const { return type == Type::Lambda ? gl_matrix(A, p) : sym2_matrix(A); }
  std::string name() const { return type == Type::Lambda ? "Lambda^" + std::to_string(p) : "Sym^2"; }
};

struct JWitness {
  Vector r;
  Vector u;
  Vector v;
};

struct JResult {
  bool holds = true;
  std::size_t tested = 0;
  std::optional<JWitness> witness;
};

// Membership of vectors in the J-set of the rep:
//   H: (r bar(r)^T)^2 v = 0
//   W: (r u^T)^2 v = (u|r) (r u^T) v
//   S: (r u^T)^2 v = 0 for (u|r) = 0
// r and u range over the given samples.
inline JResult j_membership(AlgebraKind kind, const Rep& rep, const std::vector<Vector>& vs,
                            const std::vector<Degree>& samples) {
  JResult res;
  if (samples.empty()) throw std::invalid_argument("j_membership: empty sample set");
  const int N = static_cast<int>(samples.front().size());
  for (const auto& v : vs)
    if (v.size() != rep.dim(N)) throw std::invalid_argument("j_membership: vector not in rep");
  auto test = [&](const Matrix& X, const Scalar& lambda, const Vector& r, const Vector& u) {
    Matrix M = rep.matrix(X);
    for (const auto& v : vs) {
      Vector mv = M.apply(v);
      Vector lhs = M.apply(mv);
      ++res.tested;
      if (!(lhs == lambda * mv)) {
        res.holds = false;
        res.witness = JWitness{r, u, v};
        return false;
      }
    }
    return true;
  };
  if (kind == AlgebraKind::H) {
    if (N % 2 != 0) throw std::invalid_argument("j_membership: H needs even N");
    for (const auto& rd : samples) {
      Vector r = rd.as_vector();
      if (!test(rank_one_sym(r), 0, r, bar(r))) return res;
    }
    return res;
  }
  for (const auto& rd : samples)
    for (const auto& ud : samples) {
      Vector r = rd.as_vector(), u = ud.as_vector();
      Scalar ur = dot(u, r);
      if (kind == AlgebraKind::S && !ur.is_zero()) continue;
      if (!test(Matrix::outer(r, u), kind == AlgebraKind::W ? ur : Scalar(0), r, u)) return res;
    }
  return res;
}

inline JResult j_membership(AlgebraKind kind, const Rep& rep, const Vector& v, const std::vector<Degree>& samples) {
  return j_membership(kind, rep, std::vector<Vector>{v}, samples);
}

}  // namespace slmod
