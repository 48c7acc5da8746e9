#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slmod/exact_linalg.hpp"

namespace slmod {

// Strictly increasing zero-based indices i1 < ... < ip naming e_{i1} ^ ... ^ e_{ip}.
using ExtIndex = std::vector<int>;
using Mask = std::uint32_t;

inline constexpr int kMaxRank = 16;

inline Mask mask_of(const ExtIndex& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask{1} << i;
  return m;
}
inline ExtIndex indices_of(Mask m) {
  ExtIndex out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}
// Bits strictly between positions lo and hi.
inline Mask between_bits(int a, int b) {
  int lo = std::min(a, b), hi = std::max(a, b);
  if (hi - lo <= 1) return 0;
  return ((Mask{1} << hi) - 1) & ~((Mask{1} << (lo + 1)) - 1);
}
inline int parity_sign(int count) { return (count & 1) ? -1 : 1; }

// Monomial basis of a p-th exterior power in lexicographic order of index tuples.
class ExtBasis {
 public:
  ExtBasis(int N, int p) : N_(N), p_(p), index_(std::size_t{1} << N, -1) {
    if (N < 0 || N > kMaxRank || p < 0 || p > N) throw std::invalid_argument("ExtBasis: bad (N, p)");
    ExtIndex cur;
    enumerate(0, cur);
    for (std::size_t i = 0; i < masks_.size(); ++i) index_[masks_[i]] = static_cast<int>(i);
  }
  int N() const noexcept { return N_; }
  int p() const noexcept { return p_; }
  std::size_t size() const noexcept { return masks_.size(); }
  Mask mask(std::size_t i) const { return masks_.at(i); }
  int index(Mask m) const { return index_.at(m); }
  ExtIndex indices(std::size_t i) const { return indices_of(masks_.at(i)); }

 private:
  int N_, p_;
  std::vector<Mask> masks_;
  std::vector<int> index_;
  void enumerate(int start, ExtIndex& cur) {
    if (static_cast<int>(cur.size()) == p_) {
      masks_.push_back(mask_of(cur));
      return;
    }
    for (int i = start; i < N_; ++i) {
      cur.push_back(i);
      enumerate(i + 1, cur);
      cur.pop_back();
    }
  }
};

inline const ExtBasis& ext_basis(int N, int p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<ExtBasis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{N, p}];
  if (!slot) slot = std::make_unique<ExtBasis>(N, p);
  return *slot;
}

inline std::size_t binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

struct ExtVector {
  int N = 0;
  int degree = 0;
  std::map<ExtIndex, Scalar> terms;

  ExtVector() = default;
  ExtVector(int n, int p) : N(n), degree(p) {}
  static ExtVector monomial(int n, ExtIndex idx, Scalar c = 1) {
    ExtVector v(n, static_cast<int>(idx.size()));
    v.add(std::move(idx), c);
    return v;
  }
  void add(ExtIndex idx, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(idx);
    if (it == terms.end()) {
      terms.emplace(std::move(idx), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const ExtVector&, const ExtVector&) = default;
};

inline Vector to_dense(const ExtVector& x) {
  const ExtBasis& b = ext_basis(x.N, x.degree);
  Vector v(b.size());
  for (const auto& [idx, c] : x.terms) v[b.index(mask_of(idx))] = c;
  return v;
}
inline ExtVector from_dense(int N, int p, const Vector& v) {
  const ExtBasis& b = ext_basis(N, p);
  if (v.size() != b.size()) throw std::invalid_argument("from_dense: length mismatch");
  ExtVector x(N, p);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) x.add(b.indices(i), v[i]);
  return x;
}
inline ExtVector ext_from_vector(const Vector& v) { return from_dense(static_cast<int>(v.size()), 1, v); }

// Sign of e_a ^ e_b relative to the sorted monomial, zero if they overlap.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inv = 0;
  for (Mask t = b; t; t &= t - 1) {
    int i = std::countr_zero(t);
    inv += std::popcount(a & ~((Mask{2} << i) - 1));
  }
  return parity_sign(inv);
}

inline ExtVector wedge(const ExtVector& x, const ExtVector& y) {
  if (x.N != y.N) throw std::invalid_argument("wedge: rank mismatch");
  ExtVector out(x.N, x.degree + y.degree);
  if (out.degree > x.N) return out;
  for (const auto& [ix, cx] : x.terms)
    for (const auto& [iy, cy] : y.terms) {
      Mask a = mask_of(ix), b = mask_of(iy);
      int s = wedge_sign(a, b);
      if (s == 0) continue;
      out.add(indices_of(a | b), Scalar(s) * cx * cy);
    }
  return out;
}

// Matrix of the derivation action of A in gl_N on the p-th exterior power.
inline Matrix gl_matrix(const Matrix& A, int p) {
  const int N = static_cast<int>(A.rows());
  if (A.cols() != A.rows()) throw std::invalid_argument("gl_matrix: A must be square");
  const ExtBasis& b = ext_basis(N, p);
  Matrix out(b.size(), b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    Mask m = b.mask(j);
    for (Mask t = m; t; t &= t - 1) {
      int i = std::countr_zero(t);
      for (int r = 0; r < N; ++r) {
        const Scalar& a = A(r, i);
        if (a.is_zero()) continue;
        if (r == i) {
          out(j, j) += a;
          continue;
        }
        if (m & (Mask{1} << r)) continue;
        Mask nm = (m & ~(Mask{1} << i)) | (Mask{1} << r);
        int s = parity_sign(std::popcount(m & between_bits(i, r)));
        out(b.index(nm), j) += Scalar(s) * a;
      }
    }
  }
  return out;
}

inline ExtVector gl_act(const Matrix& A, const ExtVector& x) {
  if (static_cast<int>(A.rows()) != x.N) throw std::invalid_argument("gl_act: rank mismatch");
  return from_dense(x.N, x.degree, gl_matrix(A, x.degree).apply(to_dense(x)));
}

// Contraction with the symplectic form, Lambda^p -> Lambda^{p-2}.
inline Matrix theta_matrix(int N, int p) {
  if (N % 2 != 0) throw std::invalid_argument("theta: N must be even");
  if (p < 2 || p > N) throw std::invalid_argument("theta: need 2 <= p <= N");
  const int n = N / 2;
  const ExtBasis& src = ext_basis(N, p);
  const ExtBasis& dst = ext_basis(N, p - 2);
  Matrix out(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    ExtIndex idx = src.indices(j);
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t c = a + 1; c < idx.size(); ++c) {
        // (bar e_i | e_j) is -1 exactly when j = i + n and i < n
        if (idx[a] >= n || idx[c] != idx[a] + n) continue;
        int pos = static_cast<int>(a + 1) + static_cast<int>(c + 1) - 1;
        Mask nm = src.mask(j) & ~(Mask{1} << idx[a]) & ~(Mask{1} << idx[c]);
        out(dst.index(nm), j) += Scalar(-parity_sign(pos));
      }
  }
  return out;
}

inline ExtVector theta(const ExtVector& x) {
  if (x.degree < 2) return ExtVector(x.N, 0);
  return from_dense(x.N, x.degree - 2, theta_matrix(x.N, x.degree).apply(to_dense(x)));
}

// Kernel of theta_p in Lambda^p. Degrees 0 and 1 give the whole space.
inline const Subspace& fundamental_subspace(int N, int p) {
  if (N % 2 != 0) throw std::invalid_argument("fundamental_subspace: N must be even");
  if (p < 0 || p > N) throw std::invalid_argument("fundamental_subspace: need 0 <= p <= N");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Subspace>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{N, p}];
  if (!slot) {
    if (p <= 1)
      slot = std::make_unique<Subspace>(Subspace::full(binom(N, p)));
    else
      slot = std::make_unique<Subspace>(kernel(theta_matrix(N, p)));
  }
  return *slot;
}

// Symmetric square: basis e_i e_j with i <= j in lexicographic order.
class Sym2Basis {
 public:
  explicit Sym2Basis(int N) : N_(N), index_(static_cast<std::size_t>(N * N), -1) {
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) {
        index_[i * N + j] = index_[j * N + i] = static_cast<int>(pairs_.size());
        pairs_.emplace_back(i, j);
      }
  }
  int N() const noexcept { return N_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  std::pair<int, int> pair(std::size_t i) const { return pairs_.at(i); }
  int index(int i, int j) const { return index_.at(static_cast<std::size_t>(i * N_ + j)); }

 private:
  int N_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> index_;
};

inline Matrix sym2_matrix(const Matrix& A) {
  const int N = static_cast<int>(A.rows());
  if (A.cols() != A.rows()) throw std::invalid_argument("sym2_matrix: A must be square");
  Sym2Basis b(N);
  Matrix out(b.size(), b.size());
  for (std::size_t c = 0; c < b.size(); ++c) {
    auto [i, j] = b.pair(c);
    for (int r = 0; r < N; ++r) {
      if (!A(r, i).is_zero()) out(b.index(r, j), c) += A(r, i);
      if (!A(r, j).is_zero()) out(b.index(i, r), c) += A(r, j);
    }
  }
  return out;
}

inline Vector sym2_act(const Matrix& A, const Vector& x) { return sym2_matrix(A).apply(x); }

}  // namespace slmod
