#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slmod/exact_linalg.hpp"
#include "slmod/graded_modules.hpp"
#include "slmod/sl_maps.hpp"
#include "slmod/torus_lie.hpp"

namespace slmod {

// H: T = (bar(k+beta)|r) s - (bar(k+beta)|s) r
// W: T = (k+beta|r) s - (k+beta|s) r
inline Vector invariant_vec(AlgebraKind kind, const Vector& kb, const Vector& r, const Vector& s) {
  if (r.size() != kb.size() || s.size() != kb.size()) throw std::invalid_argument("invariant_vec: length mismatch");
  Vector dir = kind == AlgebraKind::H ? bar(kb) : kb;
  Vector t = dot(dir, r) * s;
  t.axpy(-dot(dir, s), r);
  return t;
}

// H: T bar(T)^T with T from (r, s).
inline Matrix omega_op_h(const Vector& kb, const Vector& r, const Vector& s) {
  return rank_one_sym(invariant_vec(AlgebraKind::H, kb, r, s));
}
// W: T_{r,s} T_{u,v}^T
inline Matrix omega_op_w(const Vector& kb, const Vector& r, const Vector& s, const Vector& u, const Vector& v) {
  return Matrix::outer(invariant_vec(AlgebraKind::W, kb, r, s), invariant_vec(AlgebraKind::W, kb, u, v));
}

struct SmallAlgebra {
  AlgebraKind kind = AlgebraKind::H;
  std::vector<Vector> frame;
  std::vector<Matrix> generators;
  std::vector<Matrix> cartan;
  Subspace span;  // of flattened N x N matrices
  std::size_t dim() const { return span.dim(); }
};

inline Subspace matrix_span(const std::vector<Matrix>& ms, std::size_t N) {
  std::vector<Vector> flat;
  for (const auto& m : ms) flat.push_back(m.flatten());
  return span(flat, N * N);
}

inline Matrix unflatten(const Vector& v, std::size_t N) {
  Matrix m(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m(i, j) = v[i * N + j];
  return m;
}

// Orthogonal basis of x^perp from the standard basis, in index order.
inline std::vector<Vector> orthogonal_complement_basis(const Vector& x) {
  const std::size_t N = x.size();
  std::vector<Vector> out;
  std::vector<Vector> done{x};
  for (std::size_t i = 0; i < N && out.size() + 1 < N; ++i) {
    Vector u = Vector::unit(N, i);
    for (const auto& d : done) u.axpy(-dot(d, u) / dot(d, d), d);
    if (u.is_zero()) continue;
    out.push_back(u);
    done.push_back(u);
  }
  return out;
}

// H: sp_{N-2} on the symplectic complement of (k+beta, w_1);
// W: gl_{N-1} on the orthogonal complement of k+beta.
inline SmallAlgebra small_algebra(AlgebraKind kind, const Vector& kb) {
  if (kb.is_zero()) throw std::invalid_argument("small_algebra: k + beta must be nonzero");
  const std::size_t N = kb.size();
  SmallAlgebra a;
  a.kind = kind;
  if (kind == AlgebraKind::H) {
    a.frame = symplectic_extend(kb).vectors;
    for (std::size_t i = 2; i < N; ++i) {
      a.generators.push_back(rank_one_sym(a.frame[i]));
      for (std::size_t j = i + 1; j < N; ++j) a.generators.push_back(rank_one_sym(a.frame[i] + a.frame[j]));
    }
    for (std::size_t i = 2; i + 1 < N; i += 2) {
      const Vector &x = a.frame[i], &y = a.frame[i + 1];
      a.cartan.push_back(Matrix::outer(x, bar(y)) + Matrix::outer(y, bar(x)));
    }
  } else {
    a.frame = orthogonal_complement_basis(kb);
    for (const auto& x : a.frame)
      for (const auto& y : a.frame) a.generators.push_back(Matrix::outer(x, y));
    for (const auto& x : a.frame) a.cartan.push_back(dot(x, x).inverse() * Matrix::outer(x, x));
  }
  a.span = matrix_span(a.generators, N);
  return a;
}

// Span of the operators attainable from parameters in the sample set. Every
// such operator lies in the span of x bar(y)^T + y bar(x)^T (H) or x y^T (W)
// over x, y in the relevant hyperplane, so the scan stops once that bound is hit.
inline Subspace omega_span(AlgebraKind kind, const Vector& kb, const std::vector<Degree>& samples) {
  const std::size_t N = kb.size();
  std::vector<Vector> hyper;
  {
    Matrix row(1, N);
    Vector dir = kind == AlgebraKind::H ? bar(kb) : kb;
    for (std::size_t i = 0; i < N; ++i) row(0, i) = dir[i];
    hyper = kernel(row).basis_vectors();
  }
  std::vector<Matrix> bound_gens;
  for (const auto& x : hyper)
    for (const auto& y : hyper)
      bound_gens.push_back(kind == AlgebraKind::H ? Matrix::outer(x, bar(y)) + Matrix::outer(y, bar(x))
                                                  : Matrix::outer(x, y));
  const std::size_t bound = matrix_span(bound_gens, N).dim();

  SubspaceBuilder b(N * N);
  if (kind == AlgebraKind::H) {
    for (std::size_t i = 0; i < samples.size() && b.dim() < bound; ++i)
      for (std::size_t j = i + 1; j < samples.size(); ++j) {
        Vector t = invariant_vec(kind, kb, samples[i].as_vector(), samples[j].as_vector());
        if (t.is_zero()) continue;
        b.insert(rank_one_sym(t).flatten());
        if (b.dim() == bound) break;
      }
  } else {
    // T T'^T is bilinear, so outer products of a basis of the T values suffice
    SubspaceBuilder tb(N);
    for (std::size_t i = 0; i < samples.size() && tb.dim() + 1 < N; ++i)
      for (std::size_t j = i + 1; j < samples.size() && tb.dim() + 1 < N; ++j)
        tb.insert(invariant_vec(kind, kb, samples[i].as_vector(), samples[j].as_vector()));
    auto ts = tb.build().basis_vectors();
    for (const auto& x : ts)
      for (const auto& y : ts) b.insert(Matrix::outer(x, y).flatten());
  }
  return b.build();
}

// Every fiber preserved by the invariant operators and, for H, by x bar(x)^T
// for frame vectors x symplectically orthogonal to k + beta.
inline Report invariance_report(const GradedFamily& fam, AlgebraKind kind, const std::vector<Degree>& samples) {
  Report rep;
  const auto& spec = fam.spec;
  const std::size_t N = static_cast<std::size_t>(spec.N);
  std::size_t checked = 0, bad = 0, omitted = 0;
  for (std::size_t i = 0; i < fam.fibers.size(); ++i) {
    const Subspace& F = fam.fibers[i];
    const Degree k = fam.window.degree(i);
    const Vector kb = shifted(k, spec.beta);
    if (kb.is_zero()) {
      ++omitted;
      continue;
    }
    if (F.dim() == 0) continue;
    std::vector<Matrix> ops;
    for (const auto& v : omega_span(kind, kb, samples).basis_vectors()) ops.push_back(unflatten(v, N));
    if (kind == AlgebraKind::H) {
      auto frame = symplectic_extend(kb).vectors;
      std::vector<Vector> perp;
      for (const auto& x : frame)
        if (sympl_form(kb, x).is_zero()) perp.push_back(x);
      for (std::size_t a = 0; a < perp.size(); ++a) {
        ops.push_back(rank_one_sym(perp[a]));
        for (std::size_t b = a + 1; b < perp.size(); ++b) ops.push_back(rank_one_sym(perp[a] + perp[b]));
      }
    }
    for (const auto& op : ops) {
      ++checked;
      Matrix M = spec.fiber.derivation(op);
      bool ok = true;
      for (std::size_t j = 0; j < F.dim() && ok; ++j) ok = F.contains(M.apply(F.basis_vector(j)));
      if (ok) continue;
      if (++bad <= 5)
        rep.add({k, "fiber not preserved by invariant operator", std::string("preserved"), std::string("escapes"),
                 Status::Fail});
    }
  }
  if (checked == 0) {
    rep.skip(std::nullopt, "invariant operators", "no nonzero fiber with k + beta != 0");
    return rep;
  }
  rep.expect(std::nullopt, "invariant operator violations over " + std::to_string(checked) + " operator-fiber pairs",
             dim_value(0), dim_value(bad));
  return rep;
}

struct WeightSpace {
  std::vector<Scalar> weight;
  Subspace space;
};

// Simultaneous eigenspaces of the Cartan elements on s. The weights must be
// integers; anything else is reported as an error.
inline std::vector<WeightSpace> weight_decompose(const Subspace& s, const std::vector<Matrix>& cartan,
                                                 const FiberType& fiber) {
  std::vector<WeightSpace> pieces{{{}, s}};
  for (const auto& H : cartan) {
    Matrix M = fiber.derivation(H);
    if (M.cols() != s.ambient_dim()) throw std::invalid_argument("weight_decompose: fiber mismatch");
    for (std::size_t j = 0; j < s.dim(); ++j)
      if (!s.contains(M.apply(s.basis_vector(j)))) throw std::invalid_argument("weight_decompose: s is not Cartan-stable");
    Scalar bound = 0;
    for (std::size_t r = 0; r < M.rows(); ++r) {
      Scalar row = 0;
      for (std::size_t c = 0; c < M.cols(); ++c) row += abs(M(r, c));
      bound = std::max(bound, row);
    }
    const std::int64_t B = static_cast<std::int64_t>(bound.to_double()) + 1;
    std::vector<WeightSpace> next;
    for (const auto& piece : pieces) {
      std::size_t found = 0;
      for (std::int64_t lam = -B; lam <= B; ++lam) {
        Subspace e = kernel_on(M - Scalar(lam) * Matrix::identity(M.rows()), piece.space);
        if (e.dim() == 0) continue;
        found += e.dim();
        auto w = piece.weight;
        w.push_back(Scalar(lam));
        next.push_back({std::move(w), std::move(e)});
      }
      if (found != piece.space.dim()) throw std::invalid_argument("weight_decompose: weights not integral");
    }
    pieces = std::move(next);
  }
  std::sort(pieces.begin(), pieces.end(), [](const WeightSpace& a, const WeightSpace& b) { return a.weight < b.weight; });
  return pieces;
}

}  // namespace slmod
