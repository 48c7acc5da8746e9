#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slmod/exact_linalg.hpp"
#include "slmod/exterior_algebra.hpp"
#include "slmod/graded_modules.hpp"
#include "slmod/torus_lie.hpp"

namespace slmod {

// Frame (v, w_1, ..., w_{N-1}) with (bar v | w_1) = 1, (bar w_{2i} | w_{2i+1}) = 1
// and every other pairing of distinct frame vectors zero, up to antisymmetry.
struct SymplecticFrame {
  std::vector<Vector> vectors;
  const Vector& operator[](std::size_t i) const { return vectors.at(i); }
  std::size_t size() const noexcept { return vectors.size(); }
};

inline SymplecticFrame symplectic_extend(const Vector& v) {
  const std::size_t N = v.size();
  if (N == 0 || N % 2 != 0) throw std::invalid_argument("symplectic_extend: N must be even");
  if (v.is_zero()) throw std::invalid_argument("symplectic_extend: v must be nonzero");
  // u minus its components along the hyperbolic pair (x, y), (bar x | y) = 1
  auto project = [](const Vector& u, const Vector& x, const Vector& y) {
    Vector out = u;
    out.axpy(-sympl_form(x, u), y);
    out.axpy(sympl_form(y, u), x);
    return out;
  };
  auto partner = [](const Vector& x, const std::vector<Vector>& cands, std::size_t from) -> std::pair<std::size_t, Vector> {
    for (std::size_t j = from; j < cands.size(); ++j) {
      Scalar c = sympl_form(x, cands[j]);
      if (!c.is_zero()) return {j, c.inverse() * cands[j]};
    }
    throw std::logic_error("symplectic_extend: no partner found");
  };

  SymplecticFrame f;
  std::vector<Vector> units;
  for (std::size_t i = 0; i < N; ++i) units.push_back(Vector::unit(N, i));
  auto [j0, w1] = partner(v, units, 0);
  (void)j0;
  f.vectors = {v, w1};

  std::vector<Vector> rest;
  SubspaceBuilder seen(N);
  for (const auto& e : units) {
    Vector c = project(e, v, w1);
    if (seen.insert(c)) rest.push_back(std::move(c));
  }
  while (!rest.empty()) {
    Vector x = rest.front();
    auto [j, y] = partner(x, rest, 1);
    f.vectors.push_back(x);
    f.vectors.push_back(y);
    std::vector<Vector> next;
    SubspaceBuilder b(N);
    for (std::size_t i = 1; i < rest.size(); ++i) {
      if (i == j) continue;
      Vector c = project(rest[i], x, y);
      if (b.insert(c)) next.push_back(std::move(c));
    }
    rest = std::move(next);
  }
  if (f.vectors.size() != N) throw std::logic_error("symplectic_extend: frame incomplete");
  return f;
}

// pi_p: wedge with k + beta; T_p: contraction against bar(k + beta);
// ThetaTilde: theta_p in every degree; F: T_{p+1} pi_p.
enum class MapKind { Pi, T, ThetaTilde, F };

struct MapId {
  MapKind kind = MapKind::Pi;
  int p = 0;

  int source() const { return p; }
  int target() const {
    switch (kind) {
      case MapKind::Pi: return p + 1;
      case MapKind::T: return p - 1;
      case MapKind::ThetaTilde: return p - 2;
      case MapKind::F: return p;
    }
    return p;
  }
  bool valid(int N) const {
    switch (kind) {
      case MapKind::Pi:
      case MapKind::F: return p >= 0 && p <= N - 1;
      case MapKind::T: return p >= 1 && p <= N;
      case MapKind::ThetaTilde: return N % 2 == 0 && p >= 2 && p <= N;
    }
    return false;
  }
  std::string name() const {
    switch (kind) {
      case MapKind::Pi: return "pi_" + std::to_string(p);
      case MapKind::T: return "T_" + std::to_string(p);
      case MapKind::ThetaTilde: return "theta_" + std::to_string(p);
      case MapKind::F: return "f_" + std::to_string(p);
    }
    return "?";
  }
};

// (k + beta) ^ -, Lambda^p -> Lambda^{p+1}
inline Matrix wedge_matrix(const Vector& x, int p) {
  const int N = static_cast<int>(x.size());
  const ExtBasis& src = ext_basis(N, p);
  const ExtBasis& dst = ext_basis(N, p + 1);
  Matrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (int i = 0; i < N; ++i) {
      if (x[static_cast<std::size_t>(i)].is_zero()) continue;
      int s = wedge_sign(Mask{1} << i, src.mask(j));
      if (s == 0) continue;
      m(dst.index(src.mask(j) | (Mask{1} << i)), j) += Scalar(s) * x[static_cast<std::size_t>(i)];
    }
  return m;
}

// sum_i (-1)^i (bar x | v_i) v_1 ^ .. v_i omitted .. ^ v_p, Lambda^p -> Lambda^{p-1}
inline Matrix contraction_matrix(const Vector& x, int p) {
  const int N = static_cast<int>(x.size());
  const Vector bx = bar(x);
  const ExtBasis& src = ext_basis(N, p);
  const ExtBasis& dst = ext_basis(N, p - 1);
  Matrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    ExtIndex idx = src.indices(j);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const Scalar& c = bx[static_cast<std::size_t>(idx[t])];
      if (c.is_zero()) continue;
      int s = parity_sign(static_cast<int>(t + 1));
      m(dst.index(src.mask(j) & ~(Mask{1} << idx[t])), j) += Scalar(s) * c;
    }
  }
  return m;
}

inline Matrix map_matrix(const MapId& id, const Degree& k, const Vector& beta) {
  const int N = static_cast<int>(beta.size());
  if (!id.valid(N)) throw std::invalid_argument("map_matrix: invalid map " + id.name());
  const Vector x = shifted(k, beta);
  switch (id.kind) {
    case MapKind::Pi: return wedge_matrix(x, id.p);
    case MapKind::T: return contraction_matrix(x, id.p);
    case MapKind::ThetaTilde: return theta_matrix(N, id.p);
    case MapKind::F: return contraction_matrix(x, id.p + 1) * wedge_matrix(x, id.p);
  }
  throw std::invalid_argument("map_matrix: unknown map");
}

using MapAt = std::function<Matrix(const Degree&)>;

// Checks phi(k + r) g = g phi(k) for every generator g of degree r and every
// k with k and k + r in the window.
inline Report verify_intertwiner(const ActionSpec& src, const ActionSpec& dst, const MapAt& phi, const Window& window,
                                 const std::vector<Degree>& samples, const std::string& name = "map") {
  Report rep;
  auto gens = generators(src, samples);
  std::vector<Matrix> ds, dt;
  for (const auto& g : gens) {
    ds.push_back(src.fiber.derivation(g.matrix()));
    dt.push_back(dst.fiber.derivation(g.matrix()));
  }
  std::vector<Matrix> cache(window.size());
  std::vector<bool> have(window.size(), false);
  auto at = [&](std::size_t i) -> const Matrix& {
    if (!have[i]) {
      cache[i] = phi(window.degree(i));
      have[i] = true;
    }
    return cache[i];
  };
  std::size_t checked = 0, bad = 0;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const Degree k = window.degree(i);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      auto t = window.index(k + gens[gi].r);
      if (!t) continue;
      ++checked;
      const Scalar c = dot(gens[gi].direction(), shifted(k, src.beta));
      Matrix lhs = at(*t) * ds[gi] + c * at(*t);
      Matrix rhs = dt[gi] * at(i) + c * at(i);
      if (lhs == rhs) continue;
      if (++bad <= 5)
        rep.add({k, name + " fails to intertwine " + gens[gi].to_string(), std::string("commutes"),
                 std::string("differs"), Status::Fail});
    }
  }
  if (checked == 0) {
    rep.skip(std::nullopt, name, "no (k, r) pair inside window");
    return rep;
  }
  rep.expect(std::nullopt, name + " intertwining failures over " + std::to_string(checked) + " pairs", dim_value(0),
             dim_value(bad));
  return rep;
}

inline Report verify_module_map(const MapId& id, const ActionSpec& spec, const Window& window,
                                const std::vector<Degree>& samples) {
  if (!id.valid(spec.N)) throw std::invalid_argument("verify_module_map: invalid map " + id.name());
  ActionSpec src = spec.with_fiber(FiberType::lambda(id.source()));
  ActionSpec dst = spec.with_fiber(FiberType::lambda(id.target()));
  return verify_intertwiner(src, dst, [&](const Degree& k) { return map_matrix(id, k, spec.beta); }, window, samples,
                            id.name());
}

enum class FamilyKind { Min, FullW, Int, Max };
enum class SpecialPolicy { Omit, Full };

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Min: return "MIN";
    case FamilyKind::FullW: return "FULLW";
    case FamilyKind::Int: return "INT";
    case FamilyKind::Max: return "MAX";
  }
  return "?";
}

struct FamilySpec {
  FamilyKind kind = FamilyKind::Min;
  bool restrict_to_fundamental = false;
  SpecialPolicy special = SpecialPolicy::Omit;
};

// Fiber of a named family at one degree, as a subspace of Lambda^p.
inline Subspace family_fiber(const FamilySpec& fs, int N, int p, const Degree& k, const Vector& beta) {
  const Vector x = shifted(k, beta);
  const std::size_t dim = binom(N, p);
  const bool fund = fs.restrict_to_fundamental;
  if (x.is_zero()) {
    if (fs.special == SpecialPolicy::Omit) return Subspace(dim);
    return fund ? fundamental_subspace(N, p) : Subspace::full(dim);
  }
  Subspace s(dim);
  switch (fs.kind) {
    case FamilyKind::Min: s = image(gl_matrix(rank_one_sym(x), p)); break;
    case FamilyKind::FullW: s = image(wedge_matrix(x, p - 1)); break;
    case FamilyKind::Int: s = image(contraction_matrix(x, p + 1)); break;
    case FamilyKind::Max: s = kernel(gl_matrix(rank_one_sym(x), p)); break;
  }
  return fund ? intersect(s, fundamental_subspace(N, p)) : s;
}

inline GradedFamily build_family(const ActionSpec& spec, const FamilySpec& fs, const Window& window) {
  const int N = spec.N, p = spec.fiber.p;
  if (spec.fiber.kind != FiberType::Kind::Lambda && spec.fiber.kind != FiberType::Kind::Fund)
    throw std::invalid_argument("build_family: fiber must be an exterior power");
  const bool fund = fs.restrict_to_fundamental || spec.fiber.kind == FiberType::Kind::Fund;
  if (fs.kind != FamilyKind::FullW && N % 2 != 0) throw std::invalid_argument("build_family: family needs even N");
  if (fs.kind == FamilyKind::FullW && p < 1) throw std::invalid_argument("build_family: FULLW needs p >= 1");
  if (fs.kind == FamilyKind::Int && p > N - 1) throw std::invalid_argument("build_family: INT needs p <= N - 1");
  if (fund && (p < 1 || p > N / 2)) throw std::invalid_argument("build_family: fundamental needs 1 <= p <= n");
  ActionSpec s = spec.with_fiber(fund ? FiberType::fund(p) : FiberType::lambda(p));
  FamilySpec f = fs;
  f.restrict_to_fundamental = fund;
  GradedFamily out(s, window);
  for (std::size_t i = 0; i < window.size(); ++i) out.fibers[i] = family_fiber(f, N, p, window.degree(i), spec.beta);
  return out;
}

// The whole tensor module restricted to the window.
inline GradedFamily full_family(const ActionSpec& spec, const Window& window) {
  GradedFamily out(spec, window);
  Subspace w = spec.fiber.whole(spec.N);
  for (auto& f : out.fibers) f = w;
  return out;
}

// Fiberwise dim(outer) - dim(inner); throws unless inner sits inside outer.
inline std::vector<std::pair<Degree, std::size_t>> quotient_dims(const GradedFamily& outer, const GradedFamily& inner) {
  if (outer.fibers.size() != inner.fibers.size()) throw std::invalid_argument("quotient_dims: windows differ");
  std::vector<std::pair<Degree, std::size_t>> out;
  for (std::size_t i = 0; i < outer.fibers.size(); ++i) {
    if (!outer.fibers[i].contains(inner.fibers[i]))
      throw std::invalid_argument("quotient_dims: not contained at degree " + outer.window.degree(i).to_string());
    out.emplace_back(outer.window.degree(i), outer.fibers[i].dim() - inner.fibers[i].dim());
  }
  return out;
}

}  // namespace slmod
