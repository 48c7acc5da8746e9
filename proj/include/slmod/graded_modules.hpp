#pragma once

#include <cstddef>
#include <cstdlib>
#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slmod/exact_linalg.hpp"
#include "slmod/exterior_algebra.hpp"
#include "slmod/report_types.hpp"
#include "slmod/torus_lie.hpp"

namespace slmod {

// The finite-dimensional fiber of a tensor module V (x) t^k.
struct FiberType {
  enum class Kind { Lambda, Fund, Sym2, Scalar } kind = Kind::Lambda;
  int p = 0;

  static FiberType lambda(int p) { return {Kind::Lambda, p}; }
  static FiberType fund(int p) { return {Kind::Fund, p}; }
  static FiberType sym2() { return {Kind::Sym2, 2}; }
  static FiberType scalar() { return {Kind::Scalar, 0}; }

  // Coordinates: Lambda^p for Lambda and Fund, monomials for Sym2.
  std::size_t ambient_dim(int N) const {
    switch (kind) {
      case Kind::Lambda:
      case Kind::Fund: return binom(N, p);
      case Kind::Sym2: return binom(N + 1, 2);
      case Kind::Scalar: return 1;
    }
    return 0;
  }
  Subspace whole(int N) const {
    if (kind == Kind::Fund) return fundamental_subspace(N, p);
    return Subspace::full(ambient_dim(N));
  }
  Matrix derivation(const Matrix& X) const {
    switch (kind) {
      case Kind::Lambda:
      case Kind::Fund: return gl_matrix(X, p);
      case Kind::Sym2: return sym2_matrix(X);
      case Kind::Scalar: return Matrix(1, 1);
    }
    return {};
  }
  std::string name() const {
    switch (kind) {
      case Kind::Lambda: return "Lambda" + std::to_string(p);
      case Kind::Fund: return "Fund" + std::to_string(p);
      case Kind::Sym2: return "Sym2";
      case Kind::Scalar: return "Scalar";
    }
    return "?";
  }
  friend bool operator==(const FiberType&, const FiberType&) = default;
};

struct ActionSpec {
  AlgebraKind kind = AlgebraKind::H;
  int N = 2;
  Vector beta;
  Vector alpha;
  FiberType fiber;

  static ActionSpec make(AlgebraKind kind, int N, Vector beta, FiberType fiber, Vector alpha = {}) {
    ActionSpec s{kind, N, std::move(beta), std::move(alpha), fiber};
    if (s.alpha.size() == 0) s.alpha = Vector(static_cast<std::size_t>(N));
    s.validate();
    return s;
  }
  void validate() const {
    if (N < 1 || N > kMaxRank) throw std::invalid_argument("N out of range");
    if (kind == AlgebraKind::H && N % 2 != 0) throw std::invalid_argument("H needs even N");
    if (beta.size() != static_cast<std::size_t>(N)) throw std::invalid_argument("beta must have length N");
    if (alpha.size() != static_cast<std::size_t>(N)) throw std::invalid_argument("alpha must have length N");
    if (fiber.kind == FiberType::Kind::Lambda && (fiber.p < 0 || fiber.p > N))
      throw std::invalid_argument("exterior degree out of range");
    if (fiber.kind == FiberType::Kind::Fund) {
      if (kind != AlgebraKind::H) throw std::invalid_argument("fundamental fibers need the H action");
      if (fiber.p < 0 || fiber.p > N / 2) throw std::invalid_argument("fundamental degree out of range");
    }
  }
  ActionSpec with_fiber(FiberType f) const {
    ActionSpec s = *this;
    s.fiber = f;
    s.validate();
    return s;
  }
  std::optional<Degree> special() const { return special_degree(beta); }
};

// Degrees k with max |k_i| <= d, in lexicographic order.
class Window {
 public:
  Window(int N, int d) : N_(N), d_(d) {
    if (N < 1 || d < 0) throw std::invalid_argument("bad window");
    size_ = 1;
    for (int i = 0; i < N; ++i) size_ *= static_cast<std::size_t>(2 * d + 1);
  }
  int N() const noexcept { return N_; }
  int radius() const noexcept { return d_; }
  std::size_t size() const noexcept { return size_; }

  std::optional<std::size_t> index(const Degree& k) const {
    if (static_cast<int>(k.size()) != N_) return std::nullopt;
    std::size_t idx = 0;
    for (int i = 0; i < N_; ++i) {
      int x = k[static_cast<std::size_t>(i)];
      if (x < -d_ || x > d_) return std::nullopt;
      idx = idx * static_cast<std::size_t>(2 * d_ + 1) + static_cast<std::size_t>(x + d_);
    }
    return idx;
  }
  Degree degree(std::size_t idx) const {
    std::vector<int> k(static_cast<std::size_t>(N_));
    for (int i = N_ - 1; i >= 0; --i) {
      k[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(2 * d_ + 1)) - d_;
      idx /= static_cast<std::size_t>(2 * d_ + 1);
    }
    return Degree(std::move(k));
  }
  bool contains(const Degree& k) const { return index(k).has_value(); }
  // Degrees all of whose neighbours under unit shifts stay in the window.
  bool interior(const Degree& k) const { return k.sup_norm() <= d_ - 1; }

 private:
  int N_, d_;
  std::size_t size_;
};

// h_r for H; D(u, r) for W and S.
struct Generator {
  AlgebraKind kind = AlgebraKind::H;
  Degree r;
  Vector u;

  // The gl_N element acting on the fiber, and the direction whose pairing
  // with k + beta gives the scalar part.
  Matrix matrix() const { return kind == AlgebraKind::H ? rank_one_sym(r.as_vector()) : Matrix::outer(r.as_vector(), u); }
  Vector direction() const { return kind == AlgebraKind::H ? bar(r.as_vector()) : u; }
  std::string to_string() const {
    if (kind == AlgebraKind::H) return "h(" + r.to_string() + ")";
    return "D(" + u.to_string() + ";" + r.to_string() + ")";
  }
};

// Generating sets: every h_r for H, D(e_i, r) for W, and D(u, r) with u
// running over an integer basis of r^perp for S.
inline std::vector<Generator> generators(const ActionSpec& spec, const std::vector<Degree>& samples) {
  std::vector<Generator> out;
  const std::size_t N = static_cast<std::size_t>(spec.N);
  for (const auto& r : samples) {
    if (r.size() != N) throw std::invalid_argument("sample length mismatch");
    switch (spec.kind) {
      case AlgebraKind::H: out.push_back({AlgebraKind::H, r, {}}); break;
      case AlgebraKind::W:
        for (std::size_t i = 0; i < N; ++i) out.push_back({AlgebraKind::W, r, Vector::unit(N, i)});
        break;
      case AlgebraKind::S: {
        Matrix row(1, N);
        for (std::size_t i = 0; i < N; ++i) row(0, i) = r[i];
        Subspace perp = kernel(row);
        for (std::size_t i = 0; i < perp.dim(); ++i) {
          Vector u = perp.basis_vector(i);
          // clear denominators so generators stay integral
          mpz_class l = 1;
          for (const auto& x : u)
            if (!x.is_zero()) {
              mpz_class d = x.to_mpq().get_den();
              mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
            }
          u *= Scalar(mpq_class(l));
          out.push_back({AlgebraKind::S, r, u});
        }
        break;
      }
    }
  }
  return out;
}

// Generator with its k-independent parts precomputed for a fixed fiber type.
struct PreparedGenerator {
  Generator gen;
  Vector direction;
  SparseMatrix deriv;

  Scalar scalar_part(const Degree& k, const Vector& beta) const { return dot(direction, shifted(k, beta)); }
  Vector apply(const Degree& k, const Vector& beta, const Vector& v) const {
    return deriv.apply_shifted(scalar_part(k, beta), v);
  }
};

inline std::vector<PreparedGenerator> prepare(const ActionSpec& spec, const std::vector<Generator>& gens) {
  std::vector<PreparedGenerator> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back({g, g.direction(), SparseMatrix(spec.fiber.derivation(g.matrix()))});
  return out;
}

// Matrix of g on the fiber at degree k, landing in degree k + r.
inline Matrix fiber_action(const ActionSpec& spec, const Generator& g, const Degree& k) {
  if (g.kind == AlgebraKind::S && !dot(g.u, g.r.as_vector()).is_zero())
    throw std::invalid_argument("fiber_action: S generator needs (u|r) = 0");
  Matrix m = spec.fiber.derivation(g.matrix());
  Scalar c = dot(g.direction(), shifted(k, spec.beta));
  return m + c * Matrix::identity(m.rows());
}

// The degree derivation d_i acts on V (x) t^k by k_i + alpha_i.
inline Scalar d_eigenvalue(const ActionSpec& spec, int i, const Degree& k) {
  if (i < 0 || i >= spec.N) throw std::invalid_argument("d_eigenvalue: index out of range");
  return Scalar(k[static_cast<std::size_t>(i)]) + spec.alpha[static_cast<std::size_t>(i)];
}

struct GradedFamily {
  ActionSpec spec;
  Window window;
  std::vector<Subspace> fibers;

  GradedFamily(ActionSpec s, Window w) : spec(std::move(s)), window(w) {
    fibers.assign(window.size(), Subspace(spec.fiber.ambient_dim(spec.N)));
  }
  const Subspace& at(const Degree& k) const { return fibers.at(*window.index(k)); }
  Subspace& at(const Degree& k) { return fibers.at(*window.index(k)); }
  friend bool operator==(const GradedFamily& a, const GradedFamily& b) { return a.fibers == b.fibers; }
};

inline std::vector<std::pair<Degree, std::size_t>> dims(const GradedFamily& f) {
  std::vector<std::pair<Degree, std::size_t>> out;
  for (std::size_t i = 0; i < f.fibers.size(); ++i) out.emplace_back(f.window.degree(i), f.fibers[i].dim());
  return out;
}

inline std::size_t total_dim(const GradedFamily& f) {
  std::size_t s = 0;
  for (const auto& x : f.fibers) s += x.dim();
  return s;
}

using Seed = std::pair<Degree, Vector>;

struct ClosureResult {
  GradedFamily family;
  bool stopped_early = false;
};

// Called after each fiber grows; returning true ends the search.
using StopRule = std::function<bool(std::size_t index, const SubspaceBuilder& fiber)>;

// Smallest family containing the seeds that is stable under the generators,
// within the window. Images leaving the window are dropped. With `toward`
// set, pending vectors nearest that degree are expanded first; the result is
// the same, only an early stop can come sooner.
inline ClosureResult closure_until(const ActionSpec& spec, const std::vector<Seed>& seeds, const Window& window,
                                   const std::vector<PreparedGenerator>& gens, const StopRule& stop = {},
                                   std::optional<std::size_t> toward = std::nullopt) {
  const std::size_t dim = spec.fiber.ambient_dim(spec.N);
  const std::size_t cap = spec.fiber.kind == FiberType::Kind::Fund ? fundamental_subspace(spec.N, spec.fiber.p).dim() : dim;
  std::vector<SubspaceBuilder> fib(window.size(), SubspaceBuilder(dim));
  // buckets keyed by distance to `toward`, FIFO inside a bucket
  std::map<int, std::deque<std::pair<std::size_t, Vector>>> work;
  const std::optional<Degree> focus = toward ? std::optional<Degree>(window.degree(*toward)) : std::nullopt;
  auto distance = [&](std::size_t idx) {
    if (!focus) return 0;
    Degree k = window.degree(idx);
    int d = 0;
    for (std::size_t i = 0; i < k.size(); ++i) d = std::max(d, std::abs(k[i] - (*focus)[i]));
    return d;
  };
  auto push = [&](std::size_t idx, const Vector& v) {
    auto res = fib[idx].insert(v);
    if (!res) return false;
    work[distance(idx)].emplace_back(idx, std::move(*res));
    return stop && stop(idx, fib[idx]);
  };
  auto finish = [&](bool early) {
    ClosureResult out{GradedFamily(spec, window), early};
    for (std::size_t i = 0; i < fib.size(); ++i) out.family.fibers[i] = fib[i].build();
    return out;
  };
  for (const auto& [k, v] : seeds) {
    auto idx = window.index(k);
    if (!idx) throw std::invalid_argument("closure: seed outside window");
    if (v.size() != dim) throw std::invalid_argument("closure: seed has wrong length");
    if (push(*idx, v)) return finish(true);
  }
  while (!work.empty()) {
    auto bucket = work.begin();
    auto [idx, v] = std::move(bucket->second.front());
    bucket->second.pop_front();
    if (bucket->second.empty()) work.erase(bucket);
    const Degree k = window.degree(idx);
    for (const auto& g : gens) {
      auto t = window.index(k + g.gen.r);
      if (!t || fib[*t].dim() == cap) continue;
      Vector w = g.apply(k, spec.beta, v);
      if (w.is_zero()) continue;
      if (push(*t, w)) return finish(true);
    }
  }
  return finish(false);
}

inline GradedFamily closure(const ActionSpec& spec, const std::vector<Seed>& seeds, const Window& window,
                            const std::vector<Degree>& samples) {
  return closure_until(spec, seeds, window, prepare(spec, generators(spec, samples))).family;
}

// Stop rule: the fiber at idx contains target.
inline StopRule stop_when_contains(std::size_t idx, const Subspace& target) {
  return [idx, target](std::size_t i, const SubspaceBuilder& f) {
    if (i != idx || f.dim() < target.dim()) return false;
    for (std::size_t j = 0; j < target.dim(); ++j)
      if (!f.contains(target.basis_vector(j))) return false;
    return true;
  };
}

struct InvarianceOptions {
  std::size_t max_witnesses = 5;
};

// Checks g F_k within F_{k+r} for every fiber and generator whose target
// stays in the window. Pairs leaving the window are counted as skipped.
inline Report is_invariant(const GradedFamily& fam, const std::vector<PreparedGenerator>& gens,
                           const InvarianceOptions& opt = {}) {
  Report rep;
  const auto& spec = fam.spec;
  std::size_t checked = 0, skipped = 0, bad = 0;
  for (std::size_t i = 0; i < fam.fibers.size(); ++i) {
    const Subspace& F = fam.fibers[i];
    if (F.dim() == 0) continue;
    const Degree k = fam.window.degree(i);
    for (const auto& g : gens) {
      auto t = fam.window.index(k + g.gen.r);
      if (!t) {
        ++skipped;
        continue;
      }
      ++checked;
      const Subspace& T = fam.fibers[*t];
      const Scalar c = g.scalar_part(k, spec.beta);
      for (std::size_t j = 0; j < F.dim(); ++j) {
        if (T.contains(g.deriv.apply_shifted(c, F.basis_vector(j)))) continue;
        ++bad;
        if (bad <= opt.max_witnesses)
          rep.add({k, "invariance " + g.gen.to_string(), std::string("image in fiber"),
                   std::string("escapes at basis vector " + std::to_string(j)), Status::Fail});
        break;
      }
    }
  }
  if (checked == 0) {
    rep.skip(std::nullopt, "invariance", "no (k, r) pair stays in the window");
    return rep;
  }
  rep.expect(std::nullopt, "invariance violations over " + std::to_string(checked) + " pairs (" +
                               std::to_string(skipped) + " leave window)",
             dim_value(0), dim_value(bad));
  return rep;
}

inline Report is_invariant(const GradedFamily& fam, const std::vector<Degree>& samples) {
  return is_invariant(fam, prepare(fam.spec, generators(fam.spec, samples)));
}

}  // namespace slmod
