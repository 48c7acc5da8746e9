#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slmod/complexes.hpp"
#include "slmod/graded_modules.hpp"
#include "slmod/invariant_ops.hpp"
#include "slmod/report_types.hpp"
#include "slmod/sl_maps.hpp"
#include "slmod/torus_lie.hpp"

namespace slmod {

struct CheckParams {
  int N = 4;
  std::optional<int> p;
  Vector beta;
  Vector alpha;
  int window = 2;
  int r_bound = 1;
  std::uint64_t seed = 1;
  int probes = 100;

  static CheckParams make(int N, std::optional<int> p = std::nullopt, Vector beta = {}, int window = 2) {
    CheckParams c;
    c.N = N;
    c.p = p;
    c.beta = beta.size() ? std::move(beta) : Vector(static_cast<std::size_t>(N));
    c.alpha = Vector(static_cast<std::size_t>(N));
    c.window = window;
    return c;
  }
};

struct CheckResult {
  std::string check_id;
  CheckParams params;
  Status status = Status::Skipped;
  std::vector<Detail> details;
  std::string note;
};

inline const std::string kDeskScale = "supporting evidence at desk scale";

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

inline void need_even(const CheckParams& c) { require(c.N % 2 == 0, "N must be even for the H action"); }

inline int need_p(const CheckParams& c, int lo, int hi) {
  require(c.p.has_value(), "this check needs p");
  require(*c.p >= lo && *c.p <= hi, "p must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return *c.p;
}

// Given p, or every value in [lo, hi].
inline std::vector<int> p_values(const CheckParams& c, int lo, int hi) {
  if (c.p) {
    need_p(c, lo, hi);
    return {*c.p};
  }
  std::vector<int> out;
  for (int p = lo; p <= hi; ++p) out.push_back(p);
  return out;
}

inline bool beta_integral(const Vector& beta) { return special_degree(beta).has_value(); }

// Counts fiberwise comparisons and keeps a few witnesses.
class Tally {
 public:
  explicit Tally(std::string what) : what_(std::move(what)) {}
  void check(const Degree& k, bool ok, const std::string& expected = "holds", const std::string& actual = "fails") {
    ++n_;
    if (ok) return;
    if (++bad_ <= 3) witnesses_.push_back({k, what_, expected, actual, Status::Fail});
  }
  void flush(Report& rep) const {
    for (const auto& w : witnesses_) rep.add(w);
    if (n_ == 0) {
      rep.skip(std::nullopt, what_, "nothing to check");
      return;
    }
    rep.expect(std::nullopt, what_ + ": failures over " + std::to_string(n_) + " cases", dim_value(0), dim_value(bad_));
  }

 private:
  std::string what_;
  std::size_t n_ = 0, bad_ = 0;
  std::vector<Detail> witnesses_;
};

inline std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

inline bool generic(const Degree& k, const Vector& beta) { return !shifted(k, beta).is_zero(); }

// Interior degree used as the meeting point for closure probes: the origin if
// usable, then the unit vectors, then anything else in lexicographic order.
inline std::optional<std::size_t> pick_hub(const GradedFamily& target) {
  const Window& w = target.window;
  const int N = w.N();
  std::vector<Degree> cands{Degree::zero(N)};
  for (int i = 0; i < N; ++i) {
    std::vector<int> k(static_cast<std::size_t>(N), 0);
    k[static_cast<std::size_t>(i)] = 1;
    cands.emplace_back(k);
  }
  for (std::size_t i = 0; i < w.size(); ++i) cands.push_back(w.degree(i));
  for (const auto& k : cands) {
    if (!w.contains(k) || !w.interior(k)) continue;
    if (!generic(k, target.spec.beta) || target.at(k).dim() == 0) continue;
    return w.index(k);
  }
  return std::nullopt;
}

struct Prober {
  ActionSpec spec;
  Window window;
  std::vector<PreparedGenerator> gens;
  GradedFamily target;
  std::size_t hub = 0;
  bool ready = false;

  Prober(const ActionSpec& s, const Window& w, const std::vector<Degree>& samples, GradedFamily t)
      : spec(s), window(w), gens(prepare(s, generators(s, samples))), target(std::move(t)) {}

  // Closure of the target's hub fiber must give back the target on the
  // interior; afterwards a seed reaches the target as soon as its closure
  // holds the hub fiber.
  void calibrate(Report& rep, const std::string& name) {
    auto h = pick_hub(target);
    if (!h) {
      rep.skip(std::nullopt, name, "window has no usable interior fiber");
      return;
    }
    hub = *h;
    std::vector<Seed> seeds;
    for (const auto& v : target.fibers[hub].basis_vectors()) seeds.emplace_back(window.degree(hub), v);
    GradedFamily base = closure_until(spec, seeds, window, gens).family;
    Tally t(name + ": closure of the hub fiber " + window.degree(hub).to_string() + " equals it on interior fibers");
    for (std::size_t i = 0; i < window.size(); ++i) {
      Degree k = window.degree(i);
      if (!window.interior(k)) continue;
      t.check(k, base.fibers[i] == target.fibers[i], std::to_string(target.fibers[i].dim()),
              std::to_string(base.fibers[i].dim()));
    }
    Report local;
    t.flush(local);
    ready = local.passed();
    rep.append(local);
  }

  bool reaches(const Seed& s) const {
    return closure_until(spec, {s}, window, gens, stop_when_contains(hub, target.fibers[hub]), hub).stopped_early;
  }

  void run(Report& rep, const std::string& name, const std::vector<Seed>& seeds) const {
    if (!ready) {
      rep.skip(std::nullopt, name, "probe not calibrated");
      return;
    }
    Tally t(name);
    for (const auto& s : seeds) t.check(s.first, reaches(s), "closure contains target", "closure misses target");
    t.flush(rep);
  }
};

inline Vector random_in(const Subspace& s, std::mt19937_64& rng) {
  for (;;) {
    Vector v(s.ambient_dim());
    for (std::size_t j = 0; j < s.dim(); ++j) v.axpy(Scalar(static_cast<int>(rng() % 7) - 3), s.basis_vector(j));
    if (!v.is_zero()) return v;
  }
}

// Seeded random vectors at random window degrees, drawn from the given fibers.
inline std::vector<Seed> random_seeds(const GradedFamily& within, int count, std::uint64_t seed,
                                      const std::function<bool(const Degree&, const Vector&)>& accept = {}) {
  std::mt19937_64 rng(seed);
  std::vector<Seed> out;
  const Window& w = within.window;
  std::size_t attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts < static_cast<std::size_t>(count) * 50) {
    ++attempts;
    std::size_t i = rng() % w.size();
    if (within.fibers[i].dim() == 0) continue;
    Vector v = random_in(within.fibers[i], rng);
    if (accept && !accept(w.degree(i), v)) continue;
    out.emplace_back(w.degree(i), std::move(v));
  }
  return out;
}

// Basis vectors of every nonzero fiber.
inline std::vector<Seed> basis_seeds(const GradedFamily& fam) {
  std::vector<Seed> out;
  for (std::size_t i = 0; i < fam.fibers.size(); ++i)
    for (const auto& v : fam.fibers[i].basis_vectors()) out.emplace_back(fam.window.degree(i), v);
  return out;
}

// For each fiber, the first basis vector of the whole fiber outside `avoid`.
inline std::vector<Seed> outside_seeds(const GradedFamily& whole, const GradedFamily& avoid) {
  std::vector<Seed> out;
  for (std::size_t i = 0; i < whole.fibers.size(); ++i)
    for (const auto& v : whole.fibers[i].basis_vectors())
      if (!avoid.fibers[i].contains(v)) {
        out.emplace_back(whole.window.degree(i), v);
        break;
      }
  return out;
}

inline ActionSpec h_spec(const CheckParams& c, FiberType f) {
  return ActionSpec::make(AlgebraKind::H, c.N, c.beta, f, c.alpha);
}

inline FamilySpec fam(FamilyKind k, bool fund, bool hat = false) {
  return {k, fund, hat ? SpecialPolicy::Full : SpecialPolicy::Omit};
}

// ---------------------------------------------------------------------------

inline Report dim_fundamental(const CheckParams& c) {
  need_even(c);
  Report rep;
  for (int p : p_values(c, 1, c.N / 2))
    rep.expect(std::nullopt, "dim Fund(" + std::to_string(p) + ") = C(N,p) - C(N,p-2)",
               dim_value(binom(c.N, p) - binom(c.N, p - 2)), dim_value(fundamental_subspace(c.N, p).dim()));
  return rep;
}

inline Report theta_iso(const CheckParams& c) {
  need_even(c);
  require(c.N >= 2, "N too small");
  Report rep;
  const int n = c.N / 2;
  Matrix th = theta_matrix(c.N, n + 1);
  rep.expect(std::nullopt, "rank theta_{n+1}", dim_value(binom(c.N, n - 1)), dim_value(rank(th)));
  rep.expect(std::nullopt, "kernel of theta_{n+1}", dim_value(0), dim_value(kernel(th).dim()));
  bool eq = true;
  for (const auto& X : sp_basis(c.N)) eq = eq && th * gl_matrix(X, n + 1) == gl_matrix(X, n - 1) * th;
  rep.expect_true(std::nullopt, "theta_{n+1} commutes with sp_N", eq);
  return rep;
}

inline Report l3_span(const CheckParams& c) {
  need_even(c);
  Report rep;
  const std::size_t n = static_cast<std::size_t>(c.N / 2), NN = static_cast<std::size_t>(c.N * c.N);
  std::vector<Vector> ro, sp;
  for (const auto& r : sample_set(c.N, c.r_bound)) ro.push_back(rank_one_sym(r.as_vector()).flatten());
  for (const auto& X : sp_basis(c.N)) sp.push_back(X.flatten());
  Subspace a = span(ro, NN);
  rep.expect(std::nullopt, "span of r bar(r)^T", dim_value(n * (2 * n + 1)), dim_value(a.dim()));
  rep.expect_true(std::nullopt, "span equals sp_N", a == span(sp, NN));
  return rep;
}

inline Report j_char(const CheckParams& c) {
  Report rep;
  auto R = sample_set(c.N, c.r_bound);
  std::vector<AlgebraKind> kinds{AlgebraKind::W, AlgebraKind::S};
  if (c.N % 2 == 0) kinds.insert(kinds.begin(), AlgebraKind::H);
  for (AlgebraKind kind : kinds) {
    const std::string kn = to_string(kind);
    for (int p = 0; p <= c.N; ++p) {
      if (kind == AlgebraKind::S && p == c.N) continue;
      std::vector<Vector> basis;
      for (std::size_t i = 0; i < binom(c.N, p); ++i) basis.push_back(Vector::unit(binom(c.N, p), i));
      auto res = j_membership(kind, Rep::lambda(p), basis, R);
      rep.expect_true(std::nullopt, kn + ": Lambda^" + std::to_string(p) + " in J over " + std::to_string(res.tested) + " samples",
                      res.holds);
    }
    const std::size_t s2 = binom(c.N + 1, 2);
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < s2; ++i) basis.push_back(Vector::unit(s2, i));
    auto res = j_membership(kind, Rep::sym2(), basis, R);
    rep.expect_true(std::nullopt, kn + ": Sym^2 not in J, witness found", !res.holds && res.witness.has_value(),
                    "no witness");
    if (res.witness)
      rep.add({std::nullopt, kn + ": Sym^2 witness (r; u)", std::string("any"),
               res.witness->r.to_string() + ";" + res.witness->u.to_string(), Status::Pass});
  }
  return rep;
}

inline Report module_maps(const CheckParams& c) {
  need_even(c);
  Report rep;
  Window w(c.N, c.window);
  auto R = sample_set(c.N, c.r_bound);
  auto spec = h_spec(c, FiberType::lambda(0));
  for (MapKind kind : {MapKind::Pi, MapKind::T, MapKind::ThetaTilde, MapKind::F})
    for (int p = 0; p <= c.N; ++p) {
      MapId id{kind, p};
      if (!id.valid(c.N)) continue;
      if (c.p && *c.p != p) continue;
      rep.append(verify_module_map(id, spec, w, R));
    }
  return rep;
}

struct OracleDims {
  std::size_t min = 0, max = 0;
  std::optional<std::size_t> fullw, intm;
};

// Direct rank computations, independent of build_family.
inline OracleDims oracle_fiber_dims(int N, int p, const Vector& kb) {
  if (kb.is_zero()) throw std::invalid_argument("oracle_fiber_dims: k + beta must be nonzero");
  if (static_cast<int>(kb.size()) != N || p < 0 || p > N) throw std::invalid_argument("oracle_fiber_dims: bad arguments");
  OracleDims d;
  Matrix f = gl_matrix(rank_one_sym(kb), p);
  d.min = rank(f);
  d.max = binom(N, p) - d.min;
  if (p >= 1) d.fullw = rank(wedge_matrix(kb, p - 1));
  if (p <= N - 1) d.intm = rank(contraction_matrix(kb, p + 1));
  return d;
}

inline Report inclusion_chain(const CheckParams& c) {
  need_even(c);
  Report rep;
  Window w(c.N, c.window);
  const int N = c.N;
  for (int p : p_values(c, 0, N)) {
    const std::string P = "p=" + std::to_string(p);
    Tally inc(P + " MIN in FULLW in MAX and MIN in INT in MAX");
    Tally dims(P + " generic dims (MIN,FULLW,INT,MAX) match closed forms");
    Tally orc(P + " family dims agree with the rank oracle");
    const std::size_t want_min = p >= 1 ? binom(N - 2, p - 1) : 0;
    const std::size_t want_fw = p >= 1 ? binom(N - 1, p - 1) : 0;
    const std::size_t want_int = (p >= 1 ? binom(N - 2, p - 1) : 0) + binom(N - 2, p);
    const std::size_t want_max = binom(N, p) - want_min;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Degree k = w.degree(i);
      if (!generic(k, c.beta)) continue;
      Subspace mn = family_fiber(fam(FamilyKind::Min, false), N, p, k, c.beta);
      Subspace mx = family_fiber(fam(FamilyKind::Max, false), N, p, k, c.beta);
      std::optional<Subspace> fw, in;
      if (p >= 1) fw = family_fiber(fam(FamilyKind::FullW, false), N, p, k, c.beta);
      if (p <= N - 1) in = family_fiber(fam(FamilyKind::Int, false), N, p, k, c.beta);
      bool ok = mx.contains(mn);
      if (fw) ok = ok && fw->contains(mn) && mx.contains(*fw);
      if (in) ok = ok && in->contains(mn) && mx.contains(*in);
      inc.check(k, ok);
      std::vector<std::size_t> got{mn.dim(), fw ? fw->dim() : 0, in ? in->dim() : 0, mx.dim()};
      std::vector<std::size_t> want{want_min, p >= 1 ? want_fw : 0, p <= N - 1 ? want_int : 0, want_max};
      dims.check(k, got == want, join(want), join(got));
      OracleDims o = oracle_fiber_dims(N, p, shifted(k, c.beta));
      std::vector<std::size_t> od{o.min, o.fullw.value_or(0), o.intm.value_or(0), o.max};
      orc.check(k, od == got, join(od), join(got));
    }
    inc.flush(rep);
    dims.flush(rep);
    orc.flush(rep);
    rep.add({std::nullopt, P + " closed-form generic dims (MIN,FULLW,INT,MAX)",
             join({want_min, want_fw, want_int, want_max}), std::string("see above"), Status::Pass});
  }
  return rep;
}

inline Report fiber_equalities(const CheckParams& c) {
  need_even(c);
  Report rep;
  Window w(c.N, c.window);
  const int N = c.N, n = N / 2;
  for (int p : p_values(c, 1, n)) {
    const std::string P = "p=" + std::to_string(p);
    Tally l51(P + " MIN and FULLW agree on Fund(p)");
    Tally l57a(P + " MAX equals INT on Fund(1)");
    Tally l57b(P + " INT equals MIN on Fund(n)");
    Tally l511(P + " INT on Fund(p) is the kernel of theta_{p+1} pi_p");
    for (std::size_t i = 0; i < w.size(); ++i) {
      Degree k = w.degree(i);
      if (!generic(k, c.beta)) continue;
      auto F = [&](FamilyKind kind) { return family_fiber(fam(kind, true), N, p, k, c.beta); };
      l51.check(k, F(FamilyKind::Min) == F(FamilyKind::FullW));
      if (p == 1) l57a.check(k, F(FamilyKind::Max) == F(FamilyKind::Int));
      if (p == n) l57b.check(k, F(FamilyKind::Int) == F(FamilyKind::Min));
      if (p > 1) {
        Matrix m = theta_matrix(N, p + 1) * wedge_matrix(shifted(k, c.beta), p);
        l511.check(k, kernel_on(m, fundamental_subspace(N, p)) == F(FamilyKind::Int));
      }
    }
    l51.flush(rep);
    if (p == 1) l57a.flush(rep);
    if (p == n) l57b.flush(rep);
    if (p > 1) l511.flush(rep);
  }
  if (auto s = special_degree(c.beta); s && w.contains(*s))
    rep.skip(*s, "special fiber k = -beta", "generic-fiber identities are not evaluated here");
  return rep;
}

inline Report composition(const CheckParams& c) {
  need_even(c);
  Report rep;
  Window w(c.N, c.window);
  const int N = c.N, n = N / 2;
  auto R = sample_set(N, c.r_bound);
  for (int p : p_values(c, 1, n)) {
    const std::string P = "p=" + std::to_string(p);
    auto spec = h_spec(c, FiberType::fund(p));
    GradedFamily mn = build_family(spec, fam(FamilyKind::Min, true), w);
    GradedFamily in = build_family(spec, fam(FamilyKind::Int, true), w);
    GradedFamily mx = build_family(spec, fam(FamilyKind::Max, true), w);
    GradedFamily all = full_family(spec, w);
    auto gens = prepare(spec, generators(spec, R));
    rep.append(is_invariant(mn, gens), P + " MIN");
    rep.append(is_invariant(in, gens), P + " INT");
    rep.append(is_invariant(mx, gens), P + " MAX");
    Tally chain(P + " chain quotients MIN, INT/MIN, MAX/INT, L/MAX are m_p, m_{p+1}, m_{p-1}, m_p");
    Tally book(P + " m_{p-1} + 2 m_p + m_{p+1} = dim Fund(p)");
    std::optional<std::pair<Degree, std::string>> sample;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Degree k = w.degree(i);
      if (!generic(k, c.beta)) continue;
      auto m = [&](int q) -> std::size_t {
        if (q < 1 || q > n) return 0;
        return family_fiber(fam(FamilyKind::Min, true), N, q, k, c.beta).dim();
      };
      std::vector<std::size_t> q{mn.fibers[i].dim(), in.fibers[i].dim() - mn.fibers[i].dim(),
                                 mx.fibers[i].dim() - in.fibers[i].dim(), all.fibers[i].dim() - mx.fibers[i].dim()};
      bool contained = in.fibers[i].contains(mn.fibers[i]) && mx.fibers[i].contains(in.fibers[i]);
      std::vector<std::size_t> want{m(p), p < n ? m(p + 1) : 0, p > 1 ? m(p - 1) : 0, m(p)};
      chain.check(k, contained && q == want, join(want), contained ? join(q) : "not a chain");
      book.check(k, m(p - 1) + 2 * m(p) + (p < n ? m(p + 1) : 0) == fundamental_subspace(N, p).dim());
      if (!sample)
        sample = {k, join({mn.fibers[i].dim(), in.fibers[i].dim(), mx.fibers[i].dim(), all.fibers[i].dim()})};
    }
    chain.flush(rep);
    book.flush(rep);
    if (sample) rep.add({sample->first, P + " chain dims MIN,INT,MAX,L", sample->second, sample->second, Status::Pass});
  }
  // solved fundamental-minimal dims at a generic point
  Vector kb(static_cast<std::size_t>(N));
  kb[0] = 1;
  std::vector<std::size_t> ms;
  for (int q = 1; q <= n; ++q) ms.push_back(family_fiber(fam(FamilyKind::Min, true), N, q, Degree::zero(N), kb).dim());
  rep.add({std::nullopt, "solved m_1..m_n", join(ms), join(ms), Status::Pass});
  return rep;
}

inline Report jh_quotient(const CheckParams& c) {
  need_even(c);
  Report rep;
  Window w(c.N, c.window);
  auto R = sample_set(c.N, c.r_bound);
  for (int p : p_values(c, 0, c.N)) {
    const std::string P = "p=" + std::to_string(p);
    auto spec = h_spec(c, FiberType::lambda(p));
    auto gens = prepare(spec, generators(spec, R));
    GradedFamily mn = build_family(spec, fam(FamilyKind::Min, false), w);
    GradedFamily mx = build_family(spec, fam(FamilyKind::Max, false), w);
    rep.append(is_invariant(mn, gens), P + " MIN");
    rep.append(is_invariant(mx, gens), P + " MAX");
    // f_p induces L / MAX ~ MIN: kernel MAX, image MIN, fiber by fiber
    Tally t(P + " f_p has kernel MAX and image MIN");
    for (std::size_t i = 0; i < w.size(); ++i) {
      Degree k = w.degree(i);
      if (!generic(k, c.beta)) continue;
      Matrix f = p < c.N ? map_matrix({MapKind::F, p}, k, c.beta) : gl_matrix(rank_one_sym(shifted(k, c.beta)), p);
      t.check(k, kernel(f) == mx.fibers[i] && image(f) == mn.fibers[i]);
    }
    t.flush(rep);
  }
  return rep;
}

inline Report irreducible_min(const CheckParams& c) {
  need_even(c);
  Report rep;
  int p = need_p(c, 1, c.N / 2);
  Window w(c.N, c.window);
  auto spec = h_spec(c, FiberType::fund(p));
  Prober pr(spec, w, sample_set(c.N, c.r_bound), build_family(spec, fam(FamilyKind::Min, true), w));
  rep.append(is_invariant(pr.target, pr.gens), "MIN");
  pr.calibrate(rep, "MIN");
  pr.run(rep, "closure of each MIN basis vector reaches MIN", basis_seeds(pr.target));
  return rep;
}

inline Report uniqueness(const CheckParams& c) {
  need_even(c);
  Report rep;
  int p = need_p(c, 1, c.N / 2);
  Window w(c.N, c.window);
  auto spec = h_spec(c, FiberType::fund(p));
  Prober pr(spec, w, sample_set(c.N, c.r_bound), build_family(spec, fam(FamilyKind::Min, true), w));
  pr.calibrate(rep, "MIN");
  pr.run(rep, std::to_string(c.probes) + " seeded random vectors (seed " + std::to_string(c.seed) + ") reach MIN",
         random_seeds(full_family(spec, w), c.probes, c.seed));
  return rep;
}

inline Report main_classification(const CheckParams& c) {
  need_even(c);
  Report rep;
  const int n = c.N / 2;
  int p = need_p(c, 1, n);
  Window w(c.N, c.window);
  auto spec = h_spec(c, FiberType::fund(p));
  auto R = sample_set(c.N, c.r_bound);
  const bool integral = beta_integral(c.beta);
  // every family of the chain is a submodule, with and without the -beta fiber
  auto gens = prepare(spec, generators(spec, R));
  for (FamilyKind k : {FamilyKind::Min, FamilyKind::Int, FamilyKind::Max}) {
    rep.append(is_invariant(build_family(spec, fam(k, true), w), gens), to_string(k));
    if (integral) rep.append(is_invariant(build_family(spec, fam(k, true, true), w), gens), to_string(k) + " with -beta fiber");
  }
  GradedFamily mx = build_family(spec, fam(FamilyKind::Max, true, integral), w);
  Prober pr(spec, w, R, full_family(spec, w));
  pr.calibrate(rep, "whole module");
  GradedFamily whole = full_family(spec, w);
  pr.run(rep, "closure of a vector outside MAX in each fiber is everything", outside_seeds(whole, mx));
  pr.run(rep, "seeded random vectors outside MAX generate everything",
         random_seeds(whole, c.probes, c.seed + 1, [&](const Degree& k, const Vector& v) { return !mx.at(k).contains(v); }));
  return rep;
}

inline Report cor_p0(const CheckParams& c) {
  need_even(c);
  Report rep;
  Window w(c.N, c.window);
  auto spec = h_spec(c, FiberType::lambda(0));
  auto R = sample_set(c.N, c.r_bound);
  GradedFamily whole = full_family(spec, w);
  auto s = special_degree(c.beta);
  if (s && w.contains(*s)) {
    GradedFamily point(spec, w), rest = whole;
    point.at(*s) = Subspace::full(1);
    rest.at(*s) = Subspace(1);
    auto gens = prepare(spec, generators(spec, R));
    rep.append(is_invariant(point, gens), "the -beta fiber");
    rep.append(is_invariant(rest, gens), "its complement");
    Prober pr(spec, w, R, rest);
    pr.calibrate(rep, "complement");
    pr.run(rep, "closure of each fiber away from -beta is the complement", basis_seeds(rest));
  } else {
    Prober pr(spec, w, R, whole);
    pr.calibrate(rep, "whole module");
    pr.run(rep, "closure of each fiber is everything", basis_seeds(whole));
  }
  return rep;
}

// Single vectors in the Sym^2 module generate everything.
inline Report sym2_probe(const CheckParams& c, AlgebraKind kind) {
  Report rep;
  Window w(c.N, c.window);
  auto spec = ActionSpec::make(kind, c.N, c.beta, FiberType::sym2(), c.alpha);
  auto R = sample_set(c.N, c.r_bound);
  auto jm = j_membership(kind, Rep::sym2(), [&] {
    std::vector<Vector> b;
    const std::size_t d = binom(c.N + 1, 2);
    for (std::size_t i = 0; i < d; ++i) b.push_back(Vector::unit(d, i));
    return b;
  }(), R);
  rep.expect_true(std::nullopt, "Sym^2 is outside the J-set", !jm.holds);
  GradedFamily whole = full_family(spec, w);
  Prober pr(spec, w, R, whole);
  pr.calibrate(rep, "whole module");
  pr.run(rep, "closure of each basis vector is everything", basis_seeds(whole));
  pr.run(rep, std::to_string(c.probes) + " seeded random vectors generate everything",
         random_seeds(whole, c.probes, c.seed));
  return rep;
}

inline Report criterion_sym2(const CheckParams& c) {
  require(c.N == 2, "criterion-sym2 runs at N = 2 only");
  return sym2_probe(c, AlgebraKind::H);
}

inline Report tw(const CheckParams& c) {
  require(c.N == 2, "TW runs at N = 2 only");
  return sym2_probe(c, AlgebraKind::W);
}

inline Report ts(const CheckParams& c) {
  require(c.N == 2, "TS runs at N = 2 only");
  return sym2_probe(c, AlgebraKind::S);
}

inline ActionSpec w_spec(const CheckParams& c, int p) {
  return ActionSpec::make(AlgebraKind::W, c.N, c.beta, FiberType::lambda(p), c.alpha);
}

inline Report classify_w(const CheckParams& c) {
  Report rep;
  const int N = c.N;
  require(N >= 2, "classify-W needs N >= 2");
  Window w(N, c.window);
  auto R = sample_set(N, c.r_bound);
  const bool integral = beta_integral(c.beta);
  for (int p : p_values(c, 1, N - 1)) {
    const std::string P = "p=" + std::to_string(p);
    auto spec = w_spec(c, p);
    auto gens = prepare(spec, generators(spec, R));
    GradedFamily wb = build_family(spec, fam(FamilyKind::FullW, false), w);
    rep.append(is_invariant(wb, gens), P + " W(Lambda^p)");
    rep.append(invariance_report(wb, AlgebraKind::W, R), P + " W(Lambda^p)");
    GradedFamily hat = build_family(spec, fam(FamilyKind::FullW, false, integral), w);
    if (integral) rep.append(is_invariant(hat, gens), P + " W(Lambda^p) with -beta fiber");
    Tally dims(P + " fiber dims: W = C(N-1,p-1), L/W = C(N-1,p), ker pi_p = W");
    for (std::size_t i = 0; i < w.size(); ++i) {
      Degree k = w.degree(i);
      if (!generic(k, c.beta)) continue;
      std::size_t d = wb.fibers[i].dim();
      bool ok = d == binom(N - 1, p - 1) && binom(N, p) - d == binom(N - 1, p);
      ok = ok && kernel(map_matrix({MapKind::Pi, p}, k, c.beta)) == wb.fibers[i];
      dims.check(k, ok, join({binom(N - 1, p - 1), binom(N - 1, p)}), join({d, binom(N, p) - d}));
    }
    dims.flush(rep);
    if (auto s = special_degree(c.beta); s && w.contains(*s))
      rep.expect(*s, P + " hat quotient at -beta", dim_value(binom(N, p)), dim_value(hat.at(*s).dim() - wb.at(*s).dim()));
    Prober pr(spec, w, R, full_family(spec, w));
    pr.calibrate(rep, P + " whole module");
    pr.run(rep, P + " closure of a vector outside W in each fiber is everything", outside_seeds(full_family(spec, w), hat));
  }
  Vector kb = c.beta;
  kb[0] += 1;
  if (kb.is_zero()) kb[0] += 1;
  rep.expect(std::nullopt, "dim of the gl_{N-1} small algebra", dim_value(static_cast<std::size_t>((N - 1) * (N - 1))),
             dim_value(small_algebra(AlgebraKind::W, kb).dim()));
  return rep;
}

inline Report unique_w(const CheckParams& c) {
  Report rep;
  const int N = c.N;
  require(N >= 2, "unique-W needs N >= 2");
  const bool integral = beta_integral(c.beta);
  int p = need_p(c, integral ? 0 : 1, N - 1);
  Window w(N, c.window);
  auto R = sample_set(N, c.r_bound);
  auto spec = w_spec(c, p);
  GradedFamily whole = full_family(spec, w);
  if (p == 0) {
    auto s = *special_degree(c.beta);
    if (!w.contains(s)) {
      rep.skip(std::nullopt, "p=0", "the -beta fiber is outside the window");
      return rep;
    }
    GradedFamily point(spec, w);
    point.at(s) = Subspace::full(1);
    auto gens = prepare(spec, generators(spec, R));
    rep.append(is_invariant(point, gens), "the -beta fiber");
    Tally t("closure of each fiber contains the -beta fiber");
    auto idx = *w.index(s);
    for (const auto& sd : basis_seeds(whole))
      t.check(sd.first, closure_until(spec, {sd}, w, gens, stop_when_contains(idx, point.fibers[idx])).stopped_early);
    t.flush(rep);
    return rep;
  }
  Prober pr(spec, w, R, build_family(spec, fam(FamilyKind::FullW, false), w));
  rep.append(is_invariant(pr.target, pr.gens), "W(Lambda^p)");
  pr.calibrate(rep, "W(Lambda^p)");
  pr.run(rep, "closure of each basis vector of W(Lambda^p) reaches it", basis_seeds(pr.target));
  pr.run(rep, std::to_string(c.probes) + " seeded random vectors reach W(Lambda^p)", random_seeds(whole, c.probes, c.seed));
  return rep;
}

inline Report invariant_ops_check(const CheckParams& c) {
  need_even(c);
  Report rep;
  const int N = c.N, n = N / 2;
  Window w(N, c.window);
  auto R = sample_set(N, c.r_bound);
  for (int p : p_values(c, 1, n)) {
    auto spec = h_spec(c, FiberType::fund(p));
    for (FamilyKind k : {FamilyKind::Min, FamilyKind::Int, FamilyKind::Max})
      rep.append(invariance_report(build_family(spec, fam(k, true), w), AlgebraKind::H, R),
                 "p=" + std::to_string(p) + " " + to_string(k));
  }
  Tally span6("invariant vectors over unit pairs span the hyperplane bar(k+beta)^perp");
  Tally small("small algebra sp_{N-2} has dim (n-1)(2n-1) and is closed under brackets");
  Tally comm("pi and T commute with the invariant operators");
  for (std::size_t i = 0; i < w.size(); ++i) {
    Degree k = w.degree(i);
    if (!generic(k, c.beta) || !w.interior(k)) continue;
    Vector kb = shifted(k, c.beta);
    std::vector<Vector> ts;
    bool perp = true;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        Vector t = invariant_vec(AlgebraKind::H, kb, Vector::unit(N, a), Vector::unit(N, b));
        perp = perp && sympl_form(kb, t).is_zero();
        ts.push_back(std::move(t));
      }
    span6.check(k, perp && span(ts, static_cast<std::size_t>(N)).dim() == static_cast<std::size_t>(N - 1));
    SmallAlgebra sa = small_algebra(AlgebraKind::H, kb);
    bool closed = sa.dim() == static_cast<std::size_t>((n - 1) * (2 * n - 1));
    for (const auto& x : sa.generators)
      for (const auto& y : sa.generators) closed = closed && sa.span.contains(commutator(x, y).flatten());
    small.check(k, closed);
    bool ok = true;
    for (const auto& v : omega_span(AlgebraKind::H, kb, R).basis_vectors()) {
      Matrix om = unflatten(v, static_cast<std::size_t>(N));
      for (int p = 0; p < N && ok; ++p) {
        Matrix pi = map_matrix({MapKind::Pi, p}, k, c.beta), T = map_matrix({MapKind::T, p + 1}, k, c.beta);
        ok = pi * gl_matrix(om, p) == gl_matrix(om, p + 1) * pi && T * gl_matrix(om, p + 1) == gl_matrix(om, p) * T;
      }
    }
    comm.check(k, ok);
  }
  span6.flush(rep);
  small.flush(rep);
  comm.flush(rep);
  return rep;
}

inline Report homology_check(const CheckParams& c) {
  need_even(c);
  Report rep;
  Window w(c.N, c.window);
  for (int p = 0; p <= c.N; ++p) {
    if (c.p && *c.p != p) continue;
    rep.append(compare_with_prediction(ComplexId::DeRham, c.N, p, c.beta, w));
    rep.append(compare_with_prediction(ComplexId::TChain, c.N, p, c.beta, w));
    if (p >= 1 && p <= c.N / 2) {
      rep.append(compare_with_prediction(ComplexId::FSq, c.N, p, c.beta, w));
      rep.append(compare_with_prediction(ComplexId::FSqFund, c.N, p, c.beta, w));
    }
  }
  return rep;
}

// How a check uses p: not at all, all valid values in one run, or one run per p.
enum class PMode { None, Sweep, Each };

struct CatalogueEntry {
  std::string id;
  std::function<Report(const CheckParams&)> run;
  PMode pmode;
  bool probe;  // closure-based
  // Whether (N, beta, p) is a valid point; p is ignored unless pmode is Each.
  std::function<bool(int N, const Vector& beta, int p)> valid;
};

inline bool even(int N, const Vector&, int) { return N % 2 == 0; }
inline bool any_n(int N, const Vector&, int) { return N >= 2; }
inline bool only_two(int N, const Vector&, int) { return N == 2; }
inline bool fund_p(int N, const Vector&, int p) { return N % 2 == 0 && p >= 1 && p <= N / 2; }
inline bool unique_w_p(int N, const Vector& beta, int p) {
  return N >= 2 && p >= (beta_integral(beta) ? 0 : 1) && p <= N - 1;
}

}  // namespace detail

using detail::OracleDims;
using detail::oracle_fiber_dims;

inline const std::vector<detail::CatalogueEntry>& catalogue() {
  using namespace detail;
  static const std::vector<CatalogueEntry> c{
      {"L3-span", l3_span, PMode::None, false, even},
      {"JH-quotient", jh_quotient, PMode::Sweep, false, even},
      {"irreducible-min", irreducible_min, PMode::Each, true, fund_p},
      {"uniqueness", uniqueness, PMode::Each, true, fund_p},
      {"main-classification", main_classification, PMode::Each, true, fund_p},
      {"criterion-sym2", criterion_sym2, PMode::None, true, only_two},
      {"composition", composition, PMode::Sweep, false, even},
      {"cor-p0", cor_p0, PMode::None, true, even},
      {"TW", tw, PMode::None, true, only_two},
      {"TS", ts, PMode::None, true, only_two},
      {"classify-W", classify_w, PMode::Sweep, true, any_n},
      {"unique-W", unique_w, PMode::Each, true, unique_w_p},
      {"dim-fundamental", dim_fundamental, PMode::Sweep, false, even},
      {"theta-iso", theta_iso, PMode::None, false, even},
      {"j-char", j_char, PMode::None, false, any_n},
      {"module-maps", module_maps, PMode::Sweep, false, even},
      {"inclusion-chain", inclusion_chain, PMode::Sweep, false, even},
      {"fiber-equalities", fiber_equalities, PMode::Sweep, false, even},
      {"invariant-ops", invariant_ops_check, PMode::Sweep, false, even},
      {"homology", homology_check, PMode::Sweep, false, even},
  };
  return c;
}

inline std::vector<std::string> catalogue_ids() {
  std::vector<std::string> out;
  for (const auto& e : catalogue()) out.push_back(e.id);
  return out;
}

inline const detail::CatalogueEntry& catalogue_entry(const std::string& id) {
  for (const auto& e : catalogue())
    if (e.id == id) return e;
  throw std::invalid_argument("unknown check id: " + id);
}

inline CheckResult run_check(const std::string& id, const CheckParams& params) {
  const auto& e = catalogue_entry(id);
  detail::require(params.N >= 1 && params.N <= kMaxRank, "N out of range");
  detail::require(params.beta.size() == static_cast<std::size_t>(params.N), "beta must have length N");
  detail::require(params.alpha.size() == static_cast<std::size_t>(params.N), "alpha must have length N");
  detail::require(params.window >= 0 && params.r_bound >= 1 && params.probes >= 0, "bad window, R bound or probe count");
  if (!e.valid(params.N, params.beta, params.p.value_or(1)))
    throw std::invalid_argument(id + ": parameters outside the check's range");
  Report rep = e.run(params);
  return {id, params, rep.status(), std::move(rep.details), e.probe ? kDeskScale : ""};
}

// Valid parameter points for one check with N in Ns and beta in {0, (1/2, 0, ..., 0)}.
inline std::vector<CheckParams> grid_for(const std::string& id, const std::vector<int>& Ns, int window) {
  const auto& e = catalogue_entry(id);
  std::vector<CheckParams> out;
  for (int N : Ns) {
    Vector half(static_cast<std::size_t>(N));
    half[0] = Scalar(1, 2);
    for (const Vector& beta : {Vector(static_cast<std::size_t>(N)), half}) {
      auto base = CheckParams::make(N, std::nullopt, beta, window);
      if (e.pmode != detail::PMode::Each) {
        if (e.valid(N, beta, 1)) out.push_back(base);
        continue;
      }
      for (int p = 0; p <= N; ++p)
        if (e.valid(N, beta, p)) {
          auto c = base;
          c.p = p;
          out.push_back(c);
        }
    }
  }
  return out;
}

// The default grid: N in {2, 4}, both betas, window 2.
inline std::vector<std::pair<std::string, CheckParams>> default_grid() {
  std::vector<std::pair<std::string, CheckParams>> out;
  for (const auto& id : catalogue_ids())
    for (auto& c : grid_for(id, {2, 4}, 2)) out.emplace_back(id, std::move(c));
  return out;
}

}  // namespace slmod
