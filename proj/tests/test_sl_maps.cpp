#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <map>

#include "slmod/sl_maps.hpp"

using namespace slmod;

namespace {

const Vector kHalf{Scalar(1, 2), 0, 0, 0};

Vector mono(int N, ExtIndex idx) { return to_dense(ExtVector::monomial(N, std::move(idx))); }

// beta = 0 and k = e1, so k + beta = e1
const Vector kE1Beta{0, 0, 0, 0};
const Degree kE1{1, 0, 0, 0};

}  // namespace

TEST_CASE("symplectic frame examples") {
  auto f = symplectic_extend(Vector::unit(4, 0));
  REQUIRE(f.size() == 4);
  CHECK(f[0] == Vector::unit(4, 0));
  CHECK(f[1] == -Vector::unit(4, 2));
  CHECK(f[2] == Vector::unit(4, 1));
  CHECK(f[3] == -Vector::unit(4, 3));
  auto g = symplectic_extend(Vector::unit(4, 2));
  CHECK(g[1] == Vector::unit(4, 0));
  CHECK_THROWS_AS(symplectic_extend(Vector(4)), std::invalid_argument);
}

TEST_CASE("symplectic frames are hyperbolic") {
  for (const auto& r : sample_set(6, 1)) {
    auto f = symplectic_extend(r.as_vector() + Vector{Scalar(1, 3), 0, 0, 0, 0, 0});
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j) {
        Scalar want = (i % 2 == 0 && j == i + 1) ? Scalar(1) : Scalar(0);
        CHECK(sympl_form(f[i], f[j]) == want);
      }
  }
}

TEST_CASE("map matrices at k + beta = e1") {
  Degree k = kE1;
  Vector beta = kE1Beta;
  CHECK(map_matrix({MapKind::Pi, 0}, k, beta).col(0) == Vector::unit(4, 0));
  CHECK(map_matrix({MapKind::T, 1}, k, beta).col(2) == Vector{1});
  CHECK(map_matrix({MapKind::F, 1}, k, beta).col(2) == -Vector::unit(4, 0));
  CHECK(map_matrix({MapKind::F, 1}, k, beta) == gl_matrix(rank_one_sym(Vector::unit(4, 0)), 1));
  CHECK_THROWS_AS(map_matrix({MapKind::T, 0}, k, beta), std::invalid_argument);
  CHECK_THROWS_AS(map_matrix({MapKind::Pi, 4}, k, beta), std::invalid_argument);
}

TEST_CASE("f_p is the derivation of x bar(x)^T") {
  Vector x{Scalar(3, 2), 1, -1, 2, 0, Scalar(1, 3)};
  for (int p = 0; p <= 5; ++p)
    CHECK(contraction_matrix(x, p + 1) * wedge_matrix(x, p) == gl_matrix(rank_one_sym(x), p));
}

TEST_CASE("the maps are module maps") {
  auto spec = ActionSpec::make(AlgebraKind::H, 4, kHalf, FiberType::lambda(0));
  Window w(4, 1);
  auto R = sample_set(4, 1);
  CHECK(verify_module_map({MapKind::T, 2}, spec, w, R).passed());
  CHECK(verify_module_map({MapKind::Pi, 1}, spec, w, R).passed());
  for (int p = 2; p <= 4; ++p) CHECK(verify_module_map({MapKind::ThetaTilde, p}, spec, w, R).passed());
  for (int p = 0; p <= 3; ++p) CHECK(verify_module_map({MapKind::F, p}, spec, w, R).passed());
}

TEST_CASE("pi is a W and S module map") {
  auto R = sample_set(3, 1);
  Window w(3, 1);
  for (AlgebraKind kind : {AlgebraKind::W, AlgebraKind::S}) {
    auto spec = ActionSpec::make(kind, 3, Vector{Scalar(1, 2), Scalar(-1, 3), 0}, FiberType::lambda(0));
    for (int p = 0; p <= 2; ++p) CHECK(verify_module_map({MapKind::Pi, p}, spec, w, R).passed());
  }
}

TEST_CASE("a sign-flipped T_2 is caught") {
  auto spec = ActionSpec::make(AlgebraKind::H, 4, kHalf, FiberType::lambda(2));
  ActionSpec dst = spec.with_fiber(FiberType::lambda(1));
  // drop the alternating sign: sum_i (bar x | v_i) v_1 ^ .. omitted .. ^ v_p
  auto mutated = [&](const Degree& k) {
    Vector bx = bar(shifted(k, kHalf));
    const ExtBasis& src = ext_basis(4, 2);
    const ExtBasis& tgt = ext_basis(4, 1);
    Matrix m(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      ExtIndex idx = src.indices(j);
      for (int t : idx) m(tgt.index(src.mask(j) & ~(Mask{1} << t)), j) += bx[static_cast<std::size_t>(t)];
    }
    return m;
  };
  Report rep = verify_intertwiner(spec, dst, mutated, Window(4, 1), sample_set(4, 1), "mutated T_2");
  CHECK(rep.status() == Status::Fail);
}

TEST_CASE("family fibers at k + beta = e1") {
  const int N = 4, p = 2;
  Subspace mn = family_fiber({FamilyKind::Min, false, SpecialPolicy::Omit}, N, p, kE1, kE1Beta);
  CHECK(mn == span({mono(4, {0, 1}), mono(4, {0, 3})}, 6));
  CHECK(family_fiber({FamilyKind::Max, false, SpecialPolicy::Omit}, N, p, kE1, kE1Beta).dim() == 4);
  CHECK(family_fiber({FamilyKind::Max, true, SpecialPolicy::Omit}, N, p, kE1, kE1Beta).dim() == 3);
  // the special fiber
  Vector beta{-1, 0, 0, 0};
  CHECK(family_fiber({FamilyKind::Min, false, SpecialPolicy::Full}, N, p, kE1, beta).dim() == 6);
  CHECK(family_fiber({FamilyKind::Min, false, SpecialPolicy::Omit}, N, p, kE1, beta).dim() == 0);
  CHECK(family_fiber({FamilyKind::Min, true, SpecialPolicy::Full}, N, p, kE1, beta).dim() == 5);
}

TEST_CASE("build_family rejects bad combinations") {
  Window w(4, 0);
  auto spec = ActionSpec::make(AlgebraKind::H, 4, kHalf, FiberType::lambda(4));
  CHECK_THROWS_AS(build_family(spec, {FamilyKind::Int, false, SpecialPolicy::Omit}, w), std::invalid_argument);
  CHECK_THROWS_AS(build_family(spec, {FamilyKind::Min, true, SpecialPolicy::Omit}, w), std::invalid_argument);
  CHECK_THROWS_AS(build_family(spec.with_fiber(FiberType::lambda(0)), {FamilyKind::FullW, false, SpecialPolicy::Omit}, w),
                  std::invalid_argument);
}

TEST_CASE("generic fiber dimensions match the oracle") {
  // frozen from tests/oracle/oracle.py: {N, p} -> MIN, MAX, FULLW, INT (-1 where undefined)
  const std::map<std::pair<int, int>, std::array<int, 4>> frozen{
      {{4, 0}, {0, 1, -1, 1}}, {{4, 1}, {1, 3, 1, 3}},   {{4, 2}, {2, 4, 3, 3}},   {{4, 3}, {1, 3, 3, 1}},
      {{4, 4}, {0, 1, 1, -1}}, {{6, 1}, {1, 5, 1, 5}},   {{6, 2}, {4, 11, 5, 10}}, {{6, 3}, {6, 14, 10, 10}},
      {{6, 4}, {4, 11, 10, 5}}, {{6, 5}, {1, 5, 5, 1}}, {{6, 6}, {0, 1, 1, -1}}};
  const std::map<int, std::vector<Vector>> points{
      {4, {Vector{1, 0, 0, 0}, Vector{1, -1, 0, 2}, Vector{Scalar(3, 2), 1, -1, 0}}},
      {6, {Vector{1, 0, 0, 0, 0, 0}, Vector{Scalar(1, 2), 1, 0, 0, -1, 0}}}};
  const FamilyKind kinds[] = {FamilyKind::Min, FamilyKind::Max, FamilyKind::FullW, FamilyKind::Int};
  for (const auto& [np, want] : frozen) {
    auto [N, p] = np;
    for (const auto& x : points.at(N)) {
      Degree k = Degree::zero(N);
      for (int i = 0; i < 4; ++i) {
        if (want[static_cast<std::size_t>(i)] < 0) continue;
        Subspace s = family_fiber({kinds[i], false, SpecialPolicy::Omit}, N, p, k, x);
        CHECK(s.dim() == static_cast<std::size_t>(want[static_cast<std::size_t>(i)]));
      }
      // closed forms
      if (p >= 1 && p <= N - 1) {
        CHECK(want[0] == static_cast<int>(binom(N - 2, p - 1)));
        CHECK(want[1] == static_cast<int>(binom(N, p) - binom(N - 2, p - 1)));
        CHECK(want[2] == static_cast<int>(binom(N - 1, p - 1)));
        CHECK(want[3] == static_cast<int>(binom(N - 2, p - 1) + binom(N - 2, p)));
      }
    }
  }
}

TEST_CASE("fundamental fiber dimensions match the oracle") {
  // frozen from tests/oracle/oracle.py: MIN_F, MAX_F, INT_F
  const std::map<std::pair<int, int>, std::array<std::size_t, 3>> frozen{
      {{4, 1}, {1, 3, 3}}, {{4, 2}, {2, 3, 2}}, {{6, 1}, {1, 5, 5}}, {{6, 2}, {4, 10, 9}}, {{6, 3}, {5, 9, 5}}};
  for (const auto& [np, want] : frozen) {
    auto [N, p] = np;
    Vector x = N == 4 ? Vector{1, -1, 0, 2} : Vector{1, -1, 0, 1, 0, 1};
    Degree k = Degree::zero(N);
    CHECK(family_fiber({FamilyKind::Min, true, SpecialPolicy::Omit}, N, p, k, x).dim() == want[0]);
    CHECK(family_fiber({FamilyKind::Max, true, SpecialPolicy::Omit}, N, p, k, x).dim() == want[1]);
    CHECK(family_fiber({FamilyKind::Int, true, SpecialPolicy::Omit}, N, p, k, x).dim() == want[2]);
  }
}

TEST_CASE("inclusion chains and fiber equalities") {
  for (int N : {4, 6}) {
    const int n = N / 2;
    Vector beta(static_cast<std::size_t>(N));
    beta[0] = Scalar(1, 2);
    beta[1] = Scalar(-1, 3);
    for (const auto& k : sample_set(N, 1)) {
      if (N == 6 && k.sup_norm() > 0 && (k[0] + k[1] + k[2]) % 3 != 0) continue;  // thin the N = 6 sample
      for (int p = 1; p <= N - 1; ++p) {
        auto fib = [&](FamilyKind kind, bool fund) { return family_fiber({kind, fund, SpecialPolicy::Omit}, N, p, k, beta); };
        Subspace mn = fib(FamilyKind::Min, false), fw = fib(FamilyKind::FullW, false), in = fib(FamilyKind::Int, false),
                 mx = fib(FamilyKind::Max, false);
        CHECK(fw.contains(mn));
        CHECK(mx.contains(fw));
        CHECK(in.contains(mn));
        CHECK(mx.contains(in));
        // ker T_p = INT
        CHECK(kernel(contraction_matrix(shifted(k, beta), p)) == in);
        if (p > n) continue;
        CHECK(fib(FamilyKind::Min, true) == fib(FamilyKind::FullW, true));
        if (p == 1) CHECK(fib(FamilyKind::Max, true) == fib(FamilyKind::Int, true));
        if (p == n) CHECK(fib(FamilyKind::Int, true) == fib(FamilyKind::Min, true));
        if (p > 1) {
          // INT on Fund(p) is the kernel of theta_{p+1} pi_p there
          Matrix m = theta_matrix(N, p + 1) * wedge_matrix(shifted(k, beta), p);
          CHECK(kernel_on(m, fundamental_subspace(N, p)) == fib(FamilyKind::Int, true));
        }
      }
    }
  }
}

TEST_CASE("quotient dimension examples") {
  auto spec = ActionSpec::make(AlgebraKind::H, 4, Vector{1, Scalar(1, 2), 0, 0}, FiberType::lambda(2));
  Window w(4, 0);
  auto L2 = full_family(spec, w);
  auto mx = build_family(spec, {FamilyKind::Max, false, SpecialPolicy::Omit}, w);
  auto in = build_family(spec, {FamilyKind::Int, false, SpecialPolicy::Omit}, w);
  auto mn = build_family(spec, {FamilyKind::Min, false, SpecialPolicy::Omit}, w);
  CHECK(quotient_dims(L2, mx).front().second == 2);
  CHECK(quotient_dims(in, mn).front().second == 1);
  auto mxf = build_family(spec, {FamilyKind::Max, true, SpecialPolicy::Omit}, w);
  auto inf = build_family(spec, {FamilyKind::Int, true, SpecialPolicy::Omit}, w);
  CHECK(quotient_dims(mxf, inf).front().second == 1);
  CHECK_THROWS_AS(quotient_dims(mn, mx), std::invalid_argument);
}

TEST_CASE("composition bookkeeping for the fundamental fibers") {
  // m_p = dim MIN on Fund(p); frozen from tests/oracle/oracle.py
  const std::map<int, std::vector<std::size_t>> m{{4, {1, 2}}, {6, {1, 4, 5}}};
  for (const auto& [N, mp] : m) {
    const int n = N / 2;
    auto M = [&](int p) -> std::size_t { return p >= 1 && p <= n ? mp[static_cast<std::size_t>(p - 1)] : 0; };
    for (int p = 1; p <= n; ++p) {
      std::size_t total = fundamental_subspace(N, p).dim();
      std::size_t want = 2 * M(p) + (p < n ? M(p + 1) : 0) + (p > 1 ? M(p - 1) : 0);
      CHECK(total == want);
    }
  }
}
