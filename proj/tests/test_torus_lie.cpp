#include <catch2/catch_amalgamated.hpp>

#include "slmod/torus_lie.hpp"

using namespace slmod;

TEST_CASE("bar and the symplectic form") {
  CHECK(bar(Vector{1, 2, 3, 4}) == (Vector{3, 4, -1, -2}));
  CHECK(bar(Vector::unit(4, 0)) == -Vector::unit(4, 2));
  CHECK(bar(Vector::unit(4, 2)) == Vector::unit(4, 0));
  CHECK(sympl_form(Vector::unit(4, 0), Vector::unit(4, 2)) == Scalar(-1));
  CHECK(sympl_form(Vector::unit(4, 2), Vector::unit(4, 0)) == Scalar(1));
  CHECK_THROWS_AS(bar(Vector{1, 2, 3}), std::invalid_argument);
  for (const auto& r : sample_set(4, 1)) {
    Vector v = r.as_vector();
    CHECK(bar(bar(v)) == -v);
    CHECK(sympl_form(v, v).is_zero());
  }
}

TEST_CASE("H bracket") {
  auto [c, d] = bracket_h(Degree{1, 0, 0, 0}, Degree{0, 0, 1, 0});
  CHECK(c == Scalar(-1));
  CHECK(d == (Degree{1, 0, 1, 0}));
  // antisymmetry
  for (const auto& r : sample_set(2, 1))
    for (const auto& s : sample_set(2, 1)) CHECK(bracket_h(r, s).first == -bracket_h(s, r).first);
}

TEST_CASE("sp generators lie in sp_N and span it") {
  for (int N : {2, 4, 6}) {
    auto basis = sp_basis(N);
    const int n = N / 2;
    CHECK(basis.size() == static_cast<std::size_t>(n * (2 * n + 1)));
    std::vector<Vector> flat;
    for (const auto& X : basis) {
      CHECK(in_sp(X));
      flat.push_back(X.flatten());
    }
    CHECK(span(flat, static_cast<std::size_t>(N * N)).dim() == basis.size());
    // the rank one elements r bar(r)^T span the same space
    std::vector<Vector> rank_one;
    for (const auto& r : sample_set(N, 1)) {
      Matrix m = rank_one_sym(r.as_vector());
      CHECK(in_sp(m));
      rank_one.push_back(m.flatten());
    }
    CHECK(span(rank_one, static_cast<std::size_t>(N * N)) == span(flat, static_cast<std::size_t>(N * N)));
  }
}

TEST_CASE("rank one examples") {
  CHECK(rank_one_sym(Vector::unit(4, 0)) == -Matrix::unit(4, 0, 2));
  CHECK(sp_generator(SpKind::U, 0, 0, 4) == -rank_one_sym(Vector::unit(4, 0)));
  CHECK_THROWS_AS(sp_generator(SpKind::X, 0, 2, 4), std::invalid_argument);
}

TEST_CASE("sample set") {
  auto R = sample_set(4, 1);
  CHECK(R.size() == 80);
  CHECK(R.front() == (Degree{-1, -1, -1, -1}));
  CHECK(sample_set(2, 2).size() == 24);
}

TEST_CASE("J-set membership") {
  auto R = sample_set(2, 1);
  CHECK(j_membership(AlgebraKind::W, Rep::lambda(1), Vector{1, 0}, {Degree{1, 0}}).holds);
  // e1 e1 in Sym^2 of the plane fails for H
  Sym2Basis b(2);
  Vector e11(3);
  e11[static_cast<std::size_t>(b.index(0, 0))] = 1;
  auto res = j_membership(AlgebraKind::H, Rep::sym2(), e11, R);
  CHECK_FALSE(res.holds);
  REQUIRE(res.witness);
  CHECK(res.witness->r.size() == 2);
  for (AlgebraKind kind : {AlgebraKind::W, AlgebraKind::S}) {
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < 3; ++i) basis.push_back(Vector::unit(3, i));
    CHECK_FALSE(j_membership(kind, Rep::sym2(), basis, R).holds);
  }
}

TEST_CASE("exterior powers lie in the J-sets") {
  auto R = sample_set(4, 1);
  for (int p = 0; p <= 4; ++p) {
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < binom(4, p); ++i) basis.push_back(Vector::unit(binom(4, p), i));
    CHECK(j_membership(AlgebraKind::H, Rep::lambda(p), basis, R).holds);
    CHECK(j_membership(AlgebraKind::W, Rep::lambda(p), basis, R).holds);
    if (p <= 3) CHECK(j_membership(AlgebraKind::S, Rep::lambda(p), basis, R).holds);
  }
}
