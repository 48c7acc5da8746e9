#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "slmod/exact_linalg.hpp"

using namespace slmod;

TEST_CASE("scalar arithmetic stays exact") {
  Scalar a(1, 3), b(1, 6);
  CHECK(a + b == Scalar(1, 2));
  CHECK(a - b == Scalar(1, 6));
  CHECK(a * b == Scalar(1, 18));
  CHECK(a / b == Scalar(2));
  CHECK(Scalar(4, -6) == Scalar(-2, 3));
  CHECK(Scalar(-2, 3).to_string() == "-2/3");
  CHECK(Scalar(5).to_string() == "5");
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
}

TEST_CASE("scalar promotes to big integers and back") {
  Scalar x(std::int64_t{1} << 62);
  Scalar y = x * x * x;
  CHECK(y.is_big());
  CHECK(y.to_string() == "98079714615416886934934209737619787751599303819750539264");
  Scalar z = y / (x * x);
  CHECK_FALSE(z.is_big());
  CHECK(z == x);
  Scalar big_frac = Scalar(1) / y;
  CHECK((big_frac * y).is_one());
  CHECK(x + x > x);
}

TEST_CASE("scalar parsing") {
  CHECK(Scalar::parse("1/2") == Scalar(1, 2));
  CHECK(Scalar::parse(" -3 ") == Scalar(-3));
  CHECK(Scalar::parse("4/8") == Scalar(1, 2));
  CHECK(Scalar::parse("123456789012345678901234567890").is_big());
  CHECK_THROWS(Scalar::parse("x"));
  CHECK_THROWS(Scalar::parse("1/0"));
  CHECK_THROWS(Scalar::parse("1.5"));
}

TEST_CASE("rref of a rank one row") {
  Subspace s = rref(Matrix{{2, 4}});
  REQUIRE(s.dim() == 1);
  CHECK(s.basis_vector(0) == Vector{1, 2});
  CHECK(s.pivots() == std::vector<std::size_t>{0});
}

TEST_CASE("kernel of [1 2]") {
  Subspace k = kernel(Matrix{{1, 2}});
  REQUIRE(k.dim() == 1);
  CHECK(k.basis_vector(0) == (Vector{1, Scalar(-1, 2)}));
}

TEST_CASE("intersection of two coordinate planes") {
  Subspace a = span({Vector{1, 0, 0}, Vector{0, 1, 0}}, 3);
  Subspace b = span({Vector{0, 1, 0}, Vector{0, 0, 1}}, 3);
  Subspace c = intersect(a, b);
  REQUIRE(c.dim() == 1);
  CHECK(c.basis_vector(0) == (Vector{0, 1, 0}));
  CHECK(sum(a, b).dim() == 3);
}

TEST_CASE("image restricted to a subspace") {
  Matrix m{{1, 1, 0}, {0, 0, 1}, {0, 0, 0}};
  Subspace s = span({Vector{1, -1, 0}, Vector{0, 0, 1}}, 3);
  Subspace im = image(m, s);
  CHECK(im.dim() == 1);
  CHECK(im.basis_vector(0) == (Vector{0, 1, 0}));
  CHECK(kernel_on(m, s).dim() == 1);
}

TEST_CASE("dimension mismatches raise") {
  CHECK_THROWS_AS(member(Subspace(3), Vector{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(sum(Subspace(3), Subspace(2)), std::invalid_argument);
  CHECK_THROWS_AS(Matrix(2, 3) * Matrix(2, 3), std::invalid_argument);
}

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      int v = static_cast<int>(rng() % 7) - 3;
      if (rng() % 3 == 0) v = 0;
      m(i, j) = Scalar(v, 1 + static_cast<int>(rng() % 3));
    }
  return m;
}

}  // namespace

TEST_CASE("rank-nullity, idempotence and canonical form on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    Matrix m = random_matrix(rng, r, c);
    Subspace e = rref(m);
    Subspace k = kernel(m);
    CHECK(e.dim() + k.dim() == c);
    CHECK(rref(e.basis()) == e);
    for (std::size_t i = 0; i < k.dim(); ++i) CHECK(m.apply(k.basis_vector(i)).is_zero());
    // row operations do not change the canonical form
    Matrix shuffled = m;
    if (r > 1) {
      for (std::size_t j = 0; j < c; ++j) shuffled(0, j) += Scalar(3) * m(r - 1, j);
      for (std::size_t j = 0; j < c; ++j) std::swap(shuffled(0, j), shuffled(r - 1, j));
    }
    CHECK(rref(shuffled) == e);
  }
}

TEST_CASE("intersection and sum satisfy the dimension formula") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + rng() % 5;
    Subspace a = rref(random_matrix(rng, 1 + rng() % n, n));
    Subspace b = rref(random_matrix(rng, 1 + rng() % n, n));
    Subspace i = intersect(a, b);
    CHECK(sum(a, b).dim() + i.dim() == a.dim() + b.dim());
    CHECK(a.contains(i));
    CHECK(b.contains(i));
  }
}

TEST_CASE("incremental builder agrees with batch rref") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 6;
    Matrix m = random_matrix(rng, 1 + rng() % 7, n);
    SubspaceBuilder b(n);
    for (std::size_t i = 0; i < m.rows(); ++i) b.insert(m.row(i));
    CHECK(b.build() == rref(m));
  }
}

TEST_CASE("sparse product matches dense product") {
  std::mt19937_64 rng(5);
  Matrix m = random_matrix(rng, 5, 5);
  Vector v{1, Scalar(1, 2), 0, -2, 3};
  SparseMatrix s(m);
  CHECK(s.apply(v) == m.apply(v));
  CHECK(s.apply_shifted(Scalar(2), v) == m.apply(v) + Scalar(2) * v);
}
