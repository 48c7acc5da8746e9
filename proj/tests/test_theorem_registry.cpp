#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "slmod/theorem_registry.hpp"

using namespace slmod;

namespace {

const Vector kHalf{Scalar(1, 2), 0, 0, 0};

const Detail* find(const CheckResult& r, const std::string& label) {
  for (const auto& d : r.details)
    if (d.label.find(label) != std::string::npos) return &d;
  return nullptr;
}

bool same(const CheckResult& a, const CheckResult& b) {
  if (a.status != b.status || a.details.size() != b.details.size()) return false;
  for (std::size_t i = 0; i < a.details.size(); ++i) {
    const auto &x = a.details[i], &y = b.details[i];
    if (x.degree != y.degree || x.label != y.label || x.expected != y.expected || x.actual != y.actual ||
        x.status != y.status)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("composition at N = 4, p = 2") {
  CheckResult r = run_check("composition", CheckParams::make(4, 2, kHalf, 2));
  CHECK(r.status == Status::Pass);
  const Detail* d = find(r, "chain dims MIN,INT,MAX,L");
  REQUIRE(d);
  CHECK(d->actual == Value(std::string("2,2,3,5")));
  const Detail* m = find(r, "solved m_1..m_n");
  REQUIRE(m);
  CHECK(m->actual == Value(std::string("1,2")));
}

TEST_CASE("cor-p0 and L3-span") {
  CheckResult r = run_check("cor-p0", CheckParams::make(4, std::nullopt, Vector(4), 2));
  CHECK(r.status == Status::Pass);
  CHECK(r.note == kDeskScale);
  REQUIRE(find(r, "the -beta fiber"));
  CheckResult l = run_check("L3-span", CheckParams::make(4));
  CHECK(l.status == Status::Pass);
  CHECK(find(l, "span of r bar(r)^T")->actual == dim_value(10));
  CHECK(l.note.empty());
}

TEST_CASE("oracle fiber dims") {
  OracleDims a = oracle_fiber_dims(4, 2, Vector::unit(4, 0));
  CHECK(a.min == 2);
  CHECK(a.fullw == 3u);
  CHECK(a.intm == 3u);
  CHECK(a.max == 4);
  OracleDims b = oracle_fiber_dims(4, 1, Vector::unit(4, 0));
  CHECK(b.min == 1);
  CHECK(b.fullw == 1u);
  CHECK(b.max == 3);
  CHECK(oracle_fiber_dims(6, 3, Vector::unit(6, 0)).min == binom(4, 2));
  CHECK_THROWS_AS(oracle_fiber_dims(4, 2, Vector(4)), std::invalid_argument);
}

TEST_CASE("oracle agrees with build_family") {
  for (int N : {4, 6}) {
    Vector beta(static_cast<std::size_t>(N));
    beta[0] = Scalar(1, 3);
    beta[1] = Scalar(-1, 2);
    Window w(N, 1);
    for (int p = 1; p < N; ++p) {
      auto spec = ActionSpec::make(AlgebraKind::H, N, beta, FiberType::lambda(p));
      auto mn = build_family(spec, {FamilyKind::Min, false, SpecialPolicy::Omit}, w);
      auto mx = build_family(spec, {FamilyKind::Max, false, SpecialPolicy::Omit}, w);
      auto fw = build_family(spec, {FamilyKind::FullW, false, SpecialPolicy::Omit}, w);
      auto in = build_family(spec, {FamilyKind::Int, false, SpecialPolicy::Omit}, w);
      for (std::size_t i = 0; i < w.size(); i += N == 6 ? 17 : 1) {
        OracleDims o = oracle_fiber_dims(N, p, shifted(w.degree(i), beta));
        CHECK(o.min == mn.fibers[i].dim());
        CHECK(o.max == mx.fibers[i].dim());
        CHECK(*o.fullw == fw.fibers[i].dim());
        CHECK(*o.intm == in.fibers[i].dim());
      }
    }
  }
}

TEST_CASE("bad ids and parameters") {
  CHECK_THROWS_AS(run_check("no-such-check", CheckParams::make(4)), std::invalid_argument);
  CHECK_THROWS_AS(run_check("L3-span", CheckParams::make(3)), std::invalid_argument);
  CHECK_THROWS_AS(run_check("irreducible-min", CheckParams::make(4, 3)), std::invalid_argument);
  CHECK_THROWS_AS(run_check("TW", CheckParams::make(4)), std::invalid_argument);
  CHECK_THROWS_AS(run_check("unique-W", CheckParams::make(3, 0, Vector{Scalar(1, 2), 0, 0})), std::invalid_argument);
  auto c = CheckParams::make(4);
  c.beta = Vector(3);
  CHECK_THROWS_AS(run_check("L3-span", c), std::invalid_argument);
}

TEST_CASE("catalogue and grid") {
  auto ids = catalogue_ids();
  CHECK(ids.size() == 20);
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
  for (const std::string id : {"L3-span", "JH-quotient", "irreducible-min", "uniqueness", "main-classification",
                               "criterion-sym2", "composition", "cor-p0", "TW", "TS", "classify-W", "unique-W"})
    CHECK_NOTHROW(catalogue_entry(id));
  for (const auto& id : ids) CHECK_FALSE(grid_for(id, {2, 4}, 2).empty());
  // unique-W reaches p = 0 only for integral beta
  std::set<std::pair<bool, int>> seen;
  for (const auto& c : grid_for("unique-W", {4}, 2)) seen.insert({c.beta.is_zero(), *c.p});
  CHECK(seen.count({true, 0}));
  CHECK_FALSE(seen.count({false, 0}));
  CHECK_FALSE(seen.count({true, 4}));
}

TEST_CASE("runs are deterministic, probes included") {
  auto c = CheckParams::make(4, 1, kHalf, 1);
  c.probes = 20;
  CheckResult a = run_check("uniqueness", c), b = run_check("uniqueness", c);
  CHECK(a.status == Status::Pass);
  CHECK(same(a, b));
  c.seed = 7;
  CHECK(run_check("uniqueness", c).status == Status::Pass);
}

TEST_CASE("checks at N = 2 and N = 3") {
  CHECK(run_check("criterion-sym2", CheckParams::make(2, std::nullopt, Vector{Scalar(1, 3), 0}, 2)).status == Status::Pass);
  CHECK(run_check("classify-W", CheckParams::make(3, std::nullopt, Vector{Scalar(1, 2), 0, 0}, 1)).status == Status::Pass);
  CHECK(run_check("unique-W", CheckParams::make(3, 0, Vector(3), 1)).status == Status::Pass);
  CHECK(run_check("j-char", CheckParams::make(3)).status == Status::Pass);
}
