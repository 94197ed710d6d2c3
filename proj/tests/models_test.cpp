#include "doctest.h"
#include "hblab/models.hpp"

using namespace hblab;

namespace {

Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("rho_n follows the three cases of n") {
  const Vec x = v({1, 2});
  CHECK(eval(ex4_seminorm(1), x) == 2);   // odd: |x| + |y|/2
  CHECK(eval(ex4_seminorm(3), x) == 6);
  CHECK(eval(ex4_seminorm(2), x) == 6);   // power of two: n(|x| + |y|)
  CHECK(eval(ex4_seminorm(4), x) == 12);
  CHECK(eval(ex4_seminorm(6), x) == 12);  // even non-power: n max
  CHECK(eval(ex4_seminorm(10), v({-3, 1})) == 30);
}

TEST_CASE("build_ex4 tops the family with a power of two") {
  const Model m = build_ex4(8, Scalar(3));
  CHECK(m.family.size() == 32);
  CHECK(m.family[31].label() == "rho32");
  CHECK(m.y.dim() == 1);
  CHECK(m.candidate_limit <= m.family.size());
  CHECK(m.candidate_limit >= 8);
  CHECK(m.functional("f") == v({3}));
  CHECK_THROWS_AS(m.functional("g"), PreconditionError);
}

TEST_CASE("subset names and sites") {
  CHECK(subset_name(0b101) == "{1,3}");
  CHECK(subset_name(0b1) == "{1}");
  CHECK(subset_sites(0b1010) == std::vector<std::size_t>{1, 3});
}

TEST_CASE("C_p(Z) max model on three sites with A = {3}") {
  const Model m = build_cpz(3, {2}, CpzKind::Max);
  CHECK(m.family.size() == 7);
  CHECK(m.y.dim() == 2);
  CHECK(m.candidate_limit == 7);
  CHECK(m.family.index_of("rho{1,2,3}").has_value());
  const Vec x = v({1, -4, 2});
  CHECK(eval(m.family[*m.family.index_of("rho{1,3}")], x) == 2);
  CHECK(eval(m.family[*m.family.index_of("rho{1,2,3}")], x) == 4);
  for (std::size_t i = 0; i < m.y.dim(); ++i) CHECK(m.y.basis()(i, 2) == 0);
}

TEST_CASE("C_p(Z) sum and mixed models") {
  const Model sum = build_cpz(3, {0}, CpzKind::Sum);
  CHECK(sum.family.size() == 7);
  CHECK(eval(sum.family[*sum.family.index_of("rho{1,2,3}")], v({1, -4, 2})) == 7);

  const Model mixed = build_cpz(4, {0}, CpzKind::Mixed);
  CHECK(mixed.family.size() == 30);
  CHECK(mixed.candidate_limit == 25);  // 15 rho_F and the 10 mu_F with |F| <= 2
  for (std::size_t i = mixed.candidate_limit; i < mixed.family.size(); ++i)
    CHECK(mixed.family[i].label().rfind("mu", 0) == 0);
  const Vec x = v({1, -4, 2, 0});
  CHECK(eval(mixed.family[*mixed.family.index_of("rho{2,3}")], x) == 8);
  CHECK(eval(mixed.family[*mixed.family.index_of("mu{2,3}")], x) == 12);
}

TEST_CASE("cpz_max_family covers every nonempty subset") {
  CHECK(cpz_max_family(1).size() == 1);
  CHECK(cpz_max_family(4).size() == 15);
  CHECK(cpz_max_family(4).dim() == 4);
}

TEST_CASE("span of f0 and the two-dimensional model") {
  const Model s = build_span_f0(v({1, -2, 2}));
  CHECK(s.y.dim() == 1);
  CHECK(s.functional("f") == v({1}));
  CHECK(s.family.size() == 7);

  const P5Model p = build_p5(v({1, 1, -1, 0}), v({0, 1, 0, 1}));
  CHECK(p.model.y.dim() == 2);
  CHECK(p.maximizers == std::vector<std::size_t>{0, 1, 2});
  REQUIRE(p.triple.has_value());
  CHECK(abs(p.triple->a) + abs(p.triple->b) == 1);
  CHECK(dirac(4, 2) == v({0, 0, 1, 0}));
}

TEST_CASE("builders reject bad parameters") {
  CHECK_THROWS_AS(ex4_seminorm(0), PreconditionError);
  CHECK_THROWS_AS(build_ex4(5, Scalar(1)), PreconditionError);
  CHECK_THROWS_AS(build_cpz(11, {0}, CpzKind::Max), PreconditionError);
  CHECK_THROWS_AS(build_cpz(3, {}, CpzKind::Max), PreconditionError);
  CHECK_THROWS_AS(build_cpz(3, {0, 1, 2}, CpzKind::Sum), PreconditionError);
  CHECK_THROWS_AS(build_cpz(3, {3}, CpzKind::Max), PreconditionError);
  CHECK_THROWS_AS(cpz_max_family(0), PreconditionError);
  CHECK_THROWS_AS(build_span_f0(v({0, 0})), PreconditionError);
  CHECK_THROWS_AS(build_p5(v({1, 1, -1}), v({2, 2, -2})), PreconditionError);
  CHECK_THROWS_AS(build_p5(v({1, 1, 0}), v({0, 1, 1})), PreconditionError);
  CHECK_THROWS_AS(build_p5(v({1, 1, -1}), v({0, 1})), DimensionError);
}
