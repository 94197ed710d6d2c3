#include <algorithm>

#include "doctest.h"
#include "hblab/dual_gauge.hpp"
#include "hblab/seminorm.hpp"
#include "support.hpp"

using namespace hblab;
using hbtest::random_nonzero_vec;
using hbtest::random_seminorm;
using hbtest::random_vec;

namespace {

// Straight from the atom formulas.
Scalar direct_eval(const PolyhedralSeminorm& rho, const Vec& x) {
  Scalar total = 0;
  for (const Atom& a : rho.atoms()) {
    Scalar acc = 0;
    for (const Vec& g : a.generators) {
      Scalar v = dot(g, x);
      if (v < 0) v = -v;
      acc = a.combine == Combine::Max ? std::max(acc, v) : acc + v;
    }
    total += acc;
  }
  return total;
}

Vec perp(const Vec& a) { return {-a[1], a[0]}; }

// In the plane both seminorms are linear between consecutive breakpoint rays,
// so comparing them on those rays decides the pointwise order.
std::vector<Vec> breakpoint_rays(const std::vector<PolyhedralSeminorm>& rhos) {
  std::vector<Vec> normals;
  for (const auto& rho : rhos) {
    for (const Atom& a : rho.atoms()) {
      for (std::size_t i = 0; i < a.generators.size(); ++i) {
        normals.push_back(a.generators[i]);
        if (a.combine != Combine::Max) continue;
        for (std::size_t j = i + 1; j < a.generators.size(); ++j) {
          normals.push_back(sub(a.generators[i], a.generators[j]));
          normals.push_back(add(a.generators[i], a.generators[j]));
        }
      }
    }
  }
  std::vector<Vec> rays;
  for (const Vec& n : normals) {
    if (is_zero(n)) continue;
    rays.push_back(perp(n));
    rays.push_back(negate(perp(n)));
  }
  return rays;
}

bool plane_dominates(const PolyhedralSeminorm& rho, const PolyhedralSeminorm& mu) {
  for (const Vec& r : breakpoint_rays({rho, mu})) {
    if (direct_eval(mu, r) > direct_eval(rho, r)) return false;
  }
  return true;
}

// min over t of rho(x - t z): convex piecewise linear in t, so the minimum sits
// at t = 0 (constant case) or at a breakpoint.
Scalar line_quotient(const PolyhedralSeminorm& rho, const Vec& x, const Vec& z) {
  std::vector<Scalar> ts{0};
  auto add_break = [&](const Vec& a) {
    const Scalar az = dot(a, z);
    if (az != 0) ts.push_back(dot(a, x) / az);
  };
  for (const Atom& a : rho.atoms()) {
    for (std::size_t i = 0; i < a.generators.size(); ++i) {
      add_break(a.generators[i]);
      if (a.combine != Combine::Max) continue;
      for (std::size_t j = i + 1; j < a.generators.size(); ++j) {
        add_break(sub(a.generators[i], a.generators[j]));
        add_break(add(a.generators[i], a.generators[j]));
      }
    }
  }
  Scalar best = direct_eval(rho, x);
  for (const Scalar& t : ts) best = std::min(best, direct_eval(rho, sub(x, scale(t, z))));
  return best;
}

PolyhedralSeminorm sup_norm(std::size_t n, const std::string& label = "inf") {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(unit_vector(n, i));
  return PolyhedralSeminorm(label, {Atom{Combine::Max, gens}});
}

PolyhedralSeminorm one_norm(std::size_t n, const std::string& label = "one") {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(unit_vector(n, i));
  return PolyhedralSeminorm(label, {Atom{Combine::Sum, gens}});
}

}  // namespace

TEST_CASE("construction rejects malformed atoms") {
  CHECK_THROWS_AS(PolyhedralSeminorm("e", {}), PreconditionError);
  CHECK_THROWS_AS(PolyhedralSeminorm("e", {Atom{Combine::Max, {}}}), PreconditionError);
  CHECK_THROWS_AS(PolyhedralSeminorm("e", {Atom{Combine::Max, {{1, 0}, {1}}}}), DimensionError);
  const auto rho = sup_norm(2);
  CHECK_THROWS_AS(eval(rho, {1, 2, 3}), DimensionError);
}

TEST_CASE("eval matches the atom formulas, homogeneity and subadditivity") {
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = static_cast<std::size_t>(hbtest::uniform_int(1, 4));
    const auto rho = random_seminorm(n);
    const Vec x = random_vec(n);
    const Vec y = random_vec(n);
    const Scalar t = hbtest::small_rational();
    CHECK(eval(rho, x) == direct_eval(rho, x));
    CHECK(eval(rho, scale(t, x)) == abs(t) * eval(rho, x));
    CHECK(eval(rho, add(x, y)) <= eval(rho, x) + eval(rho, y));
  }
}

TEST_CASE("restriction is the pullback along the basis") {
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = static_cast<std::size_t>(hbtest::uniform_int(2, 4));
    const std::size_t d = static_cast<std::size_t>(hbtest::uniform_int(1, static_cast<long>(n)));
    const auto rho = random_seminorm(n);
    const Subspace y = hbtest::random_subspace(n, d);
    const auto r = restrict(rho, y);
    for (int k = 0; k < 5; ++k) {
      const Vec c = random_vec(d);
      CHECK(eval(r, c) == eval(rho, y.embed(c)));
    }
  }
}

TEST_CASE("kernel is the common null space of the generators") {
  const PolyhedralSeminorm rho("r", {Atom{Combine::Max, {{1, 1, 0}}}, Atom{Combine::Sum, {{0, 0, 2}, {2, 2, 4}}}});
  const Subspace k = seminorm_kernel(rho);
  CHECK(k.dim() == 1);
  CHECK(k.contains(Vec{1, -1, 0}));
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = static_cast<std::size_t>(hbtest::uniform_int(1, 4));
    const auto r = random_seminorm(n);
    const Subspace ker = seminorm_kernel(r);
    for (std::size_t i = 0; i < ker.dim(); ++i) CHECK(direct_eval(r, ker.basis_vector(i)) == 0);
    std::vector<Vec> gens;
    for (const Atom& a : r.atoms()) gens.insert(gens.end(), a.generators.begin(), a.generators.end());
    CHECK(ker.dim() + rank(Mat::from_rows(gens, n)) == n);
  }
}

TEST_CASE("domination agrees with the planar breakpoint oracle") {
  int true_cases = 0;
  for (int it = 0; it < 200; ++it) {
    const auto rho = random_seminorm(2, "rho");
    const auto mu = random_seminorm(2, "mu");
    const bool expected = plane_dominates(rho, mu);
    CHECK(dominates(rho, mu) == expected);
    true_cases += expected;
    CHECK(dominates(sum(rho, mu, "s"), mu));
    CHECK(dominates(rho, rho));
  }
  CHECK(true_cases > 0);
}

TEST_CASE("domination never contradicts sampled values in higher dimension") {
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = static_cast<std::size_t>(hbtest::uniform_int(3, 4));
    const auto rho = random_seminorm(n, "rho");
    const auto mu = random_seminorm(n, "mu");
    if (!dominates(rho, mu)) continue;
    for (int k = 0; k < 20; ++k) {
      const Vec x = random_vec(n);
      CHECK(eval(mu, x) <= eval(rho, x));
    }
  }
  CHECK(dominates(one_norm(3), sup_norm(3)));
  CHECK_FALSE(dominates(sup_norm(3), one_norm(3)));
  CHECK(dominates(sum(sup_norm(3), sup_norm(3), "two"), one_norm(3)) == false);
  const PolyhedralSeminorm three("three", {Atom{Combine::Max, {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}}});
  CHECK(dominates(three, one_norm(3)));
}

TEST_CASE("quotient by the first axis of R^3") {
  const Subspace z = Subspace::span(3, {{1, 0, 0}});
  const auto qi = PolyhedralSeminorm::quotient("inf/Z", sup_norm(3), z);
  const auto q1 = PolyhedralSeminorm::quotient("one/Z", one_norm(3), z);
  CHECK(qi.dim() == 2);
  CHECK(qi.complement() == Mat::from_rows({{0, 1, 0}, {0, 0, 1}}, 3));
  for (int it = 0; it < 30; ++it) {
    const Vec c = random_vec(2);
    CHECK(eval(qi, c) == std::max(abs(c[0]), abs(c[1])));
    CHECK(eval(q1, c) == abs(c[0]) + abs(c[1]));
  }
  CHECK(dominates(q1, qi));
  CHECK_FALSE(dominates(qi, q1));
  CHECK_THROWS_AS(PolyhedralSeminorm::quotient("qq", qi, Subspace(2)), PreconditionError);
}

TEST_CASE("quotient by a line matches the breakpoint minimum") {
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = static_cast<std::size_t>(hbtest::uniform_int(2, 4));
    const auto rho = random_seminorm(n);
    const Vec zv = random_nonzero_vec(n, 2, 1);
    const auto q = PolyhedralSeminorm::quotient("q", rho, Subspace::span(n, {zv}));
    const Vec c = random_vec(n - 1);
    const Vec x = q.lift(c);
    CHECK(q.project(x) == c);
    CHECK(eval(q, c) == line_quotient(rho, x, zv));
    // cosets evaluate alike
    CHECK(q.project(add(x, scale(hbtest::small_rational(), zv))) == c);
  }
}

TEST_CASE("quotient pullback composes with the projection") {
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = static_cast<std::size_t>(hbtest::uniform_int(2, 4));
    const std::size_t d = static_cast<std::size_t>(hbtest::uniform_int(1, static_cast<long>(n) - 1));
    const auto q = PolyhedralSeminorm::quotient("q", random_seminorm(n), hbtest::random_subspace(n, d));
    const Vec f = random_vec(q.dim());
    const Vec x = random_vec(n);
    CHECK(dot(q.pullback(f), x) == dot(f, q.project(x)));
  }
}

TEST_CASE("zero quotient is the identity model") {
  const auto rho = random_seminorm(3);
  const auto q = PolyhedralSeminorm::quotient("q", rho, Subspace(3));
  for (int it = 0; it < 10; ++it) {
    const Vec x = random_vec(3);
    CHECK(q.project(x) == x);
    CHECK(eval(q, x) == eval(rho, x));
  }
}

TEST_CASE("dual ball spanning set lies on the dual unit sphere") {
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = static_cast<std::size_t>(hbtest::uniform_int(1, 3));
    const auto mu = random_seminorm(n);
    const auto set = dual_ball_spanning_set(mu);
    CHECK_FALSE(set.empty());
    for (const Vec& g : set) CHECK(chi(mu, g) <= ExtendedScalar(Scalar(1)));
    // the support function of the set recovers mu
    for (int k = 0; k < 5; ++k) {
      const Vec x = random_vec(n);
      Scalar best = 0;
      for (const Vec& g : set) best = std::max(best, abs(dot(g, x)));
      CHECK(best == eval(mu, x));
    }
  }
}

TEST_CASE("families memoize domination and close under sums") {
  const PolyhedralSeminorm a("a", {Atom{Combine::Max, {{1, 0}}}});
  const PolyhedralSeminorm b("b", {Atom{Combine::Max, {{0, 1}}}});
  CHECK_THROWS_AS(SeminormFamily({a, a.relabeled("a")}), PreconditionError);
  const SeminormFamily fam({a, b});
  CHECK_FALSE(fam.verify_directed());
  CHECK(fam.dominates(0, 0));
  CHECK_FALSE(fam.dominates(0, 1));
  CHECK(fam.require_index("b") == 1);
  CHECK_THROWS_AS(fam.require_index("c"), PreconditionError);

  const ClosureResult closed = directed_closure(fam, 10);
  CHECK(closed.closed);
  CHECK(closed.added == std::vector<std::string>{"a+b"});
  CHECK(closed.family.verify_directed());
  CHECK(closed.family.directed());
  CHECK(subfamily_above(closed.family, 0) == std::vector<std::size_t>{0, 2});

  const ClosureResult capped = directed_closure(fam, 2);
  CHECK_FALSE(capped.closed);
}
