// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact
// (rational equality, tolerance 0); each criterion also has a wall-time budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hblab/approximation.hpp"
#include "hblab/corpus.hpp"
#include "hblab/extension.hpp"
#include "hblab/models.hpp"
#include "hblab/probes.hpp"
#include "lp_oracle.hpp"
#include "support.hpp"

using namespace hblab;
using hbtest::uniform_int;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail << "first failure: " << what << "; ";
    pass = false;
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

std::size_t pick(std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(uniform_int(static_cast<long>(lo), static_cast<long>(hi)));
}

// Nonempty proper subset of m sites as a bit mask.
unsigned random_proper_mask(std::size_t m) { return static_cast<unsigned>(uniform_int(1, (1L << m) - 2)); }

Scalar nonzero_rational() {
  for (;;) {
    const Scalar q = hbtest::small_rational(4, 2);
    if (sgn(q) != 0) return q;
  }
}

PolyhedralSeminorm coordinate_atom(std::size_t n, Combine c, const std::string& label) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(unit_vector(n, i));
  return PolyhedralSeminorm(label, {Atom{c, gens}});
}

const PolyhedralSeminorm& member(const SeminormFamily& fam, const std::string& label) {
  return fam[fam.require_index(label)];
}

void ex4_reproduction(Outcome& o) {
  const Model m = build_ex4(8, 1);
  const Vec f = m.functional("f");
  for (int n : {2, 4, 8}) {
    o.require(chi_on_subspace(m.family[n - 1], f, m.y) == ExtendedScalar(Scalar(1, 2 * n)),
              "chi rho" + std::to_string(n) + " != 1/(2n)");
  }
  for (int n : {1, 3, 5, 7}) {
    o.require(chi_on_subspace(m.family[n - 1], f, m.y) == ExtendedScalar(Scalar(2, 3 * n)),
              "chi rho" + std::to_string(n) + " != 2/(3n)");
  }
  const Pair p6(m.family[5], f, m.y);
  o.require(hbe_unique(p6).verdict == Verdict::Multiple, "rho6 not MULTIPLE");
  const HbePolytope poly(p6);
  o.require(poly.contains({1, 0}) && poly.contains({Scalar(1, 2), Scalar(1, 2)}), "rho6 witnesses not extensions");

  std::size_t extensions = 0;
  for (int q = -8; q <= 12; ++q) {
    const Scalar t(q, 4);
    const Vec g{t, 1 - t};
    o.require(!ysharp_membership(g, m.y, m.family, m.candidate_limit).member(), "extension found in Y#");
    ++extensions;
  }
  const ProbeReport r = snp_probe(m.y, m.family, std::vector<Vec>{f}, m.candidate_limit);
  const FunctionalVerdict& v = r.verdicts.front();
  o.require(v.status == Status::Fails, "snp does not fail");
  o.require(v.obstructions.size() == m.candidate_limit, "some candidate mu without obstruction");
  for (const auto& ob : v.obstructions) o.require(verify_witness(ob.pair, f, m.y, m.family), "bad obstruction");
  o.detail << "chi values for n=1..8, rho6 MULTIPLE, " << extensions << " extensions outside Y#, "
           << v.obstructions.size() << "/" << m.candidate_limit << " candidates obstructed";
}

void cpz_max_usnp(Outcome& o) {
  std::size_t sizes = 0;
  for (int it = 0; it < 50; ++it) {
    const std::size_t m = pick(3, 8);
    const unsigned a_mask = random_proper_mask(m);
    const Model model = build_cpz(m, subset_sites(a_mask), CpzKind::Max);
    Vec phi(m);
    while (is_zero(phi)) {
      for (std::size_t i = 0; i < m; ++i) phi[i] = ((a_mask >> i) & 1U) ? Scalar(0) : hbtest::small_rational(3, 2);
    }
    const Vec f = restrict_functional(phi, model.y);
    const FunctionalVerdict v = usnp_at(f, model.y, model.family);
    o.require(v.status == Status::Holds, "usnp not HOLDS at m=" + std::to_string(m));
    o.require(v.extension && *v.extension == phi, "shared extension is not phi");

    // simultaneous best approximation of h from Y-perp over P_f is h - phi
    Vec h = phi;
    for (const std::size_t i : subset_sites(a_mask)) h[i] = hbtest::small_rational(3, 2);
    std::vector<PolyhedralSeminorm> p_f;
    for (const auto& rho : model.family.members()) {
      if (chi_on_subspace(rho, f, model.y).is_finite()) p_f.push_back(rho);
    }
    const SimultaneousResult s = simultaneous_best_approx(h, Vec(m), annihilator(model.y), p_f, Gauge::Dual);
    o.require(s.point && *s.point == sub(h, phi), "simultaneous best approximation disagrees");
    sizes += m;
  }
  o.detail << "50 instances, mean m " << sizes / 50.0 << ", USNP HOLDS and simultaneous best approximation agrees";
}

void cpz_sum_multiple(Outcome& o) {
  for (int it = 0; it < 50; ++it) {
    const std::size_t m = pick(3, 8);
    const unsigned a_mask = random_proper_mask(m);
    const std::vector<std::size_t> a = subset_sites(a_mask);
    const unsigned rest = ((1U << m) - 1U) & ~a_mask;
    unsigned f_mask = 0;
    while (f_mask == 0) f_mask = static_cast<unsigned>(uniform_int(0, (1L << m) - 1)) & rest;
    const std::size_t z = a[pick(0, a.size() - 1)];
    const Model model = build_cpz(m, a, CpzKind::Sum);

    Vec phi1(m);
    Scalar top = 0;
    for (const std::size_t i : subset_sites(f_mask)) {
      phi1[i] = nonzero_rational();
      top = std::max(top, abs(phi1[i]));
    }
    const Vec f = restrict_functional(phi1, model.y);
    const Pair p(member(model.family, "rho" + subset_name(f_mask | (1U << z))), f, model.y);
    o.require(p.chi() == top, "chi != max|alpha|");
    o.require(hbe_unique(p).verdict == Verdict::Multiple, "pair not MULTIPLE");
    const HbePolytope poly(p);
    const Vec phi2 = add(phi1, scale(top / 2, unit_vector(m, z)));
    o.require(poly.contains(phi1) && poly.contains(phi2) && phi1 != phi2, "witnesses not in the polytope");
  }
  o.detail << "50 instances, MULTIPLE with both witnesses feasible, chi = max|alpha|";
}

// h restricted to Y against h's distance to Y-perp.
void annihilator_duality(Outcome& o) {
  std::size_t finite = 0, per_builder[6] = {};
  for (int it = 0; it < 200; ++it) {
    const int builder = it % 6;
    PolyhedralSeminorm rho = hbtest::random_seminorm(2);
    Subspace y(2);
    switch (builder) {
      case 0: {
        const std::size_t n = pick(2, 4);
        rho = hbtest::random_seminorm(n);
        y = hbtest::random_subspace(n, pick(1, n - 1));
        break;
      }
      case 1: {
        const Model m = build_ex4(8, 1);
        rho = m.family[pick(0, m.family.size() - 1)];
        y = uniform_int(0, 1) ? m.y : hbtest::random_subspace(2, 1);
        break;
      }
      case 2:
      case 3:
      case 4: {
        const std::size_t n = pick(3, builder == 4 ? 4 : 5);
        const CpzKind kind = builder == 2 ? CpzKind::Max : (builder == 3 ? CpzKind::Sum : CpzKind::Mixed);
        const Model m = build_cpz(n, subset_sites(random_proper_mask(n)), kind);
        rho = m.family[pick(0, m.family.size() - 1)];
        y = m.y;
        break;
      }
      default: {
        if (uniform_int(0, 1)) {
          const Model m = build_span_f0(hbtest::random_nonzero_vec(pick(2, 4), 2, 2));
          rho = m.family[pick(0, m.family.size() - 1)];
          y = m.y;
        } else {
          const P5Model p = build_p5({1, 1, 1, Scalar(1, 2)}, {0, Scalar(1, 2), 1, 0});
          rho = p.model.family[pick(0, p.model.family.size() - 1)];
          y = p.model.y;
        }
      }
    }
    const Vec h = hbtest::random_vec(rho.dim(), 3, 2);
    const ExtendedScalar expected = chi_on_subspace(rho, restrict_functional(h, y), y);
    try {
      const BestApproxResult r = dist_to_annihilator(h, y, rho);
      o.require(r.distance == expected, "distance != chi_on_subspace");
      finite += r.distance.is_finite();
    } catch (const InternalError& e) {
      o.require(false, e.what());
    }
    ++per_builder[builder];
  }
  o.detail << "200 instances over 6 builders (" << per_builder[0] << " random, " << per_builder[1] << " ex4, "
           << per_builder[2] << " cpz-max, " << per_builder[3] << " cpz-sum, " << per_builder[4] << " cpz-mixed, "
           << per_builder[5] << " span/p5), " << finite << " finite";
}

void e1_uniqueness(Outcome& o) {
  std::size_t equal_pairs = 0, gap_pairs = 0, split_pairs = 0;
  for (const Example& e : corpus()) {
    const ResolvedSpace space = resolve(e.spec);
    // quotient seminorms act on another space; their pairs are covered by criterion 7
    std::vector<PolyhedralSeminorm> ambient;
    for (const auto& rho : space.seminorms) {
      if (rho.dim() == e.spec.dimension) ambient.push_back(rho);
    }
    const SeminormFamily fam(ambient);
    const std::size_t n = e.spec.dimension;
    for (const auto& [yname, basis] : space.subspaces) {
      if (basis.empty() || basis.front().size() != n) continue;
      const Subspace y = space.subspace(yname, n);
      if (y.dim() == n) continue;
      std::vector<Vec> xs;
      while (xs.size() < 20) {
        const Vec x = hbtest::random_nonzero_vec(n, 3, 2);
        if (!y.contains(x)) xs.push_back(x);
      }
      for (const auto& [fname, f] : space.functionals) {
        if (f.size() != y.dim()) continue;
        std::vector<std::optional<UniquenessCertificate>> certs(fam.size());
        std::vector<ExtendedScalar> gauges;
        for (std::size_t i = 0; i < fam.size(); ++i) {
          gauges.push_back(chi_on_subspace(fam[i], f, y));
          if (gauges.back().is_finite()) certs[i] = hbe_unique(Pair(fam[i], f, y));
        }
        for (std::size_t i = 0; i < fam.size(); ++i) {
          for (std::size_t j = 0; j < fam.size(); ++j) {
            if (!certs[i] || !certs[j] || !fam.dominates(i, j)) continue;
            const bool unique_i = certs[i]->verdict == Verdict::Unique;
            const bool unique_j = certs[j]->verdict == Verdict::Unique;
            const std::string where = e.id + " " + yname + " " + fname + " (" + fam[i].label() + ", " + fam[j].label() + ")";
            if (unique_i && unique_j) {
              if (certs[i]->witness != certs[j]->witness) {
                ++split_pairs;
                continue;
              }
              for (const Vec& x : xs) {
                const auto [lhs, rhs] = e1_gap(f, y, x, fam[i], fam[j], gauges[i].value(), gauges[j].value());
                o.require(lhs == rhs, "lhs != rhs at " + where);
              }
              ++equal_pairs;
              continue;
            }
            bool strict = false;
            for (const Vec& x : xs) {
              for (const Vec& sx : {x, negate(x)}) {
                const auto [lhs, rhs] = e1_gap(f, y, sx, fam[i], fam[j], gauges[i].value(), gauges[j].value());
                strict = strict || lhs < rhs;
              }
              if (strict) break;
            }
            o.require(strict, "no strict gap at " + where);
            ++gap_pairs;
          }
        }
      }
    }
  }
  o.detail << equal_pairs << " shared-UNIQUE pairs with lhs = rhs at 20 points, " << gap_pairs
           << " MULTIPLE pairs with a strict gap, " << split_pairs << " UNIQUE pairs with distinct witnesses (no claim)";
}

void two_extensions(Outcome& o) {
  int done = 0, tries = 0;
  while (done < 50 && tries < 2000) {
    ++tries;
    const std::size_t n = pick(2, 3);
    const auto a = hbtest::random_seminorm(n, "a");
    const auto b = hbtest::random_seminorm(n, "b");
    const SeminormFamily fam({a, b, sum(a, b, "a+b")}, true);
    const Subspace y = hbtest::random_subspace(n, 1);
    const Vec fy = restrict_functional(hbtest::random_vec(n), y);
    if (!chi_on_subspace(a, fy, y).is_finite() || annihilator(y.sum(seminorm_kernel(b))).dim() == 0) continue;
    const auto mu = dominating_member(fam, 0, 1);
    if (!mu) continue;
    const Scalar r = chi_on_subspace(fam[*mu], fy, y).value() + 1;
    const TwoExtensions two = two_extensions_at_radius(fy, y, fam, "a", "b", r);
    o.require(two.first != two.second, "extensions coincide");
    for (const Vec& g : {two.first, two.second}) {
      o.require(chi(member(fam, two.mu_label), g) == ExtendedScalar(r), "chi_mu != r");
      o.require(restrict_functional(g, y) == fy, "restriction != f");
    }
    ++done;
  }
  o.require(done == 50, "only " + std::to_string(done) + " valid pairs drawn");
  o.detail << done << " pairs at r = chi + 1, distinct extensions with chi_mu = r and exact restriction";
}

void quotients(Outcome& o) {
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = pick(2, 4);
    const auto rho = hbtest::random_seminorm(n);
    const std::size_t d = pick(1, n - 1);
    o.require(quotient_gauge_identity_holds(rho, hbtest::random_subspace(n, d), hbtest::random_vec(n - d)), "quotient gauge identity");
  }
  o.detail << "identity on 100 instances; ";

  const SeminormFamily fam({coordinate_atom(3, Combine::Max, "sup"), coordinate_atom(3, Combine::Sum, "one")}, true);
  const Subspace y = Subspace::span(3, {{1, 0, 0}, {0, 1, 0}});
  std::size_t lines_holding = 0;
  const std::vector<Vec> lines{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, -1, 0}, {2, 1, 0}};
  for (const Vec& l : lines) {
    const ProbeReport r = snp_probe(Subspace::span(3, {l}), fam, sample_functionals(1, 0, 0));
    o.require(r.mode.kind == Quantifier::Exact, "line probe not EXACT");
    lines_holding += r.holds();
  }
  const ProbeReport up = snp_probe(y, fam, sample_functionals(2, 8, 20240611));
  o.require(lines_holding == lines.size(), "Y lacks SNP upstairs on lines");
  o.require(up.holds(), "Y lacks SNP upstairs (sampled dim 2)");
  const QuotientModel q = quotient_model(fam, Subspace::span(3, {{1, 0, 0}}));
  const Subspace ybar = q.image(y);
  const ProbeReport down = snp_probe(ybar, q.family(), sample_functionals(1, 0, 0));
  bool down_witnessed = down.fails();
  for (const auto& v : down.verdicts) {
    if (v.status == Status::Fails) down_witnessed = down_witnessed && v.witness && verify_witness(*v.witness, v.f, ybar, q.family());
  }
  o.require(down_witnessed, "Y/Z does not fail with a witness");
  o.detail << "R^3 upstairs: " << lines_holding << "/" << lines.size() << " lines HOLD, sampled dim 2 "
           << (up.holds() ? "HOLDS" : "FAILS") << "; Y/Z " << (down_witnessed ? "FAILS with witness" : "no witness")
           << "; ";

  std::size_t transported = 0;
  std::uint64_t seed = 1;
  while (transported < 30) {
    const std::size_t m = pick(3, 5);
    const Model model = build_cpz(m, subset_sites(random_proper_mask(m)), transported % 2 ? CpzKind::Sum : CpzKind::Max);
    for (const auto& c : th4_crosscheck(model.y, model.family, sample_functionals(model.y.dim(), 3, seed++).fs)) {
      o.require(c.agree, "transport disagrees");
      ++transported;
    }
  }
  o.detail << "transport agrees on " << transported << " hyperplane quotients";
}

void span_f0_grid(Outcome& o) {
  const std::vector<Scalar> grid{-1, Scalar(-1, 2), 0, Scalar(1, 2), 1};
  std::size_t instances = 0, holds = 0, mismatches = 0;
  for (std::size_t m = 1; m <= 4; ++m) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= grid.size();
    for (std::size_t code = 0; code < total; ++code) {
      Vec f0(m);
      std::size_t c = code;
      for (std::size_t i = 0; i < m; ++i, c /= grid.size()) f0[i] = grid[c % grid.size()];
      if (is_zero(f0)) continue;
      Scalar top = 0;
      for (const auto& x : f0) top = std::max(top, abs(x));
      const bool single = std::count_if(f0.begin(), f0.end(), [&](const Scalar& x) { return abs(x) == top; }) == 1;
      const Model model = build_span_f0(f0);
      const ProbeReport r = snp_probe(model.y, model.family, sample_functionals(1, 0, 0));
      o.require(r.mode.kind == Quantifier::Exact, "probe not EXACT");
      mismatches += r.holds() != single;
      o.require(r.holds() == single, "mismatch at f0 = " + to_json(f0).dump());
      ++instances;
      holds += r.holds();
    }
  }
  o.detail << instances << " grid points, " << holds << " HOLDS, " << mismatches << " mismatches";
}

void triple_maximizer(Outcome& o) {
  const std::vector<std::pair<Vec, Vec>> scenarios{{{1, 1, 1}, {0, Scalar(1, 2), 1}}, {{1, 1, 1}, {1, 1, 0}}};
  for (const auto& [f1, f2] : scenarios) {
    const P5Model p = build_p5(f1, f2);
    o.require(p.triple.has_value(), "no triple relation");
    if (!p.triple) continue;
    const TriplePoint& t = *p.triple;
    const std::size_t m = p.model.y.ambient_dim();
    const Vec f = restrict_functional(dirac(m, t.x3), p.model.y);
    const Vec combo = add(scale(t.a, dirac(m, t.x1)), scale(t.b, dirac(m, t.x2)));
    o.require(abs(t.a) + abs(t.b) == 1, "|a| + |b| != 1");
    o.require(restrict_functional(combo, p.model.y) == f, "combination does not restrict to f");
    const ProbeReport r = snp_probe(p.model.y, p.model.family, std::vector<Vec>{f});
    o.require(r.fails(), "snp does not fail");
    const FunctionalVerdict& v = r.verdicts.front();
    o.require(v.witness && verify_witness(*v.witness, f, p.model.y, p.model.family), "reported witness invalid");
    const unsigned need = (1U << t.x1) | (1U << t.x2) | (1U << t.x3);
    std::size_t checked = 0;
    for (unsigned mask = 1; mask < (1U << m); ++mask) {
      if ((mask & need) != need) continue;
      const HbePolytope poly(Pair(member(p.model.family, "rho" + subset_name(mask)), f, p.model.y));
      o.require(poly.contains(dirac(m, t.x3)) && poly.contains(combo) && dirac(m, t.x3) != combo,
                "delta_x3 and the combination are not two extensions");
      ++checked;
    }
    o.detail << "(" << to_json(f1).dump() << ", " << to_json(f2).dump() << "): FAILS, a=" << to_string(t.a)
             << " b=" << to_string(t.b) << ", " << checked << " rho_F verified; ";
  }
}

void lp_core(Outcome& o) {
  std::map<std::string, int> kinds;
  for (int it = 0; it < 100; ++it) {
    const LinearProgram lp = hbtest::random_small_lp();
    const LpResult r = solve_lp(lp);
    o.require(hbtest::oracle_agrees(lp, r), "oracle disagrees on LP " + std::to_string(it));
    o.require(verify_certificate(lp, r), "certificate rejected on LP " + std::to_string(it));
    kinds[std::holds_alternative<LpOptimal>(r) ? "optimal" : std::holds_alternative<LpUnbounded>(r) ? "unbounded" : "infeasible"]++;
  }
  o.require(kinds["unbounded"] > 0 && kinds["infeasible"] > 0, "a classification never occurred");
  o.detail << "100 LPs: " << kinds["optimal"] << " optimal, " << kinds["unbounded"] << " unbounded, "
           << kinds["infeasible"] << " infeasible";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "R^2 family reproduction", 5, ex4_reproduction},
      {2, "C_p(Z) max family USNP", 60, cpz_max_usnp},
      {3, "C_p(Z) sum family two extensions", 60, cpz_sum_multiple},
      {4, "annihilator distance duality", 60, annihilator_duality},
      {5, "sup = inf identity vs uniqueness", 120, e1_uniqueness},
      {6, "two extensions at radius", 60, two_extensions},
      {7, "quotients", 60, quotients},
      {8, "span of f0 grid", 120, span_f0_grid},
      {9, "triple maximizer", 10, triple_maximizer},
      {10, "LP core vs vertex enumeration", 30, lp_core},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %s | exact, tol 0 | %.2f s (budget %.0f s%s) | %s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), seconds, c.budget_seconds, in_time ? "" : ", exceeded", o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
