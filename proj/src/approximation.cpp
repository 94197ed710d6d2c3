#include "hblab/approximation.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <variant>

namespace hblab {

namespace {

struct Problem {
  LpBuilder lp;
  std::vector<LinExpr> approximant;
  LinExpr objective;
};

Problem build_problem(const Vec& target, const Vec& offset, const Subspace& w, const PolyhedralSeminorm& rho,
                      Gauge gauge) {
  const std::size_t n = w.ambient_dim();
  require_dim(target.size(), n, "best_approx target");
  require_dim(offset.size(), n, "best_approx offset");
  require_dim(rho.dim(), n, "best_approx seminorm");
  Problem p;
  const auto cs = p.lp.add_variables(w.dim());
  p.approximant.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.approximant[i] = LinExpr::value(offset[i]);
  for (std::size_t j = 0; j < w.dim(); ++j) {
    const Vec b = w.basis_vector(j);
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(b[i]) != 0) p.approximant[i] += b[i] * cs[j];
    }
  }
  std::vector<LinExpr> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = LinExpr::value(target[i]) - p.approximant[i];
  if (gauge == Gauge::Seminorm) {
    p.objective = add_seminorm_bound(p.lp, rho, diff);
  } else {
    p.objective = LinExpr::variable(p.lp.add_variable(true));
    add_dual_gauge_bound(p.lp, rho, diff, p.objective);
  }
  return p;
}

Vec evaluate_all(const std::vector<LinExpr>& xs, const Vec& point) {
  Vec out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.evaluate(point));
  return out;
}

const LpOptimal& require_optimal(const LpResult& r, const char* what) {
  const auto* opt = std::get_if<LpOptimal>(&r);
  if (!opt) throw InternalError(std::string(what) + ": LP has no optimum");
  return *opt;
}

// Best approximations of one target under every member, computed on demand.
class MemberCache {
 public:
  MemberCache(const Vec& target, const Vec& offset, const Subspace& w, const SeminormFamily& fam)
      : target_(target), offset_(offset), w_(w), fam_(fam) {}

  const BestApproxResult& get(std::size_t k) {
    auto it = results_.find(k);
    if (it == results_.end()) it = results_.emplace(k, best_approx(target_, offset_, w_, fam_[k], Gauge::Dual)).first;
    return it->second;
  }

 private:
  const Vec& target_;
  const Vec& offset_;
  const Subspace& w_;
  const SeminormFamily& fam_;
  std::map<std::size_t, BestApproxResult> results_;
};

// A conflict among the members' best approximations, or the shared point.
std::variant<Vec, WitnessPair> shared_best(const std::vector<std::size_t>& members, const SeminormFamily& fam,
                                           MemberCache& cache) {
  std::optional<std::size_t> first;
  for (const std::size_t k : members) {
    const BestApproxResult& r = cache.get(k);
    if (!r.distance.is_finite()) throw InternalError("shared_best: member above a finite candidate is infinite");
    if (!r.unique) return WitnessPair{fam[k].label(), *r.witness, fam[k].label(), *r.second_witness};
    if (!first) {
      first = k;
    } else if (*r.witness != *cache.get(*first).witness) {
      return WitnessPair{fam[*first].label(), *cache.get(*first).witness, fam[k].label(), *r.witness};
    }
  }
  if (!first) throw InternalError("shared_best: empty member list");
  return *cache.get(*first).witness;
}

HaarVerdict haar_at(const Vec& f, const Vec& offset, const Subspace& w, const SeminormFamily& fam,
                    std::size_t candidate_limit) {
  HaarVerdict v;
  v.f = f;
  MemberCache cache(f, offset, w, fam);
  bool any_finite = false;
  const std::size_t end = std::min(candidate_limit, fam.size());
  for (std::size_t mu = 0; mu < end; ++mu) {
    if (!cache.get(mu).distance.is_finite()) continue;
    any_finite = true;
    auto shared = shared_best(subfamily_above(fam, mu), fam, cache);
    if (auto* point = std::get_if<Vec>(&shared)) {
      v.status = Status::Holds;
      v.certifying_mu = fam[mu].label();
      v.best = std::move(*point);
      v.witness.reset();
      return v;
    }
    if (!v.witness) v.witness = std::get<WitnessPair>(std::move(shared));
  }
  if (any_finite) v.status = Status::Fails;
  return v;
}

}  // namespace

BestApproxResult best_approx(const Vec& target, const Vec& offset, const Subspace& w, const PolyhedralSeminorm& rho,
                             Gauge gauge) {
  Problem p = build_problem(target, offset, w, rho, gauge);
  BestApproxResult out;
  const LpResult result = solve_lp(p.lp.program(Sense::Minimize, p.objective));
  if (std::holds_alternative<LpInfeasible>(result)) {
    out.distance = ExtendedScalar::infinity();
    return out;
  }
  const LpOptimal& opt = require_optimal(result, "best_approx");
  const Scalar distance = opt.value + p.objective.constant;
  out.distance = distance;

  p.lp.add_constraint(p.objective, Relation::Equal, LinExpr::value(distance));
  out.minimizer_polytope = p.lp.program(Sense::Minimize, LinExpr{});
  const FeasibleRegion region(out.minimizer_polytope);
  if (!region.feasible()) throw InternalError("best_approx: minimizer set is empty");
  out.unique = true;
  Vec common(p.approximant.size());
  for (std::size_t i = 0; i < p.approximant.size(); ++i) {
    const Vec objective = p.lp.objective_vector(p.approximant[i]);
    const Scalar c = p.approximant[i].constant;
    std::optional<Scalar> bound[2];
    Vec at[2];
    for (int k = 0; k < 2; ++k) {
      const LpResult r = region.optimize(objective, k == 0 ? Sense::Minimize : Sense::Maximize, false);
      if (const auto* opt = std::get_if<LpOptimal>(&r)) {
        bound[k] = opt->value + c;
        at[k] = opt->point;
      } else if (const auto* ray = std::get_if<LpUnbounded>(&r)) {
        at[k] = add(ray->point, ray->ray);
      } else {
        throw InternalError("best_approx: minimizer set lost feasibility");
      }
    }
    out.coordinate_bounds.emplace_back(bound[0], bound[1]);
    if (bound[0] && bound[1] && *bound[0] == *bound[1]) {
      common[i] = *bound[0];
    } else if (out.unique) {
      out.unique = false;
      out.witness = evaluate_all(p.approximant, at[1]);
      out.second_witness = evaluate_all(p.approximant, at[0]);
    }
  }
  if (out.unique) out.witness = std::move(common);
  return out;
}

BestApproxResult dist_to_annihilator(const Vec& h, const Subspace& y, const PolyhedralSeminorm& rho) {
  BestApproxResult r = best_approx(h, Vec(h.size()), annihilator(y), rho, Gauge::Dual);
  if (r.distance != chi_on_subspace(rho, restrict_functional(h, y), y)) {
    throw InternalError("dist_to_annihilator: distance differs from the subspace gauge");
  }
  return r;
}

BestApproxResult best_approx_in_subspace(const Vec& x0, const Subspace& y, const PolyhedralSeminorm& rho) {
  return best_approx(x0, Vec(x0.size()), y, rho, Gauge::Seminorm);
}

SimultaneousResult simultaneous_best_approx(const Vec& target, const Vec& offset, const Subspace& w,
                                            const std::vector<PolyhedralSeminorm>& members, Gauge gauge) {
  if (members.empty()) throw PreconditionError("simultaneous_best_approx: no members");
  SimultaneousResult out;
  std::optional<std::pair<std::string, Vec>> first;
  for (const auto& rho : members) {
    const BestApproxResult r = best_approx(target, offset, w, rho, gauge);
    if (!r.distance.is_finite()) {
      out.infinite_member = rho.label();
      return out;
    }
    if (!r.unique) {
      out.conflict = WitnessPair{rho.label(), *r.witness, rho.label(), *r.second_witness};
      return out;
    }
    if (!first) {
      first.emplace(rho.label(), *r.witness);
    } else if (first->second != *r.witness) {
      out.conflict = WitnessPair{first->first, first->second, rho.label(), *r.witness};
      return out;
    }
  }
  out.point = first->second;
  return out;
}

SimultaneousResult simultaneous_best_approx(const Vec& x0, const Subspace& y,
                                            const std::vector<PolyhedralSeminorm>& members) {
  return simultaneous_best_approx(x0, Vec(x0.size()), y, members, Gauge::Seminorm);
}

std::vector<HaarVerdict> haar_probe(const Vec& offset, const Subspace& w, const SeminormFamily& fam,
                                    const std::vector<Vec>& test_points, std::size_t candidate_limit) {
  require_dim(offset.size(), w.ambient_dim(), "haar_probe offset");
  std::vector<HaarVerdict> out;
  out.reserve(test_points.size());
  for (const Vec& f : test_points) out.push_back(haar_at(f, offset, w, fam, candidate_limit));
  return out;
}

std::vector<HaarVerdict> haar_probe(const Subspace& w, const SeminormFamily& fam, const std::vector<Vec>& test_points,
                                    std::size_t candidate_limit) {
  return haar_probe(Vec(w.ambient_dim()), w, fam, test_points, candidate_limit);
}

std::vector<Th1Check> th1_crosscheck(const Subspace& y, const SeminormFamily& fam, const std::vector<Vec>& fs,
                                     std::size_t candidate_limit) {
  const Subspace perp = annihilator(y);
  const Vec origin(y.ambient_dim());
  std::vector<Th1Check> out;
  for (const Vec& f : fs) {
    Th1Check c;
    c.f = f;
    const Vec fy = restrict_functional(f, y);
    c.snp = snp_at(fy, y, fam, candidate_limit);
    c.haar = haar_at(f, origin, perp, fam, candidate_limit);
    c.snp_agrees = c.snp.status == c.haar.status && c.snp.certifying_mu == c.haar.certifying_mu;
    if (c.snp_agrees && c.snp.status == Status::Holds) c.snp_agrees = *c.haar.best == sub(f, *c.snp.extension);

    c.usnp = usnp_at(fy, y, fam);
    std::vector<PolyhedralSeminorm> p_f;
    for (std::size_t k = 0; k < fam.size(); ++k) {
      if (chi_on_subspace(fam[k], fy, y).is_finite()) p_f.push_back(fam[k]);
    }
    if (p_f.empty()) {
      c.usnp_agrees = c.usnp.status == Status::NoFiniteGauge;
    } else {
      c.simultaneous = simultaneous_best_approx(f, origin, perp, p_f, Gauge::Dual);
      const bool holds = c.usnp.status == Status::Holds;
      c.usnp_agrees = holds == c.simultaneous.point.has_value() &&
                      (!holds || *c.simultaneous.point == sub(f, *c.usnp.extension));
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LineHaarReport> line_haar_check(const SeminormFamily& fam, const std::vector<Line>& lines,
                                            const std::vector<Vec>& test_points, std::size_t candidate_limit) {
  std::vector<LineHaarReport> out;
  for (const Line& line : lines) {
    require_dim(line.z0.size(), fam.dim(), "line direction");
    require_dim(line.w.size(), fam.dim(), "line offset");
    if (is_zero(line.z0)) throw PreconditionError("line_haar_check: zero direction");
    const Subspace dir = Subspace::span(fam.dim(), {line.z0});
    LineHaarReport report;
    report.line = line;
    report.verdicts = haar_probe(line.w, dir, fam, test_points, candidate_limit);
    if (dir.contains(line.w)) {
      const Subspace y = kernel(Mat::from_rows({line.z0}, fam.dim()));
      std::vector<FunctionalVerdict> snp;
      for (const Vec& f : test_points) snp.push_back(snp_at(restrict_functional(f, y), y, fam, candidate_limit));
      report.kernel_snp = std::move(snp);
    }
    out.push_back(std::move(report));
  }
  return out;
}

}  // namespace hblab
