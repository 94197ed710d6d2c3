#include "hblab/extension.hpp"

#include <utility>

namespace hblab {

namespace {

LinearProgram polytope_lp(const Pair& p) {
  LpBuilder lp;
  const auto g = lp.add_variables(p.rho().dim());
  for (std::size_t j = 0; j < p.y().dim(); ++j) {
    lp.add_constraint(dot(p.y().basis_vector(j), g), Relation::Equal, LinExpr::value(p.f()[j]));
  }
  add_dual_gauge_bound(lp, p.rho(), g, LinExpr::value(p.chi()));
  return lp.program(Sense::Maximize, LinExpr{});
}

const LpOptimal& require_optimal(const LpResult& r, const char* what) {
  const auto* opt = std::get_if<LpOptimal>(&r);
  if (!opt) {
    if (std::holds_alternative<LpUnbounded>(r)) throw InternalError(std::string(what) + ": LP is unbounded");
    throw InternalError(std::string(what) + ": LP is infeasible");
  }
  return *opt;
}

Vec axpy(const Vec& base, const Scalar& t, const Vec& dir) { return add(base, scale(t, dir)); }

}  // namespace

HbePolytope::HbePolytope(Pair pair)
    : pair_(std::move(pair)),
      num_vars_(pair_.rho().dim()),
      region_([this] {
        const LinearProgram lp = polytope_lp(pair_);
        total_vars_ = lp.num_vars;
        return FeasibleRegion(lp);
      }()) {
  if (!region_.feasible()) throw InternalError("extension polytope is empty");
}

Vec HbePolytope::extension_part(const Vec& point) const {
  return Vec(point.begin(), point.begin() + static_cast<std::ptrdiff_t>(num_vars_));
}

bool HbePolytope::contains(const Vec& g) const {
  if (g.size() != dim()) return false;
  if (restrict_functional(g, pair_.y()) != pair_.f()) return false;
  return chi(pair_.rho(), g) == ExtendedScalar(bound());
}

HbePolytope::Range HbePolytope::coordinate_range(std::size_t i) const {
  if (i >= num_vars_) throw PreconditionError("coordinate_range: index out of range");
  Vec objective(total_vars_);
  objective[i] = 1;
  Range out;
  for (const Sense sense : {Sense::Minimize, Sense::Maximize}) {
    const LpResult result = region_.optimize(objective, sense, false);
    const LpOptimal& opt = require_optimal(result, "coordinate_range");
    if (sense == Sense::Minimize) {
      out.min = opt.value;
      out.argmin = extension_part(opt.point);
    } else {
      out.max = opt.value;
      out.argmax = extension_part(opt.point);
    }
  }
  return out;
}

HbePolytope hbe_set(const Pair& p) { return HbePolytope(p); }

UniquenessCertificate hbe_unique(const Pair& p) {
  const HbePolytope poly(p);
  UniquenessCertificate cert;
  Vec common(poly.dim());
  for (std::size_t i = 0; i < poly.dim(); ++i) {
    HbePolytope::Range r = poly.coordinate_range(i);
    cert.coordinate_bounds.emplace_back(r.min, r.max);
    if (r.min != r.max && cert.verdict == Verdict::Unique) {
      cert.verdict = Verdict::Multiple;
      cert.witness = std::move(r.argmax);
      cert.second_witness = std::move(r.argmin);
    }
    common[i] = r.min;
  }
  if (cert.verdict == Verdict::Unique) cert.witness = std::move(common);
  return cert;
}

std::pair<Scalar, Scalar> e1_gap(const Vec& f_on_y, const Subspace& y, const Vec& x, const PolyhedralSeminorm& rho,
                                 const PolyhedralSeminorm& mu, const Scalar& c_rho, const Scalar& c_mu) {
  require_dim(x.size(), y.ambient_dim(), "e1_gap point");
  require_dim(f_on_y.size(), y.dim(), "e1_gap functional");
  if (y.contains(x)) throw PreconditionError("e1_gap: x lies in Y");
  if (chi_on_subspace(rho, f_on_y, y) != ExtendedScalar(c_rho) || chi_on_subspace(mu, f_on_y, y) != ExtendedScalar(c_mu)) {
    throw PreconditionError("e1_gap: bounds differ from the subspace gauges");
  }
  auto side = [&](const PolyhedralSeminorm& s, const Scalar& c, int sign) {
    LpBuilder lp;
    const auto cs = lp.add_variables(y.dim());
    std::vector<LinExpr> point(y.ambient_dim());
    for (std::size_t i = 0; i < point.size(); ++i) point[i] = LinExpr::value(sign * x[i]);
    for (std::size_t j = 0; j < y.dim(); ++j) {
      const Vec b = y.basis_vector(j);
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (sgn(b[i]) != 0) point[i] += b[i] * cs[j];
      }
    }
    const LinExpr u = add_seminorm_bound(lp, s, point);
    return std::pair{lp, sign > 0 ? dot(f_on_y, cs) - c * u : c * u - dot(f_on_y, cs)};
  };
  auto [lhs_lp, lhs_obj] = side(rho, c_rho, 1);
  auto [rhs_lp, rhs_obj] = side(mu, c_mu, -1);
  const LpResult lhs = solve_lp(lhs_lp.program(Sense::Maximize, lhs_obj));
  const LpResult rhs = solve_lp(rhs_lp.program(Sense::Minimize, rhs_obj));
  return {require_optimal(lhs, "e1_gap sup").value + lhs_obj.constant,
          require_optimal(rhs, "e1_gap inf").value + rhs_obj.constant};
}

std::optional<std::size_t> dominating_member(const SeminormFamily& fam, std::size_t rho, std::size_t rho_prime) {
  if (fam.dominates(rho, rho_prime)) return rho;
  for (std::size_t k = 0; k < fam.size(); ++k) {
    if (fam.dominates(k, rho) && fam.dominates(k, rho_prime)) return k;
  }
  return std::nullopt;
}

Scalar pl_root(const PolyhedralSeminorm& mu, const Vec& base, const Vec& dir, const Scalar& r) {
  auto phi = [&](const Scalar& t) { return chi(mu, axpy(base, t, dir)).value(); };
  if (phi(0) >= r) throw PreconditionError("pl_root: value at 0 already reaches r");
  Scalar hi = 1;
  Scalar phi_hi = phi(hi);
  while (phi_hi < r) {
    hi *= 2;
    phi_hi = phi(hi);
  }
  // Newton from above along the left piece at hi. phi is convex, so the left
  // piece's line underestimates phi and its root never drops below the true root.
  for (;;) {
    if (phi_hi == r) return hi;
    Scalar delta = hi / 2;
    Scalar lo, phi_lo;
    for (;;) {
      lo = hi - delta;
      phi_lo = phi(lo);
      const Scalar mid = hi - delta / 2;
      if (2 * phi(mid) == phi_lo + phi_hi) break;  // affine on [lo, hi]
      delta /= 2;
    }
    const Scalar slope = (phi_hi - phi_lo) / (hi - lo);
    if (sgn(slope) <= 0) throw InternalError("pl_root: non-increasing piece above the root");
    hi = hi - (phi_hi - r) / slope;
    phi_hi = phi(hi);
    if (phi_hi < r) throw InternalError("pl_root: convexity violated");
  }
}

TwoExtensions two_extensions_at_radius(const Vec& f_on_y, const Subspace& y, const SeminormFamily& fam,
                                       const std::string& rho_label, const std::string& rho_prime_label,
                                       const Scalar& r) {
  const std::size_t rho = fam.require_index(rho_label);
  const std::size_t rho_prime = fam.require_index(rho_prime_label);
  const Pair given(fam[rho], f_on_y, y);
  const auto m = dominating_member(fam, rho, rho_prime);
  if (!m) throw PreconditionError("two_extensions_at_radius: no member dominates both seminorms");
  const Pair pair_mu(fam[*m], f_on_y, y);
  if (r <= pair_mu.chi()) throw PreconditionError("two_extensions_at_radius: r must exceed the subspace gauge");
  const Subspace eligible = annihilator(y.sum(seminorm_kernel(fam[rho_prime])));
  if (eligible.dim() == 0) throw PreconditionError("two_extensions_at_radius: no annihilator element with finite gauge");

  TwoExtensions out;
  out.mu_label = fam[*m].label();
  out.direction = eligible.basis_vector(0);
  const Vec base = one_hbe(pair_mu);
  out.alpha = pl_root(fam[*m], base, out.direction, r);
  out.beta = -pl_root(fam[*m], base, negate(out.direction), r);
  out.first = axpy(base, out.alpha, out.direction);
  out.second = axpy(base, out.beta, out.direction);
  return out;
}

}  // namespace hblab
