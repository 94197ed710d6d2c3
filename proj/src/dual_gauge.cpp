#include "hblab/dual_gauge.hpp"

#include <utility>

namespace hblab {

namespace {

std::vector<LinExpr> constants(const Vec& v) {
  std::vector<LinExpr> out;
  for (const auto& c : v) out.push_back(LinExpr::value(c));
  return out;
}

bool vanishes_on(const Vec& f, const Subspace& k) {
  for (std::size_t i = 0; i < k.dim(); ++i) {
    if (sgn(dot(f, k.basis_vector(i))) != 0) return false;
  }
  return true;
}

const LpOptimal& require_optimal(const LpResult& r, const char* what) {
  const auto* opt = std::get_if<LpOptimal>(&r);
  if (!opt) throw InternalError(std::string(what) + ": LP has no optimum");
  return *opt;
}

}  // namespace

const Scalar& ExtendedScalar::value() const {
  if (infinite_) throw PreconditionError("extended scalar is infinite");
  return value_;
}

std::strong_ordering operator<=>(const ExtendedScalar& a, const ExtendedScalar& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  const int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

ExtendedScalar operator+(const ExtendedScalar& a, const ExtendedScalar& b) {
  if (a.infinite_ || b.infinite_) return ExtendedScalar::infinity();
  return ExtendedScalar(a.value_ + b.value_);
}

std::string to_string(const ExtendedScalar& e) { return e.is_finite() ? to_string(e.value()) : "inf"; }

ExtendedScalar chi_dual_representation(const PolyhedralSeminorm& rho, const Vec& f) {
  require_dim(f.size(), rho.dim(), "chi");
  if (is_zero(f)) return Scalar(0);
  LpBuilder lp;
  const LinExpr t = LinExpr::variable(lp.add_variable(true));
  add_dual_gauge_bound(lp, rho, constants(f), t);
  const LpResult r = solve_lp(lp.program(Sense::Minimize, t));
  if (std::holds_alternative<LpInfeasible>(r)) return ExtendedScalar::infinity();
  return require_optimal(r, "chi_dual_representation").value;
}

ExtendedScalar chi_primal(const PolyhedralSeminorm& rho, const Vec& f) {
  require_dim(f.size(), rho.dim(), "chi");
  if (is_zero(f)) return Scalar(0);
  LpBuilder lp;
  const auto xs = lp.add_variables(rho.dim());
  lp.add_constraint(add_seminorm_bound(lp, rho, xs), Relation::LessEqual, LinExpr::value(1));
  const LpResult r = solve_lp(lp.program(Sense::Maximize, dot(f, xs)));
  if (std::holds_alternative<LpUnbounded>(r)) return ExtendedScalar::infinity();
  return require_optimal(r, "chi_primal").value;
}

ExtendedScalar chi(const PolyhedralSeminorm& rho, const Vec& f) {
  require_dim(f.size(), rho.dim(), "chi");
  if (!vanishes_on(f, seminorm_kernel(rho))) return ExtendedScalar::infinity();
  return chi_dual_representation(rho, f);
}

Subspace restricted_kernel(const PolyhedralSeminorm& rho, const Subspace& y) {
  require_dim(y.ambient_dim(), rho.dim(), "restricted_kernel");
  const Subspace perp = annihilator(seminorm_kernel(rho));
  // c is in the kernel iff every functional vanishing on ker rho vanishes on embed(c).
  if (perp.dim() == 0) return Subspace::whole(y.dim());
  return kernel(perp.basis().multiply(y.basis().transpose()));
}

ExtendedScalar chi_on_subspace(const PolyhedralSeminorm& rho, const Vec& f_on_y, const Subspace& y) {
  require_dim(y.ambient_dim(), rho.dim(), "chi_on_subspace");
  require_dim(f_on_y.size(), y.dim(), "chi_on_subspace functional");
  if (!vanishes_on(f_on_y, restricted_kernel(rho, y))) return ExtendedScalar::infinity();
  if (!rho.is_quotient()) return chi_dual_representation(restrict(rho, y), f_on_y);
  if (is_zero(f_on_y)) return Scalar(0);
  LpBuilder lp;
  const auto cs = lp.add_variables(y.dim());
  std::vector<LinExpr> xs(rho.dim());
  for (std::size_t j = 0; j < y.dim(); ++j) {
    const Vec b = y.basis_vector(j);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (sgn(b[i]) != 0) xs[i] += b[i] * cs[j];
    }
  }
  lp.add_constraint(add_seminorm_bound(lp, rho, xs), Relation::LessEqual, LinExpr::value(1));
  return require_optimal(solve_lp(lp.program(Sense::Maximize, dot(f_on_y, cs))), "chi_on_subspace").value;
}

Pair::Pair(PolyhedralSeminorm rho, Vec f_on_y, Subspace y) : rho_(std::move(rho)), f_(std::move(f_on_y)), y_(std::move(y)) {
  const ExtendedScalar c = chi_on_subspace(rho_, f_, y_);
  if (!c.is_finite()) throw InvalidPairError("pair with seminorm '" + rho_.label() + "' has infinite gauge");
  chi_ = c.value();
}

std::optional<std::size_t> finite_support_witness(const Vec& f, const SeminormFamily& fam) {
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (vanishes_on(f, seminorm_kernel(fam[i]))) return i;
  }
  return std::nullopt;
}

Vec one_hbe(const Pair& p) {
  const std::size_t n = p.rho().dim();
  LpBuilder lp;
  const auto g = lp.add_variables(n);
  const LinExpr t = LinExpr::variable(lp.add_variable(true));
  for (std::size_t j = 0; j < p.y().dim(); ++j) {
    lp.add_constraint(dot(p.y().basis_vector(j), g), Relation::Equal, LinExpr::value(p.f()[j]));
  }
  add_dual_gauge_bound(lp, p.rho(), g, t);
  const LpResult result = solve_lp(lp.program(Sense::Minimize, t));
  const LpOptimal& opt = require_optimal(result, "one_hbe");
  if (opt.value != p.chi()) throw InternalError("one_hbe: minimal extension gauge differs from the subspace gauge");
  return Vec(opt.point.begin(), opt.point.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace hblab
