#include "hblab/lp.hpp"

#include <cstdint>
#include <utility>

namespace hblab {

namespace {

struct RunResult {
  bool unbounded = false;
  std::size_t column = 0;
};

void pivot(std::vector<Vec>& rows, Vec& obj, std::vector<std::size_t>& basis, std::size_t r, std::size_t c) {
  Vec& pr = rows[r];
  const Scalar inv = 1 / pr[c];
  std::vector<std::size_t> nz;
  nz.reserve(pr.size());
  for (std::size_t k = 0; k < pr.size(); ++k) {
    if (sgn(pr[k]) != 0) {
      pr[k] *= inv;
      nz.push_back(k);
    }
  }
  auto eliminate = [&](Vec& row) {
    if (sgn(row[c]) == 0) return;
    const Scalar f = row[c];
    for (auto k : nz) row[k] -= f * pr[k];
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i != r) eliminate(rows[i]);
  }
  eliminate(obj);
  basis[r] = c;
}

// Bland's rule: lowest-index entering column, ties in the ratio test go to the
// lowest-index basic variable.
RunResult run_simplex(std::vector<Vec>& rows, Vec& obj, std::vector<std::size_t>& basis, std::size_t ncols) {
  const std::size_t rhs = ncols;
  for (;;) {
    std::size_t entering = ncols;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (sgn(obj[j]) < 0) {
        entering = j;
        break;
      }
    }
    if (entering == ncols) return {};
    std::size_t leave = rows.size();
    Scalar best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (sgn(rows[i][entering]) <= 0) continue;
      Scalar ratio = rows[i][rhs] / rows[i][entering];
      if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (leave == rows.size()) return {true, entering};
    pivot(rows, obj, basis, leave, entering);
  }
}

Vec reduced_costs(const std::vector<Vec>& rows, const std::vector<std::size_t>& basis, const Vec& costs,
                  std::size_t ncols) {
  Vec obj(ncols + 1);
  for (std::size_t j = 0; j < ncols; ++j) obj[j] = costs[j];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Scalar& cb = costs[basis[i]];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j <= ncols; ++j) {
      if (sgn(rows[i][j]) != 0) obj[j] -= cb * rows[i][j];
    }
  }
  return obj;
}

bool satisfies(const Scalar& lhs, Relation rel, const Scalar& rhs) {
  switch (rel) {
    case Relation::LessEqual: return lhs <= rhs;
    case Relation::Equal: return lhs == rhs;
    case Relation::GreaterEqual: return lhs >= rhs;
  }
  return false;
}

bool feasible_point(const LinearProgram& lp, const Vec& x) {
  if (x.size() != lp.num_vars) return false;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.is_nonnegative(j) && sgn(x[j]) < 0) return false;
  }
  for (const auto& c : lp.constraints) {
    if (!satisfies(dot(c.coeffs, x), c.relation, c.rhs)) return false;
  }
  return true;
}

}  // namespace

void LinearProgram::validate() const {
  require_dim(objective.size(), num_vars, "LinearProgram objective");
  if (!nonnegative.empty()) require_dim(nonnegative.size(), num_vars, "LinearProgram nonnegative flags");
  for (const auto& c : constraints) require_dim(c.coeffs.size(), num_vars, "LinearProgram constraint");
}

FeasibleRegion::FeasibleRegion(const LinearProgram& lp) : num_vars_(lp.num_vars), num_rows_(lp.constraints.size()) {
  if (!lp.nonnegative.empty()) require_dim(lp.nonnegative.size(), lp.num_vars, "LinearProgram nonnegative flags");
  for (const auto& c : lp.constraints) require_dim(c.coeffs.size(), lp.num_vars, "LinearProgram constraint");

  for (std::size_t j = 0; j < num_vars_; ++j) {
    columns_.push_back({ColumnKind::Structural, j, 1});
    if (!lp.is_nonnegative(j)) columns_.push_back({ColumnKind::Structural, j, -1});
  }
  std::vector<std::size_t> slack_col(num_rows_, SIZE_MAX);
  for (std::size_t i = 0; i < num_rows_; ++i) {
    const Relation rel = lp.constraints[i].relation;
    if (rel == Relation::Equal) continue;
    slack_col[i] = columns_.size();
    columns_.push_back({ColumnKind::Slack, i, rel == Relation::LessEqual ? 1 : -1});
  }
  row_sign_.resize(num_rows_);
  std::vector<std::size_t> initial_basis(num_rows_, SIZE_MAX);
  for (std::size_t i = 0; i < num_rows_; ++i) {
    row_sign_[i] = sgn(lp.constraints[i].rhs) < 0 ? -1 : 1;
    if (slack_col[i] != SIZE_MAX && row_sign_[i] * columns_[slack_col[i]].sign == 1) initial_basis[i] = slack_col[i];
  }
  const std::size_t first_artificial = columns_.size();
  for (std::size_t i = 0; i < num_rows_; ++i) {
    if (initial_basis[i] == SIZE_MAX) {
      initial_basis[i] = columns_.size();
      columns_.push_back({ColumnKind::Artificial, i, 1});
    }
  }
  const std::size_t ncols = columns_.size();

  standard_.assign(num_rows_, Vec(ncols + 1));
  for (std::size_t i = 0; i < num_rows_; ++i) {
    const auto& con = lp.constraints[i];
    const int s = row_sign_[i];
    for (std::size_t k = 0; k < ncols; ++k) {
      const Column& col = columns_[k];
      switch (col.kind) {
        case ColumnKind::Structural:
          if (sgn(con.coeffs[col.index]) != 0) standard_[i][k] = s * col.sign * con.coeffs[col.index];
          break;
        case ColumnKind::Slack:
          if (col.index == i) standard_[i][k] = s * col.sign;
          break;
        case ColumnKind::Artificial:
          if (col.index == i) standard_[i][k] = 1;
          break;
      }
    }
    standard_[i][ncols] = s * con.rhs;
  }

  tableau_.rows = standard_;
  tableau_.basis = initial_basis;
  tableau_.kept.resize(num_rows_);
  for (std::size_t i = 0; i < num_rows_; ++i) tableau_.kept[i] = i;

  if (first_artificial < ncols) {
    Vec costs(ncols);
    for (std::size_t k = first_artificial; k < ncols; ++k) costs[k] = 1;
    Vec obj = reduced_costs(tableau_.rows, tableau_.basis, costs, ncols);
    run_simplex(tableau_.rows, obj, tableau_.basis, ncols);  // phase one is bounded below by 0
    if (sgn(obj[ncols]) != 0) {
      feasible_ = false;
      const Vec w = solve_duals(tableau_, costs);
      farkas_ = negate(w);
      return;
    }
    // Drive zero-level artificials out of the basis; drop rows that are redundant.
    for (std::size_t i = 0; i < tableau_.rows.size();) {
      if (tableau_.basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t j = 0;
      while (j < first_artificial && sgn(tableau_.rows[i][j]) == 0) ++j;
      if (j < first_artificial) {
        pivot(tableau_.rows, obj, tableau_.basis, i, j);
        ++i;
      } else {
        tableau_.rows.erase(tableau_.rows.begin() + static_cast<std::ptrdiff_t>(i));
        tableau_.basis.erase(tableau_.basis.begin() + static_cast<std::ptrdiff_t>(i));
        tableau_.kept.erase(tableau_.kept.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    // Artificial columns are last; cut them away.
    for (auto& row : tableau_.rows) {
      row[first_artificial] = std::move(row[ncols]);
      row.resize(first_artificial + 1);
    }
    for (auto& row : standard_) {
      row[first_artificial] = std::move(row[ncols]);
      row.resize(first_artificial + 1);
    }
    columns_.resize(first_artificial);
  }
  feasible_ = true;
}

Vec FeasibleRegion::point_of(const Tableau& t) const {
  Vec x(num_vars_);
  const std::size_t rhs = columns_.size();
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const Column& col = columns_[t.basis[i]];
    if (col.kind != ColumnKind::Structural) continue;
    if (col.sign > 0)
      x[col.index] += t.rows[i][rhs];
    else
      x[col.index] -= t.rows[i][rhs];
  }
  return x;
}

// Multipliers w over the original rows with c_col - w^T A_col >= 0 in the
// original (unflipped) orientation.
Vec FeasibleRegion::solve_duals(const Tableau& t, const Vec& column_costs) const {
  const std::size_t k = t.rows.size();
  Vec w(num_rows_);
  if (k == 0) return w;
  Mat bt(k, k);
  Vec cb(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < k; ++r) bt(i, r) = standard_[t.kept[r]][t.basis[i]];
    cb[i] = column_costs[t.basis[i]];
  }
  auto y = solve_linear(bt, cb);
  if (!y) throw InternalError("simplex: singular basis while extracting duals");
  for (std::size_t r = 0; r < k; ++r) w[t.kept[r]] = row_sign_[t.kept[r]] * (*y)[r];
  return w;
}

LpResult FeasibleRegion::optimize(const Vec& objective, Sense sense, bool with_dual) const {
  if (!feasible_) throw PreconditionError("optimize called on an infeasible region");
  require_dim(objective.size(), num_vars_, "FeasibleRegion::optimize");
  const std::size_t ncols = columns_.size();
  Vec costs(ncols);
  for (std::size_t k = 0; k < ncols; ++k) {
    const Column& col = columns_[k];
    if (col.kind != ColumnKind::Structural || sgn(objective[col.index]) == 0) continue;
    costs[k] = col.sign * objective[col.index];
    if (sense == Sense::Maximize) costs[k] = -costs[k];
  }
  Tableau t = tableau_;
  Vec obj = reduced_costs(t.rows, t.basis, costs, ncols);
  const RunResult run = run_simplex(t.rows, obj, t.basis, ncols);
  Vec x = point_of(t);
  if (run.unbounded) {
    Vec ray(num_vars_);
    auto add_dir = [&](std::size_t colidx, const Scalar& amount) {
      const Column& col = columns_[colidx];
      if (col.kind != ColumnKind::Structural) return;
      if (col.sign > 0)
        ray[col.index] += amount;
      else
        ray[col.index] -= amount;
    };
    add_dir(run.column, Scalar(1));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (sgn(t.rows[i][run.column]) != 0) add_dir(t.basis[i], Scalar(-t.rows[i][run.column]));
    }
    return LpUnbounded{std::move(x), std::move(ray)};
  }
  LpOptimal opt;
  opt.value = dot(objective, x);
  opt.point = std::move(x);
  if (with_dual) {
    Vec w = solve_duals(t, costs);
    opt.dual = sense == Sense::Maximize ? negate(w) : std::move(w);
  }
  return opt;
}

LpResult solve_lp(const LinearProgram& lp) {
  lp.validate();
  FeasibleRegion region(lp);
  if (!region.feasible()) return LpInfeasible{region.farkas()};
  return region.optimize(lp.objective, lp.sense, true);
}

bool verify_certificate(const LinearProgram& lp, const LpResult& result) {
  const bool maximize = lp.sense == Sense::Maximize;
  if (const auto* opt = std::get_if<LpOptimal>(&result)) {
    if (!feasible_point(lp, opt->point) || opt->value != dot(lp.objective, opt->point)) return false;
    if (opt->dual.size() != lp.constraints.size()) return false;
    Vec combo(lp.num_vars);
    Scalar bound = 0;
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
      const auto& c = lp.constraints[i];
      const Scalar& u = opt->dual[i];
      const int want = c.relation == Relation::Equal ? 0 : (c.relation == Relation::LessEqual ? 1 : -1);
      const int s = sgn(u) * (maximize ? 1 : -1);
      if (want != 0 && s * want < 0) return false;
      combo = add(combo, scale(u, c.coeffs));
      bound += u * c.rhs;
    }
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      if (!lp.is_nonnegative(j)) {
        if (combo[j] != lp.objective[j]) return false;
      } else if (maximize ? combo[j] < lp.objective[j] : combo[j] > lp.objective[j]) {
        return false;
      }
    }
    return bound == opt->value;
  }
  if (const auto* unb = std::get_if<LpUnbounded>(&result)) {
    if (!feasible_point(lp, unb->point) || unb->ray.size() != lp.num_vars) return false;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      if (lp.is_nonnegative(j) && sgn(unb->ray[j]) < 0) return false;
    }
    for (const auto& c : lp.constraints) {
      if (!satisfies(dot(c.coeffs, unb->ray), c.relation, Scalar(0))) return false;
    }
    const int dir = sgn(dot(lp.objective, unb->ray));
    return maximize ? dir > 0 : dir < 0;
  }
  const auto& inf = std::get<LpInfeasible>(result);
  if (inf.farkas.size() != lp.constraints.size()) return false;
  Vec combo(lp.num_vars);
  Scalar bound = 0;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    const Scalar& l = inf.farkas[i];
    if (c.relation == Relation::LessEqual && sgn(l) < 0) return false;
    if (c.relation == Relation::GreaterEqual && sgn(l) > 0) return false;
    combo = add(combo, scale(l, c.coeffs));
    bound += l * c.rhs;
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.is_nonnegative(j) ? sgn(combo[j]) < 0 : sgn(combo[j]) != 0) return false;
  }
  return sgn(bound) < 0;
}

LinExpr LinExpr::variable(std::size_t index, const Scalar& coeff) {
  LinExpr e;
  if (sgn(coeff) != 0) e.terms.emplace(index, coeff);
  return e;
}

LinExpr LinExpr::value(const Scalar& c) {
  LinExpr e;
  e.constant = c;
  return e;
}

LinExpr& LinExpr::operator+=(const LinExpr& other) {
  for (const auto& [k, v] : other.terms) {
    Scalar& slot = terms[k];
    slot += v;
    if (sgn(slot) == 0) terms.erase(k);
  }
  constant += other.constant;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) {
  for (const auto& [k, v] : other.terms) {
    Scalar& slot = terms[k];
    slot -= v;
    if (sgn(slot) == 0) terms.erase(k);
  }
  constant -= other.constant;
  return *this;
}

LinExpr& LinExpr::operator*=(const Scalar& t) {
  if (sgn(t) == 0) {
    terms.clear();
    constant = 0;
    return *this;
  }
  for (auto& [k, v] : terms) v *= t;
  constant *= t;
  return *this;
}

Scalar LinExpr::evaluate(const Vec& point) const {
  Scalar s = constant;
  for (const auto& [k, v] : terms) s += v * point.at(k);
  return s;
}

LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
LinExpr operator*(const Scalar& t, LinExpr a) { return a *= t; }

LinExpr dot(const Vec& coeffs, const std::vector<LinExpr>& xs) {
  require_dim(xs.size(), coeffs.size(), "dot(Vec, LinExpr)");
  LinExpr out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) != 0) out += coeffs[i] * xs[i];
  }
  return out;
}

std::size_t LpBuilder::add_variable(bool nonnegative) {
  nonnegative_.push_back(nonnegative);
  return nonnegative_.size() - 1;
}

std::vector<LinExpr> LpBuilder::add_variables(std::size_t n, bool nonnegative) {
  std::vector<LinExpr> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(LinExpr::variable(add_variable(nonnegative)));
  return out;
}

void LpBuilder::add_constraint(const LinExpr& lhs, Relation rel, const LinExpr& rhs) {
  constraints_.emplace_back(lhs - rhs, rel);
}

Vec LpBuilder::objective_vector(const LinExpr& objective) const {
  Vec c(num_vars());
  for (const auto& [k, v] : objective.terms) c.at(k) = v;
  return c;
}

LinearProgram LpBuilder::program(Sense sense, const LinExpr& objective) const {
  LinearProgram lp;
  lp.sense = sense;
  lp.num_vars = num_vars();
  lp.objective = objective_vector(objective);
  lp.nonnegative = nonnegative_;
  lp.constraints.reserve(constraints_.size());
  for (const auto& [expr, rel] : constraints_) {
    Constraint c;
    c.coeffs = Vec(lp.num_vars);
    for (const auto& [k, v] : expr.terms) c.coeffs[k] = v;
    c.relation = rel;
    c.rhs = -expr.constant;
    lp.constraints.push_back(std::move(c));
  }
  return lp;
}

}  // namespace hblab
