#include "hblab/seminorm.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace hblab {

namespace {

constexpr std::size_t kMaxSpanningSet = std::size_t{1} << 16;

Vec canonical_sign(Vec v) {
  for (const auto& c : v) {
    if (sgn(c) == 0) continue;
    if (sgn(c) < 0) v = negate(v);
    break;
  }
  return v;
}

std::vector<LinExpr> constants(const Vec& v) {
  std::vector<LinExpr> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(LinExpr::value(c));
  return out;
}

// rows^T * xs: out_i = sum_j m(j, i) xs_j, over the first xs.size() rows of m.
std::vector<LinExpr> transpose_apply(const Mat& m, const std::vector<LinExpr>& xs) {
  std::vector<LinExpr> out(m.cols());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (std::size_t i = 0; i < m.cols(); ++i) {
      if (sgn(m(j, i)) != 0) out[i] += m(j, i) * xs[j];
    }
  }
  return out;
}

Subspace stacked_kernel(const std::vector<Atom>& atoms, std::size_t dim) {
  std::vector<Vec> rows;
  for (const auto& a : atoms) rows.insert(rows.end(), a.generators.begin(), a.generators.end());
  return kernel(Mat::from_rows(rows, dim));
}

// Vertices of the dual ball of an unwrapped seminorm (superset), both signs.
std::set<Vec> atom_sum_vertices(const std::vector<Atom>& atoms, std::size_t dim) {
  std::set<Vec> acc{Vec(dim)};
  for (const auto& atom : atoms) {
    std::set<Vec> local;
    if (atom.combine == Combine::Max) {
      for (const auto& a : atom.generators) {
        local.insert(a);
        local.insert(negate(a));
      }
    } else {
      local.insert(Vec(dim));
      for (const auto& a : atom.generators) {
        std::set<Vec> next;
        for (const auto& v : local) {
          next.insert(add(v, a));
          next.insert(sub(v, a));
        }
        local = std::move(next);
        if (local.size() > kMaxSpanningSet) throw PreconditionError("dual ball enumeration too large");
      }
    }
    std::set<Vec> next;
    for (const auto& v : acc)
      for (const auto& w : local) next.insert(add(v, w));
    acc = std::move(next);
    if (acc.size() > kMaxSpanningSet) throw PreconditionError("dual ball enumeration too large");
  }
  return acc;
}

bool chi_at_most_one(const PolyhedralSeminorm& rho, const Vec& g) {
  LpBuilder lp;
  add_dual_gauge_bound(lp, rho, constants(g), LinExpr::value(1));
  return FeasibleRegion(lp.program(Sense::Maximize, LinExpr{})).feasible();
}

// Every vertex of P intersect L lies in aff(S) intersect L for some set S of
// at most codim(L)+1 vertices of P, with nonnegative weights.
std::vector<Vec> slice_candidates(const std::vector<Vec>& verts, const Subspace& z) {
  const std::size_t c = z.dim();
  const std::size_t n = z.ambient_dim();
  std::set<Vec> found;
  std::vector<std::size_t> pick;
  auto try_subset = [&]() {
    const std::size_t s = pick.size();
    Mat a(c + 1, s);
    Vec b(c + 1);
    for (std::size_t k = 0; k < s; ++k) {
      const Vec zv = z.basis().apply(verts[pick[k]]);
      for (std::size_t r = 0; r < c; ++r) a(r, k) = zv[r];
      a(c, k) = 1;
    }
    b[c] = 1;
    if (rank(a) != s) return;
    auto w = solve_linear(a, b);
    if (!w) return;
    Vec point(n);
    for (std::size_t k = 0; k < s; ++k) {
      if (sgn((*w)[k]) < 0) return;
      point = add(point, scale((*w)[k], verts[pick[k]]));
    }
    found.insert(point);
  };
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (!pick.empty()) try_subset();
    if (pick.size() == c + 1) return;
    for (std::size_t i = start; i < verts.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  recurse(recurse, 0);
  return {found.begin(), found.end()};
}

}  // namespace

Scalar Atom::value(const Vec& x) const {
  Scalar out = 0;
  for (const auto& a : generators) {
    Scalar v = abs(dot(a, x));
    if (combine == Combine::Sum)
      out += v;
    else if (v > out)
      out = std::move(v);
  }
  return out;
}

PolyhedralSeminorm::PolyhedralSeminorm(std::string label, std::vector<Atom> atoms)
    : label_(std::move(label)), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw PreconditionError("seminorm '" + label_ + "' has no atoms");
  dim_ = atoms_.front().ambient_dim();
  for (const auto& a : atoms_) {
    if (a.generators.empty()) throw PreconditionError("seminorm '" + label_ + "' has an atom without generators");
    for (const auto& g : a.generators) require_dim(g.size(), dim_, "seminorm generator");
  }
}

PolyhedralSeminorm PolyhedralSeminorm::quotient(std::string label, const PolyhedralSeminorm& base,
                                                const Subspace& z) {
  if (base.is_quotient()) throw PreconditionError("quotient of a quotient seminorm is not supported");
  require_dim(z.ambient_dim(), base.dim(), "quotient subspace");
  const std::size_t n = base.dim();
  std::vector<Vec> chosen;
  Subspace acc = z;
  for (std::size_t i = 0; i < n && acc.dim() < n; ++i) {
    Vec e = unit_vector(n, i);
    if (acc.contains(e)) continue;
    acc = acc.sum(Subspace::span(n, {e}));
    chosen.push_back(std::move(e));
  }
  auto data = std::make_shared<QuotientData>();
  data->base = std::make_shared<const PolyhedralSeminorm>(base);
  data->z = z;
  data->complement = Mat::from_rows(chosen, n);
  std::vector<Vec> all = chosen;
  for (std::size_t i = 0; i < z.dim(); ++i) all.push_back(z.basis_vector(i));
  data->coords_solver = inverse(Mat::from_rows(all, n).transpose());

  PolyhedralSeminorm q;
  q.label_ = std::move(label);
  q.atoms_ = base.atoms_;
  q.dim_ = chosen.size();
  q.quotient_ = std::move(data);
  return q;
}

std::size_t PolyhedralSeminorm::generator_count() const {
  std::size_t n = 0;
  for (const auto& a : atoms_) n += a.generators.size();
  return n;
}

const PolyhedralSeminorm& PolyhedralSeminorm::base() const {
  if (!quotient_) throw PreconditionError("seminorm '" + label_ + "' is not a quotient");
  return *quotient_->base;
}

const Subspace& PolyhedralSeminorm::quotient_space() const {
  if (!quotient_) throw PreconditionError("seminorm '" + label_ + "' is not a quotient");
  return quotient_->z;
}

const Mat& PolyhedralSeminorm::complement() const {
  if (!quotient_) throw PreconditionError("seminorm '" + label_ + "' is not a quotient");
  return quotient_->complement;
}

Vec PolyhedralSeminorm::lift(const Vec& coords) const {
  require_dim(coords.size(), dim_, "lift");
  return complement().apply_transpose(coords);
}

Vec PolyhedralSeminorm::project(const Vec& x) const {
  require_dim(x.size(), base().dim(), "project");
  Vec all = quotient_->coords_solver.apply(x);
  all.resize(dim_);
  return all;
}

Vec PolyhedralSeminorm::pullback(const Vec& f) const {
  require_dim(f.size(), dim_, "pullback");
  Vec padded = f;
  padded.resize(base().dim());
  return quotient_->coords_solver.apply_transpose(padded);
}

PolyhedralSeminorm PolyhedralSeminorm::relabeled(std::string label) const {
  PolyhedralSeminorm out = *this;
  out.label_ = std::move(label);
  return out;
}

Scalar eval(const PolyhedralSeminorm& rho, const Vec& x) {
  require_dim(x.size(), rho.dim(), "eval");
  if (!rho.is_quotient()) {
    Scalar s = 0;
    for (const auto& a : rho.atoms()) s += a.value(x);
    return s;
  }
  if (rho.quotient_space().dim() == 0) return eval(rho.base(), rho.lift(x));
  LpBuilder lp;
  const LinExpr u = add_seminorm_bound(lp, rho, constants(x));
  const LpResult r = solve_lp(lp.program(Sense::Minimize, u));
  const auto* opt = std::get_if<LpOptimal>(&r);
  if (!opt) throw InternalError("quotient evaluation LP is not optimal");
  return opt->value + u.constant;
}

PolyhedralSeminorm restrict(const PolyhedralSeminorm& rho, const Subspace& y) {
  if (rho.is_quotient()) throw PreconditionError("restrict: quotient seminorms must be restricted upstairs");
  require_dim(y.ambient_dim(), rho.dim(), "restrict");
  std::vector<Atom> atoms;
  for (const auto& a : rho.atoms()) {
    Atom r{a.combine, {}};
    for (const auto& g : a.generators) r.generators.push_back(y.basis().apply(g));
    atoms.push_back(std::move(r));
  }
  return PolyhedralSeminorm(rho.label(), std::move(atoms));
}

PolyhedralSeminorm sum(const PolyhedralSeminorm& a, const PolyhedralSeminorm& b, std::string label) {
  if (a.is_quotient() || b.is_quotient()) throw PreconditionError("sum: quotient operands are not supported");
  require_dim(b.dim(), a.dim(), "sum");
  std::vector<Atom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return PolyhedralSeminorm(std::move(label), std::move(atoms));
}

Subspace seminorm_kernel(const PolyhedralSeminorm& rho) {
  if (!rho.is_quotient()) return stacked_kernel(rho.atoms(), rho.dim());
  const Subspace k = stacked_kernel(rho.atoms(), rho.base().dim());
  std::vector<Vec> images;
  for (std::size_t i = 0; i < k.dim(); ++i) images.push_back(rho.project(k.basis_vector(i)));
  return Subspace::span(rho.dim(), images);
}

std::vector<Vec> dual_ball_spanning_set(const PolyhedralSeminorm& mu) {
  std::set<Vec> reps;
  if (!mu.is_quotient()) {
    for (const auto& v : atom_sum_vertices(mu.atoms(), mu.dim())) {
      if (!is_zero(v)) reps.insert(canonical_sign(v));
    }
    return {reps.begin(), reps.end()};
  }
  const auto verts_set = atom_sum_vertices(mu.atoms(), mu.base().dim());
  const std::vector<Vec> verts(verts_set.begin(), verts_set.end());
  const Mat& comp = mu.complement();
  for (const auto& l : slice_candidates(verts, mu.quotient_space())) {
    Vec q = comp.apply(l);
    if (!is_zero(q)) reps.insert(canonical_sign(std::move(q)));
  }
  return {reps.begin(), reps.end()};
}

bool dominates(const PolyhedralSeminorm& rho, const PolyhedralSeminorm& mu) {
  require_dim(mu.dim(), rho.dim(), "dominates");
  if (!seminorm_kernel(mu).contains(seminorm_kernel(rho))) return false;
  if (!rho.is_quotient() && !mu.is_quotient()) {
    // mu = rho + (other atoms) is the common case inside directed closures.
    std::vector<const Atom*> pool;
    for (const auto& a : rho.atoms()) pool.push_back(&a);
    bool sub_multiset = true;
    for (const auto& a : mu.atoms()) {
      auto it = std::find_if(pool.begin(), pool.end(), [&](const Atom* p) {
        return p && p->combine == a.combine && p->generators == a.generators;
      });
      if (it == pool.end()) {
        sub_multiset = false;
        break;
      }
      *it = nullptr;
    }
    if (sub_multiset) return true;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
      const Vec e = unit_vector(rho.dim(), i);
      if (eval(mu, e) > eval(rho, e)) return false;
    }
  }
  for (const auto& v : dual_ball_spanning_set(mu)) {
    if (!chi_at_most_one(rho, v)) return false;
  }
  return true;
}

LinExpr add_seminorm_bound(LpBuilder& lp, const PolyhedralSeminorm& rho, const std::vector<LinExpr>& xs) {
  require_dim(xs.size(), rho.dim(), "add_seminorm_bound");
  if (rho.is_quotient()) {
    std::vector<LinExpr> full = transpose_apply(rho.complement(), xs);
    const Subspace& z = rho.quotient_space();
    for (std::size_t j = 0; j < z.dim(); ++j) {
      const LinExpr b = LinExpr::variable(lp.add_variable());
      const Vec zj = z.basis_vector(j);
      for (std::size_t i = 0; i < full.size(); ++i) {
        if (sgn(zj[i]) != 0) full[i] -= zj[i] * b;
      }
    }
    return add_seminorm_bound(lp, rho.base(), full);
  }
  LinExpr total;
  for (const auto& atom : rho.atoms()) {
    LinExpr shared;
    if (atom.combine == Combine::Max) {
      shared = LinExpr::variable(lp.add_variable(true));
      total += shared;
    }
    for (const auto& a : atom.generators) {
      const LinExpr e = dot(a, xs);
      LinExpr s = shared;
      if (atom.combine == Combine::Sum) {
        s = LinExpr::variable(lp.add_variable(true));
        total += s;
      }
      lp.add_constraint(s, Relation::GreaterEqual, e);
      lp.add_constraint(s + e, Relation::GreaterEqual, LinExpr{});
    }
  }
  return total;
}

void add_dual_gauge_bound(LpBuilder& lp, const PolyhedralSeminorm& rho, const std::vector<LinExpr>& g,
                          const LinExpr& t) {
  require_dim(g.size(), rho.dim(), "add_dual_gauge_bound");
  if (rho.is_quotient()) {
    // pullback is linear; apply it column by column.
    std::vector<LinExpr> full(rho.base().dim());
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Vec col = rho.pullback(unit_vector(rho.dim(), j));
      for (std::size_t i = 0; i < col.size(); ++i) {
        if (sgn(col[i]) != 0) full[i] += col[i] * g[j];
      }
    }
    add_dual_gauge_bound(lp, rho.base(), full, t);
    return;
  }
  std::vector<LinExpr> combo(rho.dim());
  for (const auto& atom : rho.atoms()) {
    LinExpr mass;
    for (const auto& a : atom.generators) {
      const LinExpr plus = LinExpr::variable(lp.add_variable(true));
      const LinExpr minus = LinExpr::variable(lp.add_variable(true));
      const LinExpr lambda = plus - minus;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) != 0) combo[i] += a[i] * lambda;
      }
      if (atom.combine == Combine::Max)
        mass += plus + minus;
      else
        lp.add_constraint(plus + minus, Relation::LessEqual, t);
    }
    if (atom.combine == Combine::Max) lp.add_constraint(mass, Relation::LessEqual, t);
  }
  for (std::size_t i = 0; i < combo.size(); ++i) lp.add_constraint(combo[i], Relation::Equal, g[i]);
}

SeminormFamily::SeminormFamily(std::vector<PolyhedralSeminorm> members, bool directed)
    : members_(std::move(members)), directed_(directed), cache_(std::make_shared<Cache>()) {
  std::set<std::string> labels;
  for (const auto& m : members_) {
    if (!labels.insert(m.label()).second) throw PreconditionError("duplicate seminorm label '" + m.label() + "'");
    if (m.dim() != members_.front().dim()) throw DimensionError("family members live in different spaces");
  }
  cache_->table.assign(members_.size() * members_.size(), -1);
}

std::size_t SeminormFamily::dim() const { return members_.empty() ? 0 : members_.front().dim(); }

std::optional<std::size_t> SeminormFamily::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].label() == label) return i;
  }
  return std::nullopt;
}

std::size_t SeminormFamily::require_index(const std::string& label) const {
  auto i = index_of(label);
  if (!i) throw PreconditionError("unknown seminorm label '" + label + "'");
  return *i;
}

bool SeminormFamily::dominates(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw PreconditionError("family index out of range");
  if (i == j) return true;
  const std::size_t slot = i * size() + j;
  {
    std::lock_guard lock(cache_->mutex);
    if (cache_->table[slot] >= 0) return cache_->table[slot] == 1;
  }
  const bool d = hblab::dominates(members_[i], members_[j]);
  std::lock_guard lock(cache_->mutex);
  cache_->table[slot] = d ? 1 : 0;
  return d;
}

bool SeminormFamily::verify_directed() const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      bool found = false;
      for (std::size_t k = 0; k < size() && !found; ++k) found = dominates(k, i) && dominates(k, j);
      if (!found) return false;
    }
  }
  return true;
}

ClosureResult directed_closure(const SeminormFamily& fam, std::size_t cap) {
  if (cap < fam.size()) throw PreconditionError("directed_closure: cap below the family size");
  std::vector<PolyhedralSeminorm> members = fam.members();
  std::vector<std::vector<signed char>> table(members.size(), std::vector<signed char>(members.size(), -1));
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j) {
      std::lock_guard lock(fam.cache_->mutex);
      table[i][j] = fam.cache_->table[i * members.size() + j];
    }
  auto dom = [&](std::size_t i, std::size_t j) {
    if (i == j) return true;
    if (table[i][j] < 0) table[i][j] = dominates(members[i], members[j]) ? 1 : 0;
    return table[i][j] == 1;
  };

  ClosureResult out;
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> open;
    for (std::size_t i = 0; i < members.size() && !open; ++i) {
      for (std::size_t j = i + 1; j < members.size() && !open; ++j) {
        bool found = false;
        for (std::size_t k = 0; k < members.size() && !found; ++k) found = dom(k, i) && dom(k, j);
        if (!found) open = std::make_pair(i, j);
      }
    }
    if (!open) {
      out.closed = true;
      break;
    }
    if (members.size() >= cap) break;
    const auto [i, j] = *open;
    std::string label = members[i].label() + "+" + members[j].label();
    out.added.push_back(label);
    members.push_back(sum(members[i], members[j], std::move(label)));
    for (auto& row : table) row.push_back(-1);
    table.emplace_back(members.size(), -1);
  }

  SeminormFamily result(std::move(members), out.closed);
  for (std::size_t i = 0; i < result.size(); ++i)
    for (std::size_t j = 0; j < result.size(); ++j) result.cache_->table[i * result.size() + j] = table[i][j];
  out.family = std::move(result);
  return out;
}

std::vector<std::size_t> subfamily_above(const SeminormFamily& fam, std::size_t mu) {
  if (mu >= fam.size()) throw PreconditionError("subfamily_above: mu is not a member");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (fam.dominates(i, mu)) out.push_back(i);
  }
  return out;
}

}  // namespace hblab
