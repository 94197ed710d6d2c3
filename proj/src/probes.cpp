#include "hblab/probes.hpp"

#include <map>
#include <random>

#include "hblab/models.hpp"

namespace hblab {

namespace {

bool finite_on(const PolyhedralSeminorm& rho, const Vec& f_on_y, const Subspace& y) {
  return chi_on_subspace(rho, f_on_y, y).is_finite();
}

// hbe_unique per member, computed once per functional.
class CertificateCache {
 public:
  CertificateCache(const Vec& f, const Subspace& y, const SeminormFamily& fam) : f_(f), y_(y), fam_(fam) {}

  const UniquenessCertificate& get(std::size_t i) {
    auto it = certs_.find(i);
    if (it == certs_.end()) it = certs_.emplace(i, hbe_unique(Pair(fam_[i], f_, y_))).first;
    return it->second;
  }

 private:
  const Vec& f_;
  const Subspace& y_;
  const SeminormFamily& fam_;
  std::map<std::size_t, UniquenessCertificate> certs_;
};

// Scans members for one shared unique extension; returns the first obstruction.
std::optional<WitnessPair> shared_extension(const std::vector<std::size_t>& members, const SeminormFamily& fam,
                                            CertificateCache& cache, Vec& shared) {
  std::optional<std::size_t> first;
  for (const std::size_t i : members) {
    const UniquenessCertificate& c = cache.get(i);
    if (c.verdict == Verdict::Multiple) {
      return WitnessPair{fam[i].label(), c.witness, fam[i].label(), *c.second_witness};
    }
    if (!first) {
      first = i;
      shared = c.witness;
    } else if (c.witness != shared) {
      return WitnessPair{fam[*first].label(), shared, fam[i].label(), c.witness};
    }
  }
  return std::nullopt;
}

QuantifierMode mode_for(const Subspace& y, const std::vector<Vec>& fs) {
  if (y.dim() == 0) return {Quantifier::Exact, fs.size(), 0};
  if (y.dim() == 1) {
    bool pos = false, neg = false;
    for (const Vec& f : fs) {
      pos = pos || sgn(f[0]) > 0;
      neg = neg || sgn(f[0]) < 0;
    }
    if (pos && neg) return {Quantifier::Exact, fs.size(), 0};
  }
  return {Quantifier::Sampled, fs.size(), 0};
}

std::string default_subject(const Subspace& y, const SeminormFamily& fam) {
  return "subspace of dim " + std::to_string(y.dim()) + " in R^" + std::to_string(y.ambient_dim()) + ", " +
         std::to_string(fam.size()) + " seminorms";
}

// Extensions of f|_Y lying in Y^#_nu: g|_Y = f and chi_rho(g) <= chi_rho^Y(f) for
// every rho above nu.
std::optional<FeasibleRegion> sharp_extensions(const Vec& f_on_y, const Subspace& y, const SeminormFamily& fam,
                                               std::size_t nu, std::size_t& num_vars) {
  LpBuilder lp;
  const auto g = lp.add_variables(y.ambient_dim());
  for (std::size_t j = 0; j < y.dim(); ++j) {
    lp.add_constraint(dot(y.basis_vector(j), g), Relation::Equal, LinExpr::value(f_on_y[j]));
  }
  for (const std::size_t r : subfamily_above(fam, nu)) {
    const ExtendedScalar c = chi_on_subspace(fam[r], f_on_y, y);
    if (!c.is_finite()) return std::nullopt;
    add_dual_gauge_bound(lp, fam[r], g, LinExpr::value(c.value()));
  }
  const LinearProgram prog = lp.program(Sense::Minimize, LinExpr{});
  num_vars = prog.num_vars;
  FeasibleRegion region(prog);
  if (!region.feasible()) return std::nullopt;
  return region;
}

}  // namespace

std::string to_string(const QuantifierMode& m) {
  if (m.kind == Quantifier::Exact) return "EXACT";
  return "SAMPLED(" + std::to_string(m.samples) + ", seed " + std::to_string(m.seed) + ")";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds:
      return "HOLDS";
    case Status::Fails:
      return "FAILS";
    case Status::NoFiniteGauge:
      return "NO_FINITE_GAUGE";
  }
  return "?";
}

FunctionalSample sample_functionals(std::size_t dim_y, std::size_t samples, std::uint64_t seed) {
  FunctionalSample out;
  if (dim_y == 0) {
    out.fs = {Vec{}};
    out.mode = {Quantifier::Exact, 1, 0};
    return out;
  }
  if (dim_y == 1) {
    out.fs = {Vec{1}, Vec{-1}};
    out.mode = {Quantifier::Exact, 2, 0};
    return out;
  }
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long> entry(-3, 3);
  while (out.fs.size() < samples) {
    Vec f(dim_y);
    for (auto& x : f) x = Scalar(entry(gen));
    if (!is_zero(f)) out.fs.push_back(std::move(f));
  }
  out.mode = {Quantifier::Sampled, samples, seed};
  return out;
}

bool ProbeReport::holds() const {
  for (const auto& v : verdicts) {
    if (v.status != Status::Holds) return false;
  }
  return true;
}

bool ProbeReport::fails() const {
  for (const auto& v : verdicts) {
    if (v.status == Status::Fails) return true;
  }
  return false;
}

FunctionalVerdict snp_at(const Vec& f_on_y, const Subspace& y, const SeminormFamily& fam,
                         std::size_t candidate_limit) {
  require_dim(f_on_y.size(), y.dim(), "snp_at");
  FunctionalVerdict v;
  v.f = f_on_y;
  CertificateCache cache(f_on_y, y, fam);
  const std::size_t limit = std::min(candidate_limit, fam.size());
  bool any_finite = false;
  for (std::size_t mu = 0; mu < limit; ++mu) {
    if (!finite_on(fam[mu], f_on_y, y)) continue;
    any_finite = true;
    Vec shared;
    auto obstruction = shared_extension(subfamily_above(fam, mu), fam, cache, shared);
    if (!obstruction) {
      v.status = Status::Holds;
      v.certifying_mu = fam[mu].label();
      v.extension = std::move(shared);
      v.obstructions.clear();
      return v;
    }
    v.obstructions.push_back({fam[mu].label(), std::move(*obstruction)});
  }
  if (any_finite) {
    v.status = Status::Fails;
    v.witness = v.obstructions.front().pair;
  }
  return v;
}

FunctionalVerdict usnp_at(const Vec& f_on_y, const Subspace& y, const SeminormFamily& fam) {
  require_dim(f_on_y.size(), y.dim(), "usnp_at");
  FunctionalVerdict v;
  v.f = f_on_y;
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (finite_on(fam[i], f_on_y, y)) finite.push_back(i);
  }
  if (finite.empty()) return v;
  CertificateCache cache(f_on_y, y, fam);
  Vec shared;
  auto obstruction = shared_extension(finite, fam, cache, shared);
  if (obstruction) {
    v.status = Status::Fails;
    v.witness = std::move(obstruction);
  } else {
    v.status = Status::Holds;
    v.extension = std::move(shared);
  }
  return v;
}

ProbeReport snp_probe(const Subspace& y, const SeminormFamily& fam, const std::vector<Vec>& fs,
                      std::size_t candidate_limit, std::string subject) {
  ProbeReport r;
  r.subject = subject.empty() ? default_subject(y, fam) : std::move(subject);
  r.mode = mode_for(y, fs);
  for (const Vec& f : fs) r.verdicts.push_back(snp_at(f, y, fam, candidate_limit));
  return r;
}

ProbeReport snp_probe(const Subspace& y, const SeminormFamily& fam, const FunctionalSample& sample,
                      std::size_t candidate_limit, std::string subject) {
  ProbeReport r = snp_probe(y, fam, sample.fs, candidate_limit, std::move(subject));
  r.mode = sample.mode;
  return r;
}

ProbeReport usnp_probe(const Subspace& y, const SeminormFamily& fam, const std::vector<Vec>& fs,
                       std::string subject) {
  ProbeReport r;
  r.subject = subject.empty() ? default_subject(y, fam) : std::move(subject);
  r.mode = mode_for(y, fs);
  for (const Vec& f : fs) r.verdicts.push_back(usnp_at(f, y, fam));
  return r;
}

ProbeReport usnp_probe(const Subspace& y, const SeminormFamily& fam, const FunctionalSample& sample,
                       std::string subject) {
  ProbeReport r = usnp_probe(y, fam, sample.fs, std::move(subject));
  r.mode = sample.mode;
  return r;
}

bool verify_witness(const WitnessPair& w, const Vec& f_on_y, const Subspace& y, const SeminormFamily& fam) {
  if (w.ext1 == w.ext2) return false;
  for (const auto& [label, ext] : {std::pair{w.rho1, w.ext1}, std::pair{w.rho2, w.ext2}}) {
    const auto idx = fam.index_of(label);
    if (!idx || ext.size() != y.ambient_dim()) return false;
    if (restrict_functional(ext, y) != f_on_y) return false;
    const ExtendedScalar c = chi_on_subspace(fam[*idx], f_on_y, y);
    if (!c.is_finite() || chi(fam[*idx], ext) != c) return false;
  }
  return true;
}

SharpMembership ysharp_membership(const Vec& g, const Subspace& y, const SeminormFamily& fam,
                                  std::size_t candidate_limit) {
  require_dim(g.size(), y.ambient_dim(), "ysharp_membership");
  SharpMembership out{g, std::nullopt};
  const Vec gy = restrict_functional(g, y);
  std::vector<signed char> good(fam.size(), -1);
  auto preserved = [&](std::size_t r) {
    if (good[r] < 0) {
      const ExtendedScalar c = chi(fam[r], g);
      good[r] = c.is_finite() && c == chi_on_subspace(fam[r], gy, y);
    }
    return good[r] == 1;
  };
  const std::size_t limit = std::min(candidate_limit, fam.size());
  for (std::size_t mu = 0; mu < limit; ++mu) {
    if (!preserved(mu)) continue;
    bool all = true;
    for (const std::size_t r : subfamily_above(fam, mu)) {
      if (!preserved(r)) {
        all = false;
        break;
      }
    }
    if (all) {
      out.certifying_mu = fam[mu].label();
      return out;
    }
  }
  return out;
}

std::optional<Decomposition> th3_decomposition(const Vec& f, const Subspace& y, const SeminormFamily& fam,
                                               std::size_t candidate_limit) {
  require_dim(f.size(), y.ambient_dim(), "th3_decomposition");
  const Vec fy = restrict_functional(f, y);
  const std::size_t n = y.ambient_dim();
  std::optional<Decomposition> out;
  bool unique = true;
  const std::size_t limit = std::min(candidate_limit, fam.size());
  for (std::size_t nu = 0; nu < limit; ++nu) {
    if (!finite_on(fam[nu], fy, y)) continue;
    std::size_t num_vars = 0;
    const auto region = sharp_extensions(fy, y, fam, nu, num_vars);
    if (!region) continue;
    Vec point(n);
    for (std::size_t i = 0; i < n; ++i) {
      Vec objective(num_vars);
      objective[i] = 1;
      const LpResult lo = region->optimize(objective, Sense::Minimize, false);
      const LpResult hi = region->optimize(objective, Sense::Maximize, false);
      const auto* a = std::get_if<LpOptimal>(&lo);
      const auto* b = std::get_if<LpOptimal>(&hi);
      if (!a || !b) throw InternalError("th3_decomposition: extension set is unbounded");
      if (a->value != b->value) unique = false;
      point[i] = a->value;
    }
    if (!out) {
      out = Decomposition{point, sub(f, point), fam[nu].label(), false};
    } else if (point != out->g) {
      unique = false;
    }
  }
  if (out) out->unique = unique;
  return out;
}

bool th3_c_check(const Vec& f1, const Vec& f2, const Subspace& y, const SeminormFamily& fam,
                 std::size_t candidate_limit) {
  if (!ysharp_membership(f1, y, fam, candidate_limit).member() ||
      !ysharp_membership(f2, y, fam, candidate_limit).member()) {
    throw PreconditionError("th3_c_check: both functionals must lie in Y^#");
  }
  const Vec s = add(f1, f2);
  if (!is_zero(restrict_functional(s, y))) throw PreconditionError("th3_c_check: f1 + f2 must vanish on Y");
  return is_zero(s);
}

QuotientModel::QuotientModel(const SeminormFamily& fam, const Subspace& z) : z_(z) {
  if (fam.size() == 0) throw PreconditionError("quotient_model: empty family");
  require_dim(z.ambient_dim(), fam.dim(), "quotient_model");
  std::vector<PolyhedralSeminorm> members;
  for (const auto& m : fam.members()) members.push_back(PolyhedralSeminorm::quotient(m.label(), m, z));
  family_ = SeminormFamily(std::move(members), fam.directed());
}

Subspace QuotientModel::image(const Subspace& y) const {
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < y.dim(); ++i) vs.push_back(project(y.basis_vector(i)));
  return Subspace::span(dim(), vs);
}

QuotientModel quotient_model(const SeminormFamily& fam, const Subspace& z) { return QuotientModel(fam, z); }

bool quotient_gauge_identity_holds(const PolyhedralSeminorm& rho, const Subspace& z, const Vec& f_bar) {
  const auto q = PolyhedralSeminorm::quotient(rho.label(), rho, z);
  require_dim(f_bar.size(), q.dim(), "quotient_gauge_identity_holds");
  return chi_primal(q, f_bar) == chi(rho, q.pullback(f_bar));
}

std::vector<TransportCheck> th4_crosscheck(const Subspace& y, const SeminormFamily& fam, const std::vector<Vec>& fs) {
  std::vector<TransportCheck> out;
  for (const Vec& f : fs) {
    require_dim(f.size(), y.dim(), "th4_crosscheck");
    if (is_zero(f)) throw PreconditionError("th4_crosscheck: functionals must be nonzero");
    Mat row(1, f.size());
    for (std::size_t j = 0; j < f.size(); ++j) row(0, j) = f[j];
    const Subspace ker = kernel(row);
    std::vector<Vec> zs;
    for (std::size_t i = 0; i < ker.dim(); ++i) zs.push_back(y.embed(ker.basis_vector(i)));
    const QuotientModel qm(fam, Subspace::span(y.ambient_dim(), zs));
    const Subspace ybar = qm.image(y);
    // ybar's basis is pi of the first basis vector of Y outside Z.
    std::size_t j = 0;
    while (sgn(f[j]) == 0) ++j;
    TransportCheck c;
    c.f = f;
    c.f_bar = Vec{f[j]};
    if (ybar.basis_vector(0) != qm.project(y.basis_vector(j))) throw InternalError("th4_crosscheck: unexpected Y/Z basis");
    c.upstairs = usnp_at(f, y, fam);
    c.downstairs = usnp_at(c.f_bar, ybar, qm.family());
    c.agree = c.upstairs.status == c.downstairs.status;
    out.push_back(std::move(c));
  }
  return out;
}

WeakFamily weak_family(const PolyhedralSeminorm& norm, const std::vector<Vec>& dual_sample, std::size_t cap) {
  if (dual_sample.empty()) throw PreconditionError("weak_family: empty sample");
  if (dual_sample.size() > 16) throw PreconditionError("weak_family: at most 16 sample functionals");
  for (const Vec& s : dual_sample) {
    if (chi(norm, s) > ExtendedScalar(Scalar(1))) {
      throw PreconditionError("weak_family: sample functional " + to_string(s) + " lies outside the dual ball");
    }
  }
  WeakFamily out;
  out.truncated = cap < dual_sample.size();
  std::vector<PolyhedralSeminorm> members;
  for (unsigned mask = 1; mask < (1U << dual_sample.size()); ++mask) {
    const auto sites = subset_sites(mask);
    if (sites.size() > cap) continue;
    std::vector<Vec> gens;
    for (const std::size_t i : sites) gens.push_back(dual_sample[i]);
    members.emplace_back("rho" + subset_name(mask), std::vector<Atom>{Atom{Combine::Max, std::move(gens)}});
  }
  out.family = SeminormFamily(std::move(members), !out.truncated);
  return out;
}

std::vector<BridgeVerdict> property_u_bridge(const PolyhedralSeminorm& norm, const Subspace& y,
                                             const std::vector<Vec>& fs, const WeakFamily& weak) {
  if (norm.atoms().size() != 1) throw PreconditionError("property_u_bridge: the norm must be a single atom");
  if (seminorm_kernel(norm).dim() != 0) throw PreconditionError("property_u_bridge: the norm has a kernel");
  std::vector<BridgeVerdict> out;
  for (const Vec& f : fs) {
    BridgeVerdict b;
    b.f = f;
    b.classic = hbe_unique(Pair(norm, f, y)).verdict;
    b.snp = snp_at(f, y, weak.family);
    b.agree = (b.classic == Verdict::Unique) == (b.snp.status == Status::Holds);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace hblab
