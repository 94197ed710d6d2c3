#include "hblab/models.hpp"

#include <algorithm>

#include "hblab/errors.hpp"

namespace hblab {

namespace {

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

Atom atom(Combine c, std::vector<Vec> gens) { return Atom{c, std::move(gens)}; }

std::vector<Vec> weighted_diracs(std::size_t m, unsigned mask, const Scalar& w) {
  std::vector<Vec> out;
  for (const std::size_t i : subset_sites(mask)) out.push_back(scale(w, dirac(m, i)));
  return out;
}

}  // namespace

const Vec& Model::functional(const std::string& name) const {
  for (const auto& nf : functionals) {
    if (nf.name == name) return nf.f;
  }
  throw PreconditionError("model '" + id + "' has no functional '" + name + "'");
}

Vec dirac(std::size_t m, std::size_t i) { return unit_vector(m, i); }

PolyhedralSeminorm ex4_seminorm(int n) {
  if (n < 1) throw PreconditionError("ex4_seminorm: n must be positive");
  const Scalar s(n);
  const std::string label = "rho" + std::to_string(n);
  if (is_power_of_two(n)) return PolyhedralSeminorm(label, {atom(Combine::Sum, {{s, 0}, {0, s}})});
  if (n % 2 == 1) return PolyhedralSeminorm(label, {atom(Combine::Sum, {{s, 0}, {0, s / 2}})});
  return PolyhedralSeminorm(label, {atom(Combine::Max, {{s, 0}, {0, s}})});
}

Model build_ex4(int n_max, const Scalar& k) {
  if (n_max < 6) throw PreconditionError("build_ex4: n_max must be at least 6");
  int top = 2;
  while (top < 2 * n_max + 2) top *= 2;
  std::vector<PolyhedralSeminorm> members;
  for (int n = 1; n <= top; ++n) members.push_back(ex4_seminorm(n));
  Model m;
  m.id = "ex4";
  m.family = SeminormFamily(std::move(members), true);
  m.y = Subspace::span(2, {{1, 1}});
  m.candidate_limit = static_cast<std::size_t>(n_max);
  m.functionals.push_back({"f", {k}});
  return m;
}

std::string subset_name(unsigned mask) {
  std::string out = "{";
  bool first = true;
  for (const std::size_t i : subset_sites(mask)) {
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

std::vector<std::size_t> subset_sites(unsigned mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask >> i; ++i) {
    if ((mask >> i) & 1U) out.push_back(i);
  }
  return out;
}

SeminormFamily cpz_max_family(std::size_t m) {
  if (m < 1 || m > 10) throw PreconditionError("C_p(Z) models support 1 to 10 sites");
  std::vector<PolyhedralSeminorm> members;
  for (unsigned mask = 1; mask < (1U << m); ++mask) {
    members.emplace_back("rho" + subset_name(mask), std::vector<Atom>{atom(Combine::Max, weighted_diracs(m, mask, 1))});
  }
  return SeminormFamily(std::move(members), true);
}

Model build_cpz(std::size_t m, const std::vector<std::size_t>& a, CpzKind kind) {
  if (m < 1 || m > 10) throw PreconditionError("build_cpz: m must be between 1 and 10");
  std::vector<bool> in_a(m, false);
  for (const std::size_t i : a) {
    if (i >= m) throw PreconditionError("build_cpz: site outside Z");
    in_a[i] = true;
  }
  const auto a_size = static_cast<std::size_t>(std::count(in_a.begin(), in_a.end(), true));
  if (a_size < 1 || a_size >= m) throw PreconditionError("build_cpz: need 1 <= |A| < m");

  std::vector<PolyhedralSeminorm> members;
  for (unsigned mask = 1; mask < (1U << m); ++mask) {
    const std::string name = subset_name(mask);
    const Scalar size(static_cast<long>(subset_sites(mask).size()));
    switch (kind) {
      case CpzKind::Max:
        members.emplace_back("rho" + name, std::vector<Atom>{atom(Combine::Max, weighted_diracs(m, mask, 1))});
        break;
      case CpzKind::Sum:
        members.emplace_back("rho" + name, std::vector<Atom>{atom(Combine::Sum, weighted_diracs(m, mask, 1))});
        break;
      case CpzKind::Mixed:
        members.emplace_back("rho" + name, std::vector<Atom>{atom(Combine::Max, weighted_diracs(m, mask, size))});
        members.emplace_back("mu" + name, std::vector<Atom>{atom(Combine::Sum, weighted_diracs(m, mask, size))});
        break;
    }
  }
  std::size_t window = members.size();
  if (kind == CpzKind::Mixed) {
    // mu_F lies below rho_Z = m max iff |F|^2 <= m; those and every rho_F come first.
    std::vector<PolyhedralSeminorm> below, above;
    for (auto& s : members) {
      const std::size_t count = s.atoms().front().generators.size();
      const bool is_mu = s.label().rfind("mu", 0) == 0;
      (is_mu && count * count > m ? above : below).push_back(std::move(s));
    }
    window = below.size();
    members = std::move(below);
    for (auto& s : above) members.push_back(std::move(s));
  }
  std::vector<Vec> y_basis;
  for (std::size_t i = 0; i < m; ++i) {
    if (!in_a[i]) y_basis.push_back(dirac(m, i));
  }
  Model out;
  out.id = kind == CpzKind::Max ? "cpz-max" : (kind == CpzKind::Sum ? "cpz-sum" : "cpz-mixed");
  out.family = SeminormFamily(std::move(members), true);
  out.y = Subspace::span(m, y_basis);
  out.candidate_limit = window;
  return out;
}

Model build_span_f0(const Vec& f0) {
  if (is_zero(f0)) throw PreconditionError("build_span_f0: f0 must be nonzero");
  Model out;
  out.id = "span-f0";
  out.family = cpz_max_family(f0.size());
  out.y = Subspace::span(f0.size(), {f0});
  out.candidate_limit = out.family.size();
  out.functionals.push_back({"f", {1}});
  return out;
}

P5Model build_p5(const Vec& f1, const Vec& f2) {
  require_dim(f2.size(), f1.size(), "build_p5");
  const std::size_t m = f1.size();
  const Subspace y = Subspace::span(m, {f1, f2});
  if (y.dim() != 2) throw PreconditionError("build_p5: f1 and f2 must span a two-dimensional subspace");
  Scalar top = 0;
  for (const auto& v : f1) top = std::max(top, abs(v));
  P5Model out;
  for (std::size_t i = 0; i < m; ++i) {
    if (abs(f1[i]) == top) out.maximizers.push_back(i);
  }
  if (out.maximizers.size() < 3) throw PreconditionError("build_p5: |f1| needs at least three maximizers");

  out.model.id = "p5-two-dim";
  out.model.family = cpz_max_family(m);
  out.model.y = y;
  out.model.candidate_limit = out.model.family.size();
  for (const std::size_t i : out.maximizers) {
    out.model.functionals.push_back({"delta" + std::to_string(i + 1), restrict_functional(dirac(m, i), y)});
  }

  const auto& mx = out.maximizers;
  for (const std::size_t x3 : mx) {
    for (const std::size_t x1 : mx) {
      for (const std::size_t x2 : mx) {
        if (x1 == x3 || x2 == x3 || x2 <= x1 || out.triple) continue;
        const Vec d1 = restrict_functional(dirac(m, x1), y);
        const Vec d2 = restrict_functional(dirac(m, x2), y);
        const Mat cols = Mat::from_rows({d1, d2}, 2).transpose();
        if (rank(cols) < 2) continue;
        const auto ab = solve_linear(cols, restrict_functional(dirac(m, x3), y));
        if (ab && abs((*ab)[0]) + abs((*ab)[1]) == 1) out.triple = TriplePoint{x1, x2, x3, (*ab)[0], (*ab)[1]};
      }
    }
  }
  return out;
}

}  // namespace hblab
