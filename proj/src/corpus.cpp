#include "hblab/corpus.hpp"

#include <utility>

namespace hblab {

namespace {

using nlohmann::json;

SeminormSpec seminorm_spec(const PolyhedralSeminorm& rho) {
  if (rho.is_quotient()) throw PreconditionError("seminorm_spec: quotients are declared through quotient_of");
  return SeminormSpec{rho.label(), rho.atoms(), std::nullopt};
}

SeminormSpec atom_spec(const std::string& label, Combine c, std::vector<Vec> gens) {
  return SeminormSpec{label, {Atom{c, std::move(gens)}}, std::nullopt};
}

std::vector<Vec> basis_rows(const Subspace& y) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < y.dim(); ++j) out.push_back(y.basis_vector(j));
  return out;
}

// Adds a task and returns its index.
std::size_t task(SpaceSpec& spec, std::string kind, json args) {
  spec.tasks.push_back(TaskSpec{std::move(kind), std::move(args)});
  return spec.tasks.size() - 1;
}

void expect(Example& e, std::size_t t, std::string pointer, json value, std::string note = {}) {
  e.expected.push_back(Expectation{t, std::move(pointer), std::move(value), std::move(note)});
}

Example ex1_truncation() {
  Example e{"ex1-truncation", "c00 with rho_k = sum_{j<=k} |x_j|, truncated to R^3; f = x_2", {}, {}};
  SpaceSpec& s = e.spec;
  s.dimension = 3;
  s.seminorms = {atom_spec("rho1", Combine::Sum, {{1, 0, 0}}),
                 atom_spec("rho2", Combine::Sum, {{1, 0, 0}, {0, 1, 0}}),
                 atom_spec("rho3", Combine::Sum, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                 atom_spec("abs_x2", Combine::Max, {{0, 1, 0}})};
  s.functionals["f"] = {0, 1, 0};
  expect(e, task(s, "chi", {{"seminorm", "rho1"}, {"functional", "f"}}), "/value", "inf");
  expect(e, task(s, "chi", {{"seminorm", "rho2"}, {"functional", "f"}}), "/value", "1");
  expect(e, task(s, "chi", {{"seminorm", "rho3"}, {"functional", "f"}}), "/value", "1");
  expect(e, task(s, "dominates", {{"rho", "rho1"}, {"mu", "abs_x2"}}), "/value", false);
  expect(e, task(s, "dominates", {{"rho", "rho2"}, {"mu", "abs_x2"}}), "/value", true);
  expect(e, task(s, "finite_support", {{"family", {"rho1", "rho2", "rho3"}}, {"functional", "f"}}), "/member", "rho2");
  return e;
}

Example ex4() {
  Example e{"ex4", "R^2 with the three-case family rho_n, Y = {(x, x)}, f(x, x) = x", {}, {}};
  const Model m = build_ex4(8, 1);
  e.spec = spec_from_model(m);
  SpaceSpec& s = e.spec;
  s.functionals["e1"] = {1, 0};
  s.functionals["half"] = {Scalar(1, 2), Scalar(1, 2)};
  const json window = m.candidate_limit;
  for (int n = 1; n <= 8; ++n) {
    const bool power = n == 2 || n == 4 || n == 8;
    const Scalar value = power ? Scalar(1, 2 * n) : (n % 2 ? Scalar(2, 3 * n) : Scalar(1, n));
    expect(e, task(s, "chi", {{"seminorm", "rho" + std::to_string(n)}, {"subspace", "Y"}, {"functional", "f"}}), "/value",
           to_string(value));
  }
  std::size_t t = task(s, "hbe_unique", {{"seminorm", "rho6"}, {"subspace", "Y"}, {"functional", "f"}});
  expect(e, t, "/verdict", "MULTIPLE");
  expect(e, t, "/chi", "1/6");
  for (const char* ext : {"e1", "half"}) {
    expect(e, task(s, "hbe_contains", {{"seminorm", "rho6"}, {"subspace", "Y"}, {"functional", "f"}, {"extension", ext}}),
           "/contains", true);
  }
  t = task(s, "hbe_unique", {{"seminorm", "rho4"}, {"subspace", "Y"}, {"functional", "f"}});
  expect(e, t, "/verdict", "UNIQUE");
  expect(e, t, "/witness", {"1/2", "1/2"});
  t = task(s, "hbe_unique", {{"seminorm", "rho3"}, {"subspace", "Y"}, {"functional", "f"}});
  expect(e, t, "/verdict", "UNIQUE");
  expect(e, t, "/witness", {"2/3", "1/3"});
  t = task(s, "snp", {{"family", "*"}, {"directed", true}, {"candidate_limit", window}, {"subspace", "Y"}, {"functionals", {"f"}}});
  expect(e, t, "/verdicts/0/status", "FAILS");
  expect(e, t, "/verdicts/0/obstructions", 8);
  for (const char* g : {"e1", "half"}) {
    t = task(s, "ysharp", {{"family", "*"}, {"directed", true}, {"candidate_limit", window}, {"subspace", "Y"}, {"functional", g}});
    expect(e, t, "/member", false);
  }
  t = task(s, "dist_to_annihilator", {{"seminorm", "rho4"}, {"subspace", "Y"}, {"functional", "e1"}});
  expect(e, t, "/distance", "1/8");
  t = task(s, "th1", {{"family", "*"}, {"directed", true}, {"candidate_limit", window}, {"subspace", "Y"}, {"functionals", {"e1"}}});
  expect(e, t, "/checks/0/haar/status", "FAILS");
  expect(e, t, "/checks/0/snp_agrees", true);
  expect(e, t, "/checks/0/usnp_agrees", true);
  return e;
}

Example cpz_max() {
  Example e{"cpz-max", "C_p(Z) with the max family, Z = {1,2,3,4}, A = {4}", {}, {}};
  const Model m = build_cpz(4, {3}, CpzKind::Max);
  e.spec = spec_from_model(m);
  SpaceSpec& s = e.spec;
  s.functionals["phi_y"] = {2, -1, 3};
  s.functionals["phi"] = {2, -1, 3, 0};
  s.functionals["psi"] = {2, -1, 3, 5};
  std::size_t t = task(s, "usnp", {{"family", "*"}, {"directed", true}, {"subspace", "Y"}, {"functionals", {"phi_y"}}});
  expect(e, t, "/holds", true);
  expect(e, t, "/verdicts/0/extension", {"2", "-1", "3", "0"});
  t = task(s, "snp", {{"family", "*"}, {"directed", true}, {"subspace", "Y"}, {"functionals", {"phi_y"}}});
  expect(e, t, "/holds", true);
  t = task(s, "ysharp", {{"family", "*"}, {"directed", true}, {"subspace", "Y"}, {"functional", "phi"}});
  expect(e, t, "/member", true);
  t = task(s, "th1", {{"family", "*"}, {"directed", true}, {"subspace", "Y"}, {"functionals", {"psi"}}});
  expect(e, t, "/checks/0/haar/status", "HOLDS");
  expect(e, t, "/checks/0/haar/best", {"0", "0", "0", "5"});
  expect(e, t, "/checks/0/snp_agrees", true);
  expect(e, t, "/checks/0/usnp_agrees", true);
  return e;
}

Example cpz_sum() {
  Example e{"cpz-sum", "C_p(Z) with the sum family, Z = {1,2,3,4}, A = {4}", {}, {}};
  const Model m = build_cpz(4, {3}, CpzKind::Sum);
  e.spec = spec_from_model(m);
  SpaceSpec& s = e.spec;
  s.functionals["phi_y"] = {3, -1, 2};
  s.functionals["ext"] = {3, -1, 2, 0};
  s.functionals["ext_shift"] = {3, -1, 2, Scalar(3, 2)};
  const json args = {{"seminorm", "rho{1,2,3,4}"}, {"subspace", "Y"}, {"functional", "phi_y"}};
  std::size_t t = task(s, "hbe_unique", args);
  expect(e, t, "/verdict", "MULTIPLE");
  expect(e, t, "/chi", "3");
  for (const char* ext : {"ext", "ext_shift"}) {
    json a = args;
    a["extension"] = ext;
    expect(e, task(s, "hbe_contains", a), "/contains", true);
  }
  t = task(s, "usnp", {{"family", "*"}, {"directed", true}, {"subspace", "Y"}, {"functionals", {"phi_y"}}});
  expect(e, t, "/verdicts/0/status", "FAILS");
  t = task(s, "th4", {{"family", "*"}, {"directed", true}, {"subspace", "Y"}, {"functionals", {"phi_y"}}});
  expect(e, t, "/checks/0/agree", true);
  return e;
}

Example cpz_mixed() {
  Example e{"cpz-mixed", "C_p(Z) with rho_F = |F| max_F and mu_F = |F| sum_F, Z = {1,2,3,4}, A = {4}", {}, {}};
  const Model m = build_cpz(4, {3}, CpzKind::Mixed);
  e.spec = spec_from_model(m);
  SpaceSpec& s = e.spec;
  s.functionals["phi"] = {2, -1, 0, 3};
  s.functionals["phi1"] = {2, -1, 0, 0};
  s.functionals["phi_y"] = {2, -1, 0};
  s.functionals["phi1_shift"] = {2, -1, 0, 2};
  const json window = m.candidate_limit;
  std::size_t t = task(s, "ysharp", {{"family", "*"}, {"directed", true}, {"candidate_limit", window}, {"subspace", "Y"}, {"functional", "phi1"}});
  expect(e, t, "/certifying_mu", "rho{1,2}");
  t = task(s, "decomposition", {{"family", "*"}, {"directed", true}, {"candidate_limit", window}, {"subspace", "Y"}, {"functional", "phi"}});
  expect(e, t, "/g", {"2", "-1", "0", "0"});
  expect(e, t, "/h", {"0", "0", "0", "3"});
  expect(e, t, "/unique", true);
  t = task(s, "hbe_unique", {{"seminorm", "mu{1,2,4}"}, {"subspace", "Y"}, {"functional", "phi_y"}});
  expect(e, t, "/verdict", "MULTIPLE");
  expect(e, t, "/chi", "2/3");
  t = task(s, "hbe_contains", {{"seminorm", "mu{1,2,4}"}, {"subspace", "Y"}, {"functional", "phi_y"}, {"extension", "phi1_shift"}});
  expect(e, t, "/contains", true);
  t = task(s, "snp", {{"family", "*"}, {"directed", true}, {"candidate_limit", window}, {"subspace", "Y"}, {"functionals", {"phi_y"}}});
  expect(e, t, "/verdicts/0/status", "FAILS");
  return e;
}

Example quotient_r3() {
  Example e{"quotient-r3", "R^3 with the sup and one norms, Y = {(x, y, 0)}, Z = {(x, 0, 0)}", {}, {}};
  SpaceSpec& s = e.spec;
  s.dimension = 3;
  s.seminorms = {atom_spec("sup", Combine::Max, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                 atom_spec("one", Combine::Sum, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                 SeminormSpec{"sup/Z", {}, QuotientSpec{"sup", {{1, 0, 0}}}},
                 SeminormSpec{"one/Z", {}, QuotientSpec{"one", {{1, 0, 0}}}}};
  s.subspaces["Y"] = {{1, 0, 0}, {0, 1, 0}};
  s.subspaces["Y/Z"] = {{1, 0}};
  expect(e, task(s, "dominates", {{"rho", "one"}, {"mu", "sup"}}), "/value", true);
  std::size_t t = task(s, "snp", {{"family", {"sup", "one"}}, {"directed", true}, {"subspace", "Y"}});
  expect(e, t, "/holds", true,
         "claimed in the source; not reproducible: the one norm leaves the third coordinate of every extension free");
  t = task(s, "snp", {{"family", {"sup/Z", "one/Z"}}, {"directed", true}, {"subspace", "Y/Z"}});
  expect(e, t, "/mode", "EXACT");
  expect(e, t, "/holds", false);
  expect(e, t, "/verdicts/0/status", "FAILS");
  return e;
}

Example span_f0() {
  Example e{"span-f0", "R^3 with the max family, Y = span{f0}", {}, {}};
  SpaceSpec& s = e.spec;
  s.dimension = 3;
  const SeminormFamily fam = cpz_max_family(3);
  for (const auto& rho : fam.members()) s.seminorms.push_back(seminorm_spec(rho));
  s.subspaces["single"] = {{1, Scalar(1, 2), Scalar(1, 3)}};
  s.subspaces["double"] = {{1, 1, Scalar(1, 2)}};
  s.subspaces["signed"] = {{1, -1, Scalar(1, 2)}};
  s.functionals["f"] = {1};
  std::size_t t = task(s, "snp", {{"family", "*"}, {"directed", true}, {"subspace", "single"}});
  expect(e, t, "/mode", "EXACT");
  expect(e, t, "/holds", true);
  t = task(s, "snp", {{"family", "*"}, {"directed", true}, {"subspace", "double"}, {"functionals", {"f"}}});
  expect(e, t, "/verdicts/0/status", "FAILS");
  expect(e, t, "/verdicts/0/witness/ext1", {"1", "0", "0"});
  expect(e, t, "/verdicts/0/witness/ext2", {"0", "1", "0"});
  t = task(s, "snp", {{"family", "*"}, {"directed", true}, {"subspace", "signed"}, {"functionals", {"f"}}});
  expect(e, t, "/verdicts/0/status", "FAILS");
  expect(e, t, "/verdicts/0/witness/ext1", {"1", "0", "0"});
  expect(e, t, "/verdicts/0/witness/ext2", {"0", "-1", "0"});
  return e;
}

Example p5_two_dim() {
  Example e{"p5-two-dim", "R^3 with the max family, two-dimensional Y through three maximizers of |f1|", {}, {}};
  SpaceSpec& s = e.spec;
  s.dimension = 3;
  const SeminormFamily fam = cpz_max_family(3);
  for (const auto& rho : fam.members()) s.seminorms.push_back(seminorm_spec(rho));
  // f1 = (1,1,1), f2 = (0,1/2,1): delta_2 = (delta_1 + delta_3)/2 on Y
  s.subspaces["case2"] = {{1, 1, 1}, {0, Scalar(1, 2), 1}};
  // f1 = (1,1,1), f2 = (1,1,0): delta_1 = delta_2 on Y
  s.subspaces["control"] = {{1, 1, 1}, {1, 1, 0}};
  s.functionals["delta2_case2"] = {1, Scalar(1, 2)};
  s.functionals["delta1_control"] = {1, 1};
  s.functionals["d1"] = {1, 0, 0};
  s.functionals["d2"] = {0, 1, 0};
  s.functionals["d13"] = {Scalar(1, 2), 0, Scalar(1, 2)};
  std::size_t t = task(s, "snp", {{"family", "*"}, {"directed", true}, {"subspace", "case2"}, {"functionals", {"delta2_case2"}}});
  expect(e, t, "/verdicts/0/status", "FAILS");
  for (const char* ext : {"d2", "d13"}) {
    t = task(s, "hbe_contains",
             {{"seminorm", "rho{1,2,3}"}, {"subspace", "case2"}, {"functional", "delta2_case2"}, {"extension", ext}});
    expect(e, t, "/contains", true);
  }
  t = task(s, "snp", {{"family", "*"}, {"directed", true}, {"subspace", "control"}, {"functionals", {"delta1_control"}}});
  expect(e, t, "/verdicts/0/status", "FAILS");
  for (const char* ext : {"d1", "d2"}) {
    t = task(s, "hbe_contains",
             {{"seminorm", "rho{1,2,3}"}, {"subspace", "control"}, {"functional", "delta1_control"}, {"extension", ext}});
    expect(e, t, "/contains", true);
  }
  return e;
}

Example p4_radius() {
  Example e{"p4-radius", "two extensions at radius r on the plane, Y = {(x, x)}", {}, {}};
  SpaceSpec& s = e.spec;
  s.dimension = 2;
  s.seminorms = {atom_spec("sup", Combine::Max, {{1, 0}, {0, 1}}), atom_spec("one", Combine::Sum, {{1, 0}, {0, 1}})};
  s.subspaces["Y"] = {{1, 1}};
  s.functionals["f"] = {1};
  std::size_t t = task(s, "two_extensions",
                       {{"family", {"sup"}}, {"rho", "sup"}, {"rho_prime", "sup"}, {"subspace", "Y"}, {"functional", "f"}, {"radius", "2"}});
  expect(e, t, "/mu", "sup");
  expect(e, t, "/distinct", true);
  expect(e, t, "/chi_first", "2");
  expect(e, t, "/chi_second", "2");
  t = task(s, "two_extensions",
           {{"family", {"sup", "one"}}, {"directed", true}, {"rho", "sup"}, {"rho_prime", "one"}, {"subspace", "Y"},
            {"functional", "f"}, {"radius", "3/2"}});
  expect(e, t, "/mu", "one");
  expect(e, t, "/distinct", true);
  expect(e, t, "/chi_first", "3/2");
  expect(e, t, "/chi_second", "3/2");
  return e;
}

Example weak_bridge() {
  Example e{"weak-bridge", "property U of the sup-norm plane against SNP over a finite weak family", {}, {}};
  SpaceSpec& s = e.spec;
  s.dimension = 2;
  s.seminorms = {atom_spec("sup", Combine::Max, {{1, 0}, {0, 1}})};
  s.subspaces["axis"] = {{1, 0}};
  s.subspaces["diagonal"] = {{1, 1}};
  s.functionals["f"] = {1};
  s.functionals["s1"] = {1, 0};
  s.functionals["s2"] = {0, 1};
  std::size_t t = task(s, "property_u",
                       {{"norm", "sup"}, {"subspace", "axis"}, {"functionals", {"f"}}, {"sample", {"s1", "s2"}}, {"cap", 2}});
  expect(e, t, "/checks/0/classic", "UNIQUE");
  expect(e, t, "/checks/0/snp/status", "HOLDS");
  expect(e, t, "/checks/0/agree", true);
  t = task(s, "property_u",
           {{"norm", "sup"}, {"subspace", "diagonal"}, {"functionals", {"f"}}, {"sample", {"s1", "s2"}}, {"cap", 2}});
  expect(e, t, "/checks/0/classic", "MULTIPLE");
  expect(e, t, "/checks/0/snp/status", "FAILS");
  expect(e, t, "/checks/0/agree", true);
  return e;
}

}  // namespace

SpaceSpec spec_from_model(const Model& model) {
  SpaceSpec s;
  s.dimension = model.family.dim();
  for (const auto& rho : model.family.members()) s.seminorms.push_back(seminorm_spec(rho));
  s.subspaces["Y"] = basis_rows(model.y);
  for (const auto& nf : model.functionals) s.functionals[nf.name] = nf.f;
  return s;
}

const std::vector<Example>& corpus() {
  static const std::vector<Example> all = {ex1_truncation(), ex4(),         cpz_max(),   cpz_sum(),   cpz_mixed(),
                                           quotient_r3(),    span_f0(),     p5_two_dim(), p4_radius(), weak_bridge()};
  return all;
}

const Example& find_example(const std::string& id) {
  for (const auto& e : corpus()) {
    if (e.id == id) return e;
  }
  throw ParseError("unknown example '" + id + "'");
}

bool Reproduction::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

json Reproduction::to_json() const {
  json out = {{"id", id}, {"pass", pass()}, {"checks", json::array()}, {"report", report}};
  for (const auto& c : checks) {
    json j = {{"task", c.expectation.task},
              {"pointer", c.expectation.pointer},
              {"expected", c.expectation.expected},
              {"actual", c.actual},
              {"pass", c.pass}};
    if (!c.expectation.note.empty()) j["note"] = c.expectation.note;
    out["checks"].push_back(std::move(j));
  }
  return out;
}

Reproduction reproduce(const Example& example, RunOptions options) {
  options.timing = false;
  Reproduction r;
  r.id = example.id;
  r.report = run_spec(example.spec, options);
  for (const auto& e : example.expected) {
    CheckResult c;
    c.expectation = e;
    const json& result = r.report["tasks"].at(e.task)["result"];
    const json::json_pointer ptr(e.pointer);
    c.actual = result.contains(ptr) ? result.at(ptr) : json(nullptr);
    c.pass = c.actual == e.expected;
    r.checks.push_back(std::move(c));
  }
  return r;
}

}  // namespace hblab
