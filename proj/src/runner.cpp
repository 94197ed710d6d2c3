#include "hblab/runner.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "hblab/approximation.hpp"
#include "hblab/dual_gauge.hpp"
#include "hblab/extension.hpp"
#include "hblab/probes.hpp"

namespace hblab {

namespace {

using nlohmann::json;

json text(const ExtendedScalar& e) { return e.is_finite() ? json(to_string(e.value())) : json("inf"); }

json verdict_text(Verdict v) { return v == Verdict::Unique ? "UNIQUE" : "MULTIPLE"; }

json witness_json(const WitnessPair& w) {
  return {{"rho1", w.rho1}, {"ext1", to_json(w.ext1)}, {"rho2", w.rho2}, {"ext2", to_json(w.ext2)}};
}

json verdict_json(const FunctionalVerdict& v) {
  json j = {{"f", to_json(v.f)}, {"status", to_string(v.status)}, {"obstructions", v.obstructions.size()}};
  if (v.certifying_mu) j["certifying_mu"] = *v.certifying_mu;
  if (v.extension) j["extension"] = to_json(*v.extension);
  if (v.witness) j["witness"] = witness_json(*v.witness);
  return j;
}

json report_json(const ProbeReport& r) {
  json j = {{"mode", to_string(r.mode)}, {"holds", r.holds()}, {"verdicts", json::array()}};
  for (const auto& v : r.verdicts) j["verdicts"].push_back(verdict_json(v));
  return j;
}

json haar_json(const HaarVerdict& v) {
  json j = {{"f", to_json(v.f)}, {"status", to_string(v.status)}};
  if (v.certifying_mu) j["certifying_mu"] = *v.certifying_mu;
  if (v.best) j["best"] = to_json(*v.best);
  if (v.witness) j["witness"] = witness_json(*v.witness);
  return j;
}

json best_json(const BestApproxResult& r) {
  json j = {{"distance", text(r.distance)}, {"unique", r.unique}, {"attainment", r.attainment}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.second_witness) j["second_witness"] = to_json(*r.second_witness);
  return j;
}

// Argument access with the task's JSON pointer in every error.
class Args {
 public:
  Args(const json& args, const ResolvedSpace& space, std::string where)
      : args_(args), space_(space), where_(std::move(where)) {}

  bool has(const std::string& key) const { return args_.contains(key); }

  const json& raw(const std::string& key) const {
    if (!args_.contains(key)) throw ParseError("missing argument '" + key + "' at " + where_);
    return args_[key];
  }

  std::string label(const std::string& key) const {
    const json& j = raw(key);
    if (!j.is_string()) throw ParseError("argument '" + key + "' must be a string at " + where_);
    return j.get<std::string>();
  }

  std::vector<std::string> labels(const std::string& key) const {
    const json& j = raw(key);
    if (!j.is_array()) throw ParseError("argument '" + key + "' must be a list at " + where_);
    std::vector<std::string> out;
    for (const auto& x : j) {
      if (!x.is_string()) throw ParseError("argument '" + key + "' must list strings at " + where_);
      out.push_back(x.get<std::string>());
    }
    return out;
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const json& j = args_[key];
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError("argument '" + key + "' must be a nonnegative integer at " + where_);
    return j.get<std::size_t>();
  }

  Scalar scalar(const std::string& key) const {
    const json& j = raw(key);
    if (!j.is_string()) throw ParseError("argument '" + key + "' must be a rational string at " + where_);
    return parse_scalar(j.get<std::string>());
  }

  const PolyhedralSeminorm& seminorm(const std::string& key) const { return space_.seminorm(label(key)); }

  SeminormFamily family() const {
    const json& j = raw("family");
    std::vector<PolyhedralSeminorm> members;
    if (j.is_string() && j.get<std::string>() == "*") {
      members = space_.seminorms;
    } else {
      for (const auto& l : labels("family")) members.push_back(space_.seminorm(l));
    }
    if (members.empty()) throw ParseError("empty family at " + where_);
    bool directed = false;
    if (has("directed")) {
      if (!args_["directed"].is_boolean()) throw ParseError("argument 'directed' must be a boolean at " + where_);
      directed = args_["directed"].get<bool>();
    }
    return SeminormFamily(std::move(members), directed);
  }

  std::size_t candidate_limit() const { return count("candidate_limit", kAllMembers); }

  Subspace subspace(std::size_t ambient) const { return space_.subspace(label("subspace"), ambient); }

  const Vec& functional(const std::string& key, std::size_t dim) const { return space_.functional(label(key), dim); }

  std::vector<Vec> functionals(const std::string& key, std::size_t dim) const {
    std::vector<Vec> out;
    for (const auto& name : labels(key)) out.push_back(space_.functional(name, dim));
    return out;
  }

 private:
  const json& args_;
  const ResolvedSpace& space_;
  std::string where_;
};

using TaskFn = std::function<json(const Args&, const RunOptions&)>;

const std::map<std::string, TaskFn>& task_table() {
  static const std::map<std::string, TaskFn> table = {
      {"chi",
       [](const Args& a, const RunOptions&) {
         const PolyhedralSeminorm& rho = a.seminorm("seminorm");
         if (a.has("subspace")) {
           const Subspace y = a.subspace(rho.dim());
           return json{{"value", text(chi_on_subspace(rho, a.functional("functional", y.dim()), y))}};
         }
         return json{{"value", text(chi(rho, a.functional("functional", rho.dim())))}};
       }},
      {"dominates",
       [](const Args& a, const RunOptions&) {
         return json{{"value", dominates(a.seminorm("rho"), a.seminorm("mu"))}};
       }},
      {"finite_support",
       [](const Args& a, const RunOptions&) {
         const SeminormFamily fam = a.family();
         const auto idx = finite_support_witness(a.functional("functional", fam.dim()), fam);
         return json{{"member", idx ? json(fam[*idx].label()) : json(nullptr)}};
       }},
      {"hbe_unique",
       [](const Args& a, const RunOptions&) {
         const PolyhedralSeminorm& rho = a.seminorm("seminorm");
         const Subspace y = a.subspace(rho.dim());
         const Pair p(rho, a.functional("functional", y.dim()), y);
         const UniquenessCertificate c = hbe_unique(p);
         json j = {{"chi", to_string(p.chi())}, {"verdict", verdict_text(c.verdict)}, {"witness", to_json(c.witness)}};
         if (c.second_witness) j["second_witness"] = to_json(*c.second_witness);
         j["coordinate_bounds"] = json::array();
         for (const auto& [lo, hi] : c.coordinate_bounds) j["coordinate_bounds"].push_back({to_string(lo), to_string(hi)});
         return j;
       }},
      {"hbe_contains",
       [](const Args& a, const RunOptions&) {
         const PolyhedralSeminorm& rho = a.seminorm("seminorm");
         const Subspace y = a.subspace(rho.dim());
         const HbePolytope poly(Pair(rho, a.functional("functional", y.dim()), y));
         return json{{"contains", poly.contains(a.functional("extension", rho.dim()))}};
       }},
      {"e1_gap",
       [](const Args& a, const RunOptions&) {
         const PolyhedralSeminorm& rho = a.seminorm("rho");
         const PolyhedralSeminorm& mu = a.seminorm("mu");
         const Subspace y = a.subspace(rho.dim());
         const Vec& f = a.functional("functional", y.dim());
         const auto [lhs, rhs] = e1_gap(f, y, a.functional("point", rho.dim()), rho, mu,
                                        chi_on_subspace(rho, f, y).value(), chi_on_subspace(mu, f, y).value());
         return json{{"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}, {"equal", lhs == rhs}};
       }},
      {"two_extensions",
       [](const Args& a, const RunOptions&) {
         const SeminormFamily fam = a.family();
         const Subspace y = a.subspace(fam.dim());
         const TwoExtensions t = two_extensions_at_radius(a.functional("functional", y.dim()), y, fam, a.label("rho"),
                                                          a.label("rho_prime"), a.scalar("radius"));
         const PolyhedralSeminorm& mu = fam[fam.require_index(t.mu_label)];
         return json{{"mu", t.mu_label},
                     {"first", to_json(t.first)},
                     {"second", to_json(t.second)},
                     {"chi_first", text(chi(mu, t.first))},
                     {"chi_second", text(chi(mu, t.second))},
                     {"distinct", t.first != t.second}};
       }},
      {"snp",
       [](const Args& a, const RunOptions& o) {
         const SeminormFamily fam = a.family();
         const Subspace y = a.subspace(fam.dim());
         if (a.has("functionals")) return report_json(snp_probe(y, fam, a.functionals("functionals", y.dim()), a.candidate_limit()));
         return report_json(snp_probe(y, fam, sample_functionals(y.dim(), o.samples, o.seed), a.candidate_limit()));
       }},
      {"usnp",
       [](const Args& a, const RunOptions& o) {
         const SeminormFamily fam = a.family();
         const Subspace y = a.subspace(fam.dim());
         if (a.has("functionals")) return report_json(usnp_probe(y, fam, a.functionals("functionals", y.dim())));
         return report_json(usnp_probe(y, fam, sample_functionals(y.dim(), o.samples, o.seed)));
       }},
      {"ysharp",
       [](const Args& a, const RunOptions&) {
         const SeminormFamily fam = a.family();
         const SharpMembership m =
             ysharp_membership(a.functional("functional", fam.dim()), a.subspace(fam.dim()), fam, a.candidate_limit());
         json j = {{"member", m.member()}};
         if (m.certifying_mu) j["certifying_mu"] = *m.certifying_mu;
         return j;
       }},
      {"decomposition",
       [](const Args& a, const RunOptions&) {
         const SeminormFamily fam = a.family();
         const auto d =
             th3_decomposition(a.functional("functional", fam.dim()), a.subspace(fam.dim()), fam, a.candidate_limit());
         if (!d) return json{{"exists", false}};
         return json{{"exists", true},
                     {"g", to_json(d->g)},
                     {"h", to_json(d->h)},
                     {"certifying_mu", d->certifying_mu},
                     {"unique", d->unique}};
       }},
      {"dist_to_annihilator",
       [](const Args& a, const RunOptions&) {
         const PolyhedralSeminorm& rho = a.seminorm("seminorm");
         return best_json(dist_to_annihilator(a.functional("functional", rho.dim()), a.subspace(rho.dim()), rho));
       }},
      {"best_approx",
       [](const Args& a, const RunOptions&) {
         const PolyhedralSeminorm& rho = a.seminorm("seminorm");
         return best_json(best_approx_in_subspace(a.functional("point", rho.dim()), a.subspace(rho.dim()), rho));
       }},
      {"th1",
       [](const Args& a, const RunOptions&) {
         const SeminormFamily fam = a.family();
         json out = json::array();
         for (const auto& c : th1_crosscheck(a.subspace(fam.dim()), fam, a.functionals("functionals", fam.dim()),
                                             a.candidate_limit())) {
           out.push_back({{"f", to_json(c.f)},
                          {"snp", verdict_json(c.snp)},
                          {"haar", haar_json(c.haar)},
                          {"usnp", verdict_json(c.usnp)},
                          {"snp_agrees", c.snp_agrees},
                          {"usnp_agrees", c.usnp_agrees}});
         }
         return json{{"checks", out}};
       }},
      {"th4",
       [](const Args& a, const RunOptions&) {
         const SeminormFamily fam = a.family();
         const Subspace y = a.subspace(fam.dim());
         json out = json::array();
         for (const auto& t : th4_crosscheck(y, fam, a.functionals("functionals", y.dim()))) {
           out.push_back({{"f", to_json(t.f)},
                          {"f_bar", to_json(t.f_bar)},
                          {"upstairs", verdict_json(t.upstairs)},
                          {"downstairs", verdict_json(t.downstairs)},
                          {"agree", t.agree}});
         }
         return json{{"checks", out}};
       }},
      {"property_u",
       [](const Args& a, const RunOptions&) {
         const PolyhedralSeminorm& norm = a.seminorm("norm");
         const Subspace y = a.subspace(norm.dim());
         const WeakFamily weak = weak_family(norm, a.functionals("sample", norm.dim()), a.count("cap", 3));
         json out = json::array();
         for (const auto& b : property_u_bridge(norm, y, a.functionals("functionals", y.dim()), weak)) {
           out.push_back({{"f", to_json(b.f)},
                          {"classic", verdict_text(b.classic)},
                          {"snp", verdict_json(b.snp)},
                          {"agree", b.agree}});
         }
         return json{{"truncated", weak.truncated}, {"checks", out}};
       }},
  };
  return table;
}

}  // namespace

json run_spec(const SpaceSpec& spec, const RunOptions& options) {
  const ResolvedSpace space = resolve(spec);
  json report = {{"schema", kReportSchema},
                 {"model", json::parse(serialize_space_spec(spec))},
                 {"seed", options.seed},
                 {"samples", options.samples},
                 {"tasks", json::array()}};
  for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
    const TaskSpec& task = spec.tasks[i];
    const std::string where = "/tasks/" + std::to_string(i);
    const auto it = task_table().find(task.kind);
    if (it == task_table().end()) throw ParseError("unknown task kind '" + task.kind + "' at " + where);
    const auto start = std::chrono::steady_clock::now();
    json result = it->second(Args(task.arguments, space, where), options);
    json entry = {{"index", i}, {"kind", task.kind}, {"result", std::move(result)}};
    if (options.timing) {
      entry["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    report["tasks"].push_back(std::move(entry));
  }
  return report;
}

std::string summarize(const json& report) {
  std::ostringstream out;
  for (const auto& t : report["tasks"]) {
    out << "[" << t["index"].get<std::size_t>() << "] " << t["kind"].get<std::string>() << ": ";
    const json& r = t["result"];
    if (r.contains("holds")) {
      out << (r["holds"].get<bool>() ? "HOLDS" : "not all HOLD") << " (" << r["mode"].get<std::string>() << ")";
    } else if (r.contains("verdict")) {
      out << r["verdict"].get<std::string>() << ", chi " << r["chi"].get<std::string>();
    } else if (r.contains("distance")) {
      out << "distance " << r["distance"].get<std::string>() << (r["unique"].get<bool>() ? ", unique" : ", not unique");
    } else {
      out << r.dump();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace hblab
