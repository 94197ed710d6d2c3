#include "hblab/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace hblab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(what + " at " + (where.empty() ? "/" : where));
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 0;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 0;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON", line, std::max<std::size_t>(column, 1));
  }
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) fail(where + "/" + k, "unknown field '" + k + "'");
  }
}

std::string text_of(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Scalar scalar_of(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.dump());
  if (!j.is_string()) fail(where, "expected a rational string");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

Vec vec_of(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of rationals");
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_of(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::vector<Vec> vecs_of(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of vectors");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vec_of(j[i], where + "/" + std::to_string(i)));
  return out;
}

Atom atom_of(const json& j, const std::string& where) {
  only_keys(j, {"combine", "generators"}, where);
  Atom a;
  const std::string c = text_of(field(j, "combine", where), where + "/combine");
  if (c == "max") {
    a.combine = Combine::Max;
  } else if (c == "sum") {
    a.combine = Combine::Sum;
  } else {
    fail(where + "/combine", "combine must be \"max\" or \"sum\"");
  }
  a.generators = vecs_of(field(j, "generators", where), where + "/generators");
  if (a.generators.empty()) fail(where + "/generators", "an atom needs generators");
  return a;
}

SeminormSpec seminorm_of(const json& j, const std::string& where) {
  only_keys(j, {"label", "atoms", "quotient_of"}, where);
  SeminormSpec s;
  s.label = text_of(field(j, "label", where), where + "/label");
  const bool has_atoms = j.contains("atoms"), has_quotient = j.contains("quotient_of");
  if (has_atoms == has_quotient) fail(where, "give exactly one of 'atoms' and 'quotient_of'");
  if (has_atoms) {
    const json& atoms = j["atoms"];
    if (!atoms.is_array() || atoms.empty()) fail(where + "/atoms", "expected a nonempty list of atoms");
    for (std::size_t i = 0; i < atoms.size(); ++i) s.atoms.push_back(atom_of(atoms[i], where + "/atoms/" + std::to_string(i)));
  } else {
    const std::string q = where + "/quotient_of";
    only_keys(j["quotient_of"], {"base_label", "z_basis"}, q);
    s.quotient_of = QuotientSpec{text_of(field(j["quotient_of"], "base_label", q), q + "/base_label"),
                                 vecs_of(field(j["quotient_of"], "z_basis", q), q + "/z_basis")};
  }
  return s;
}

// Canonical rational strings at the positions parse reads rationals from.
json canonical_vec(const json& j) {
  if (!j.is_array()) return j;
  json out = json::array();
  for (const auto& x : j) {
    try {
      out.push_back(to_string(scalar_of(x, "")));
    } catch (const ParseError&) {
      out.push_back(x);
    }
  }
  return out;
}

json canonical_vecs(const json& j) {
  if (!j.is_array()) return j;
  json out = json::array();
  for (const auto& v : j) out.push_back(canonical_vec(v));
  return out;
}

}  // namespace

SpaceSpec parse_space_spec(const std::string& text) {
  const json doc = parse_json(text);
  only_keys(doc, {"schema", "dimension", "seminorms", "subspaces", "functionals", "tasks"}, "");
  SpaceSpec spec;
  spec.schema = text_of(field(doc, "schema", ""), "/schema");
  if (spec.schema != kSpecSchema) fail("/schema", "unsupported schema '" + spec.schema + "', expected '" + kSpecSchema + "'");
  const json& dim = field(doc, "dimension", "");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) fail("/dimension", "dimension must be a positive integer");
  spec.dimension = dim.get<std::size_t>();

  const json& seminorms = field(doc, "seminorms", "");
  if (!seminorms.is_array()) fail("/seminorms", "expected a list");
  for (std::size_t i = 0; i < seminorms.size(); ++i) spec.seminorms.push_back(seminorm_of(seminorms[i], "/seminorms/" + std::to_string(i)));

  if (doc.contains("subspaces")) {
    if (!doc["subspaces"].is_object()) fail("/subspaces", "expected an object");
    for (const auto& [name, v] : doc["subspaces"].items()) spec.subspaces[name] = vecs_of(v, "/subspaces/" + name);
  }
  if (doc.contains("functionals")) {
    if (!doc["functionals"].is_object()) fail("/functionals", "expected an object");
    for (const auto& [name, v] : doc["functionals"].items()) spec.functionals[name] = vec_of(v, "/functionals/" + name);
  }
  if (doc.contains("tasks")) {
    const json& tasks = doc["tasks"];
    if (!tasks.is_array()) fail("/tasks", "expected a list");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const std::string where = "/tasks/" + std::to_string(i);
      only_keys(tasks[i], {"kind", "arguments"}, where);
      TaskSpec t;
      t.kind = text_of(field(tasks[i], "kind", where), where + "/kind");
      if (tasks[i].contains("arguments")) {
        if (!tasks[i]["arguments"].is_object()) fail(where + "/arguments", "expected an object");
        t.arguments = tasks[i]["arguments"];
      }
      spec.tasks.push_back(std::move(t));
    }
  }
  return spec;
}

SpaceSpec load_space_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_space_spec(ss.str());
}

json to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json to_json(const std::vector<Vec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

std::string serialize_space_spec(const SpaceSpec& spec) {
  json doc;
  doc["schema"] = spec.schema;
  doc["dimension"] = spec.dimension;
  doc["seminorms"] = json::array();
  for (const auto& s : spec.seminorms) {
    json j;
    j["label"] = s.label;
    if (s.quotient_of) {
      j["quotient_of"] = {{"base_label", s.quotient_of->base_label}, {"z_basis", to_json(s.quotient_of->z_basis)}};
    } else {
      j["atoms"] = json::array();
      for (const auto& a : s.atoms) {
        j["atoms"].push_back({{"combine", a.combine == Combine::Max ? "max" : "sum"}, {"generators", to_json(a.generators)}});
      }
    }
    doc["seminorms"].push_back(std::move(j));
  }
  doc["subspaces"] = json::object();
  for (const auto& [name, vs] : spec.subspaces) doc["subspaces"][name] = to_json(vs);
  doc["functionals"] = json::object();
  for (const auto& [name, v] : spec.functionals) doc["functionals"][name] = to_json(v);
  doc["tasks"] = json::array();
  for (const auto& t : spec.tasks) doc["tasks"].push_back({{"kind", t.kind}, {"arguments", t.arguments}});
  return doc.dump(2) + "\n";
}

std::string normalize_space_spec(const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object()) return doc.dump(2) + "\n";
  for (const char* key : {"subspaces", "functionals"}) {
    if (!doc.contains(key)) doc[key] = json::object();
  }
  if (!doc.contains("tasks")) doc["tasks"] = json::array();
  if (doc["seminorms"].is_array()) {
    for (auto& s : doc["seminorms"]) {
      if (s.contains("atoms") && s["atoms"].is_array()) {
        for (auto& a : s["atoms"]) {
          if (a.contains("generators")) a["generators"] = canonical_vecs(a["generators"]);
        }
      }
      if (s.contains("quotient_of") && s["quotient_of"].contains("z_basis")) {
        s["quotient_of"]["z_basis"] = canonical_vecs(s["quotient_of"]["z_basis"]);
      }
    }
  }
  if (doc["subspaces"].is_object()) {
    for (auto& [name, v] : doc["subspaces"].items()) v = canonical_vecs(v);
  }
  if (doc["functionals"].is_object()) {
    for (auto& [name, v] : doc["functionals"].items()) v = canonical_vec(v);
  }
  if (doc["tasks"].is_array()) {
    for (auto& t : doc["tasks"]) {
      if (t.is_object() && !t.contains("arguments")) t["arguments"] = json::object();
    }
  }
  return doc.dump(2) + "\n";
}

const PolyhedralSeminorm& ResolvedSpace::seminorm(const std::string& label) const {
  for (const auto& s : seminorms) {
    if (s.label() == label) return s;
  }
  throw ParseError("unknown seminorm '" + label + "'");
}

Subspace ResolvedSpace::subspace(const std::string& name, std::size_t ambient_dim) const {
  const auto it = subspaces.find(name);
  if (it == subspaces.end()) throw ParseError("unknown subspace '" + name + "'");
  for (const auto& v : it->second) require_dim(v.size(), ambient_dim, ("subspace '" + name + "'").c_str());
  Subspace s = Subspace::span(ambient_dim, it->second);
  if (s.dim() != it->second.size()) throw ParseError("subspace '" + name + "' has dependent basis vectors");
  return s;
}

const Vec& ResolvedSpace::functional(const std::string& name, std::size_t dim) const {
  const auto it = functionals.find(name);
  if (it == functionals.end()) throw ParseError("unknown functional '" + name + "'");
  require_dim(it->second.size(), dim, ("functional '" + name + "'").c_str());
  return it->second;
}

ResolvedSpace resolve(const SpaceSpec& spec) {
  ResolvedSpace out;
  std::set<std::string> labels;
  for (std::size_t i = 0; i < spec.seminorms.size(); ++i) {
    const SeminormSpec& s = spec.seminorms[i];
    const std::string where = "/seminorms/" + std::to_string(i);
    if (!labels.insert(s.label).second) fail(where + "/label", "duplicate label '" + s.label + "'");
    if (s.quotient_of) {
      const PolyhedralSeminorm* base = nullptr;
      for (const auto& r : out.seminorms) {
        if (r.label() == s.quotient_of->base_label) base = &r;
      }
      if (!base) fail(where + "/quotient_of/base_label", "unknown or later seminorm '" + s.quotient_of->base_label + "'");
      if (base->is_quotient()) fail(where + "/quotient_of/base_label", "quotient of a quotient");
      for (const auto& z : s.quotient_of->z_basis) require_dim(z.size(), spec.dimension, ("z_basis of '" + s.label + "'").c_str());
      out.seminorms.push_back(PolyhedralSeminorm::quotient(s.label, *base, Subspace::span(spec.dimension, s.quotient_of->z_basis)));
    } else {
      for (const auto& a : s.atoms) {
        for (const auto& g : a.generators) require_dim(g.size(), spec.dimension, ("generator of '" + s.label + "'").c_str());
      }
      out.seminorms.emplace_back(s.label, s.atoms);
    }
  }
  out.subspaces = spec.subspaces;
  out.functionals = spec.functionals;
  return out;
}

}  // namespace hblab
