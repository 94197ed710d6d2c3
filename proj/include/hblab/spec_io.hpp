#pragma once

// Space-spec files: JSON documents describing seminorms, subspaces, functionals
// and tasks, with every rational written as a "p/q" or integer string.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hblab/exact.hpp"
#include "hblab/seminorm.hpp"
#include "json.hpp"

namespace hblab {

inline constexpr const char* kSpecSchema = "hb-lab/space-spec/1";

struct QuotientSpec {
  std::string base_label;
  std::vector<Vec> z_basis;
};

/// Either atoms or quotient_of is set.
struct SeminormSpec {
  std::string label;
  std::vector<Atom> atoms;
  std::optional<QuotientSpec> quotient_of;
};

struct TaskSpec {
  std::string kind;
  nlohmann::json arguments = nlohmann::json::object();
};

struct SpaceSpec {
  std::string schema = kSpecSchema;
  std::size_t dimension = 0;
  std::vector<SeminormSpec> seminorms;
  std::map<std::string, std::vector<Vec>> subspaces;  // independent basis vectors
  std::map<std::string, Vec> functionals;
  std::vector<TaskSpec> tasks;
};

/// Throws ParseError: syntax errors carry line and column, semantic errors the
/// JSON pointer of the offending value.
SpaceSpec parse_space_spec(const std::string& text);
SpaceSpec load_space_spec(const std::string& path);

/// Two-space indented JSON with sorted keys, canonical rationals and a trailing newline.
std::string serialize_space_spec(const SpaceSpec& spec);

/// The text rewritten the way serialize writes it: canonical rational strings,
/// defaults filled in. Does not validate labels.
std::string normalize_space_spec(const std::string& text);

/// Labels resolved to objects. Quotients may only refer to non-quotient seminorms
/// declared before them.
struct ResolvedSpace {
  std::vector<PolyhedralSeminorm> seminorms;  // declaration order
  std::map<std::string, std::vector<Vec>> subspaces;
  std::map<std::string, Vec> functionals;

  const PolyhedralSeminorm& seminorm(const std::string& label) const;
  Subspace subspace(const std::string& name, std::size_t ambient_dim) const;
  const Vec& functional(const std::string& name, std::size_t dim) const;
};

/// Throws ParseError on unknown labels and DimensionError on mismatches.
ResolvedSpace resolve(const SpaceSpec& spec);

/// Rationals as canonical strings.
nlohmann::json to_json(const Vec& v);
nlohmann::json to_json(const std::vector<Vec>& vs);

}  // namespace hblab
