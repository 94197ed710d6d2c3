#pragma once

// Executes the tasks of a space spec and assembles a JSON report.
//
// Task kinds and their arguments (labels refer to the space spec's tables; a family
// is a list of seminorm labels or "*" for all of them, with optional
// "directed" and "candidate_limit"). Arguments marked @Y are functionals on the
// subspace, in coordinates against its basis vectors; the rest are ambient.
//   chi                 seminorm, functional (@Y when subspace is given), [subspace]
//   dominates           rho, mu
//   finite_support      family, functional
//   hbe_unique          seminorm, subspace, functional@Y
//   hbe_contains        seminorm, subspace, functional@Y, extension
//   e1_gap              rho, mu, subspace, functional@Y, point
//   two_extensions      family, rho, rho_prime, subspace, functional@Y, radius
//   snp, usnp           family, subspace, [functionals@Y]   (sampled when omitted)
//   ysharp              family, subspace, functional
//   decomposition       family, subspace, functional
//   dist_to_annihilator seminorm, subspace, functional
//   best_approx         seminorm, subspace, point
//   th1                 family, subspace, functionals
//   th4                 family, subspace, functionals@Y
//   property_u          norm, subspace, functionals@Y, sample, [cap]

#include <cstdint>
#include <string>

#include "hblab/spec_io.hpp"
#include "json.hpp"

namespace hblab {

inline constexpr const char* kReportSchema = "hb-lab/report/1";

struct RunOptions {
  std::uint64_t seed = 20240611;
  std::size_t samples = 8;
  bool timing = true;  // per-task wall time; off for reproducible output
};

/// Throws ParseError on unknown kinds, labels or malformed arguments.
nlohmann::json run_spec(const SpaceSpec& spec, const RunOptions& options = {});

/// One line per task.
std::string summarize(const nlohmann::json& report);

}  // namespace hblab
