#pragma once

// Best approximation under seminorms and dual gauges: distance to annihilators,
// simultaneous best approximation, the Haar property over a family, and the
// cross-check against SNP/USNP.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hblab/dual_gauge.hpp"
#include "hblab/lp.hpp"
#include "hblab/probes.hpp"
#include "hblab/seminorm.hpp"

namespace hblab {

/// rho itself on X, or chi_rho on X*.
enum class Gauge { Seminorm, Dual };

struct BestApproxResult {
  ExtendedScalar distance;
  /// Minimizers as an LP feasible set; the first dim W variables are coordinates
  /// against W's basis. Empty when the distance is infinite.
  LinearProgram minimizer_polytope;
  bool unique = false;
  std::optional<Vec> witness;
  std::optional<Vec> second_witness;  // when not unique: differs from witness
  /// Ambient coordinates of the approximant; nullopt where the minimizer set is
  /// unbounded (W meets the seminorm's kernel).
  std::vector<std::pair<std::optional<Scalar>, std::optional<Scalar>>> coordinate_bounds;
  std::string attainment = "LP attainment in finite dimension";
};

/// Best approximation of target from offset + W, measured by the gauge of
/// target - v. Infinite distance when no v gives a finite gauge.
BestApproxResult best_approx(const Vec& target, const Vec& offset, const Subspace& w, const PolyhedralSeminorm& rho,
                             Gauge gauge);

/// Best approximation of h in X* from Y^perp under chi_rho. Throws InternalError
/// if the distance differs from chi_rho^Y(h|_Y).
BestApproxResult dist_to_annihilator(const Vec& h, const Subspace& y, const PolyhedralSeminorm& rho);

/// Best approximation of x0 from Y under rho.
BestApproxResult best_approx_in_subspace(const Vec& x0, const Subspace& y, const PolyhedralSeminorm& rho);

struct SimultaneousResult {
  std::optional<Vec> point;
  /// First two members whose minimizers conflict; rho1 == rho2 when a single
  /// member has two minimizers.
  std::optional<WitnessPair> conflict;
  /// Set when a member has infinite distance.
  std::optional<std::string> infinite_member;
};

/// Present iff every member has a unique best approximation, all the same.
SimultaneousResult simultaneous_best_approx(const Vec& target, const Vec& offset, const Subspace& w,
                                            const std::vector<PolyhedralSeminorm>& members, Gauge gauge);
SimultaneousResult simultaneous_best_approx(const Vec& x0, const Subspace& y,
                                            const std::vector<PolyhedralSeminorm>& members);

struct HaarVerdict {
  Vec f;
  Status status = Status::NoFiniteGauge;
  std::optional<std::string> certifying_mu;
  std::optional<Vec> best;             // when HOLDS
  std::optional<WitnessPair> witness;  // when FAILS: from the first candidate with finite distance
};

/// For each test point f in X*: the first candidate mu (finite chi distance to
/// offset + W) whose subfamily_above has a simultaneous best approximation.
std::vector<HaarVerdict> haar_probe(const Vec& offset, const Subspace& w, const SeminormFamily& fam,
                                    const std::vector<Vec>& test_points, std::size_t candidate_limit = kAllMembers);
std::vector<HaarVerdict> haar_probe(const Subspace& w, const SeminormFamily& fam, const std::vector<Vec>& test_points,
                                    std::size_t candidate_limit = kAllMembers);

struct Th1Check {
  Vec f;  // in X*
  FunctionalVerdict snp;
  HaarVerdict haar;
  FunctionalVerdict usnp;
  SimultaneousResult simultaneous;  // over P_f, the members with finite distance
  bool snp_agrees = false;
  bool usnp_agrees = false;
};

/// SNP of f|_Y against the Haar verdict of Y^perp at f, and USNP against the
/// P_f-simultaneous best approximation. Agreement includes the certifying mu and
/// best = f - extension.
std::vector<Th1Check> th1_crosscheck(const Subspace& y, const SeminormFamily& fam, const std::vector<Vec>& fs,
                                     std::size_t candidate_limit = kAllMembers);

/// The affine line w + span{z0} in X*.
struct Line {
  Vec w;
  Vec z0;
};

struct LineHaarReport {
  Line line;
  std::vector<HaarVerdict> verdicts;
  /// Lines through the origin are Y^perp for the hyperplane Y = ker z0; the SNP
  /// verdicts of f|_Y are paired with the Haar verdicts.
  std::optional<std::vector<FunctionalVerdict>> kernel_snp;
};

/// Throws PreconditionError when some z0 is zero.
std::vector<LineHaarReport> line_haar_check(const SeminormFamily& fam, const std::vector<Line>& lines,
                                            const std::vector<Vec>& test_points,
                                            std::size_t candidate_limit = kAllMembers);

}  // namespace hblab
