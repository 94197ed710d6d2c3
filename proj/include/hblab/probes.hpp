#pragma once

// Probes for the seminorm preserving properties (SNP, USNP), membership in
// Y^#_mu, the Y^# + Y^perp decomposition, quotient models and finite weak-topology
// families.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hblab/extension.hpp"
#include "hblab/seminorm.hpp"

namespace hblab {

inline constexpr std::size_t kAllMembers = std::numeric_limits<std::size_t>::max();

enum class Quantifier { Exact, Sampled };

struct QuantifierMode {
  Quantifier kind = Quantifier::Exact;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

std::string to_string(const QuantifierMode& m);

/// Functionals on Y covering the quantifier: {[]} or {[1], [-1]} (EXACT) when
/// dim Y <= 1, otherwise `samples` nonzero integer vectors from `seed` (SAMPLED).
struct FunctionalSample {
  std::vector<Vec> fs;
  QuantifierMode mode;
};
FunctionalSample sample_functionals(std::size_t dim_y, std::size_t samples, std::uint64_t seed);

enum class Status { Holds, Fails, NoFiniteGauge };

std::string to_string(Status s);

/// Two distinct extensions of the same functional, each norm preserving for its
/// seminorm. rho1 == rho2 when a single pair already has two.
struct WitnessPair {
  std::string rho1;
  Vec ext1;
  std::string rho2;
  Vec ext2;
};

struct Obstruction {
  std::string mu;
  WitnessPair pair;
};

struct FunctionalVerdict {
  Vec f;  // Y coordinates
  Status status = Status::NoFiniteGauge;
  std::optional<std::string> certifying_mu;
  std::optional<Vec> extension;        // the shared extension when HOLDS
  std::optional<WitnessPair> witness;  // when FAILS
  std::vector<Obstruction> obstructions;  // SNP: one per candidate mu with finite gauge
};

struct ProbeReport {
  std::string subject;
  QuantifierMode mode;
  std::vector<FunctionalVerdict> verdicts;

  bool holds() const;  // every verdict HOLDS
  bool fails() const;  // some verdict FAILS
};

/// SNP at one functional: the first candidate mu (index < candidate_limit, finite
/// gauge) whose subfamily_above gives UNIQUE certificates with one shared witness.
FunctionalVerdict snp_at(const Vec& f_on_y, const Subspace& y, const SeminormFamily& fam,
                         std::size_t candidate_limit = kAllMembers);

/// USNP at one functional: every member with finite gauge gives UNIQUE with one
/// shared witness.
FunctionalVerdict usnp_at(const Vec& f_on_y, const Subspace& y, const SeminormFamily& fam);

/// EXACT mode is reported only when dim Y <= 1 and fs covers both directions.
ProbeReport snp_probe(const Subspace& y, const SeminormFamily& fam, const std::vector<Vec>& fs,
                      std::size_t candidate_limit = kAllMembers, std::string subject = {});
ProbeReport snp_probe(const Subspace& y, const SeminormFamily& fam, const FunctionalSample& sample,
                      std::size_t candidate_limit = kAllMembers, std::string subject = {});
ProbeReport usnp_probe(const Subspace& y, const SeminormFamily& fam, const std::vector<Vec>& fs,
                       std::string subject = {});
ProbeReport usnp_probe(const Subspace& y, const SeminormFamily& fam, const FunctionalSample& sample,
                       std::string subject = {});

/// Both witnesses restrict to f and attain their seminorm's subspace gauge, and
/// they differ.
bool verify_witness(const WitnessPair& w, const Vec& f_on_y, const Subspace& y, const SeminormFamily& fam);

struct SharpMembership {
  Vec g;
  std::optional<std::string> certifying_mu;
  bool member() const noexcept { return certifying_mu.has_value(); }
};

/// First candidate mu with chi(rho, g) = chi_rho^Y(g|_Y) < inf for all rho above mu.
SharpMembership ysharp_membership(const Vec& g, const Subspace& y, const SeminormFamily& fam,
                                  std::size_t candidate_limit = kAllMembers);

struct Decomposition {
  Vec g;  // in Y^#
  Vec h;  // in Y^perp
  std::string certifying_mu;
  bool unique = false;
};

/// f = g + h with g in Y^#_mu for some candidate mu. The extensions of f|_Y lying
/// in Y^#_nu form the intersection of the extension polytopes over P_nu; the
/// decomposition is unique when every such intersection is the single point g.
std::optional<Decomposition> th3_decomposition(const Vec& f, const Subspace& y, const SeminormFamily& fam,
                                               std::size_t candidate_limit = kAllMembers);

/// Whether f1 + f2 = 0, given f1, f2 in Y^# and f1 + f2 in Y^perp (both checked;
/// PreconditionError otherwise).
bool th3_c_check(const Vec& f1, const Vec& f2, const Subspace& y, const SeminormFamily& fam,
                 std::size_t candidate_limit = kAllMembers);

/// The family of quotient seminorms over a fixed complement of Z.
class QuotientModel {
 public:
  QuotientModel(const SeminormFamily& fam, const Subspace& z);

  const SeminormFamily& family() const noexcept { return family_; }
  const Subspace& z() const noexcept { return z_; }
  std::size_t dim() const noexcept { return family_.dim(); }
  const Mat& complement() const { return family_[0].complement(); }

  Vec project(const Vec& x) const { return family_[0].project(x); }
  /// A representative of the coset with the given coordinates.
  Vec section(const Vec& coords) const { return family_[0].lift(coords); }
  Vec pullback(const Vec& f) const { return family_[0].pullback(f); }
  /// pi(Y) in quotient coordinates.
  Subspace image(const Subspace& y) const;

 private:
  SeminormFamily family_;
  Subspace z_;
};

QuotientModel quotient_model(const SeminormFamily& fam, const Subspace& z);

/// chi of f_bar on the quotient by a primal LP versus chi of its pullback upstairs.
bool quotient_gauge_identity_holds(const PolyhedralSeminorm& rho, const Subspace& z, const Vec& f_bar);

struct TransportCheck {
  Vec f;                 // on Y
  Vec f_bar;             // on Y/Z, Z = ker f
  FunctionalVerdict upstairs;
  FunctionalVerdict downstairs;
  bool agree = false;
};

/// For each nonzero f on Y: the USNP verdict of f on Y in X against the verdict
/// of the induced functional on Y/Z in X/Z with Z = ker f.
std::vector<TransportCheck> th4_crosscheck(const Subspace& y, const SeminormFamily& fam, const std::vector<Vec>& fs);

struct WeakFamily {
  SeminormFamily family;
  bool truncated = false;  // subsets larger than the cap were left out
};

/// {rho_F : F a nonempty subset of the sample, |F| <= cap}, rho_F(x) = max_F |s(x)|.
/// Every sample functional must have dual norm at most 1.
WeakFamily weak_family(const PolyhedralSeminorm& norm, const std::vector<Vec>& dual_sample, std::size_t cap);

struct BridgeVerdict {
  Vec f;
  Verdict classic = Verdict::Unique;  // norm-preserving extension under the norm itself
  FunctionalVerdict snp;              // SNP over the weak family
  bool agree = false;
};

/// Classic uniqueness of norm-preserving extensions against SNP over the finite
/// weak family. HOLDS over a sample is relative to that sample; FAILS is exact.
std::vector<BridgeVerdict> property_u_bridge(const PolyhedralSeminorm& norm, const Subspace& y,
                                             const std::vector<Vec>& fs, const WeakFamily& weak);

}  // namespace hblab
