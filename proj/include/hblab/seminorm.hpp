#pragma once

// Polyhedral seminorms: finite sums of MAX/SUM atoms of |a_i . x|, optional
// quotient wrappers, the pointwise domination order and finite families.

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hblab/exact.hpp"
#include "hblab/lp.hpp"

namespace hblab {

enum class Combine { Max, Sum };

/// combine_i |a_i . x|
struct Atom {
  Combine combine = Combine::Max;
  std::vector<Vec> generators;

  std::size_t ambient_dim() const { return generators.empty() ? 0 : generators.front().size(); }
  Scalar value(const Vec& x) const;
};

class PolyhedralSeminorm {
 public:
  /// Sum of the given atoms. Throws PreconditionError on empty atoms/generators,
  /// DimensionError on ragged generators.
  PolyhedralSeminorm(std::string label, std::vector<Atom> atoms);

  /// x + Z -> inf{base(x - z) : z in Z}, on coordinates of a fixed complement of Z
  /// (standard basis vectors chosen greedily). The base must not itself be a quotient.
  static PolyhedralSeminorm quotient(std::string label, const PolyhedralSeminorm& base, const Subspace& z);

  const std::string& label() const noexcept { return label_; }
  std::size_t dim() const noexcept { return dim_; }
  /// For quotients these are the base's atoms (acting on base coordinates).
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t generator_count() const;

  bool is_quotient() const noexcept { return quotient_ != nullptr; }
  const PolyhedralSeminorm& base() const;
  const Subspace& quotient_space() const;
  /// Rows are the complement basis vectors in base coordinates.
  const Mat& complement() const;

  /// Complement coordinates -> base coordinates.
  Vec lift(const Vec& coords) const;
  /// Base coordinates -> complement coordinates of pi(x).
  Vec project(const Vec& x) const;
  /// f o pi in base dual coordinates, for f in quotient dual coordinates.
  Vec pullback(const Vec& f) const;

  /// Same seminorm under a new label.
  PolyhedralSeminorm relabeled(std::string label) const;

 private:
  struct QuotientData {
    std::shared_ptr<const PolyhedralSeminorm> base;
    Subspace z;
    Mat complement;
    Mat coords_solver;  // inverse of [complement; z basis]^T
  };

  PolyhedralSeminorm() = default;

  std::string label_;
  std::vector<Atom> atoms_;
  std::size_t dim_ = 0;
  std::shared_ptr<const QuotientData> quotient_;
};

/// Exact value. Quotients are evaluated by an LP over Z.
Scalar eval(const PolyhedralSeminorm& rho, const Vec& x);

/// Pullback along y's basis: eval(restrict(rho, y), c) = eval(rho, y.embed(c)).
/// Throws PreconditionError for quotients.
PolyhedralSeminorm restrict(const PolyhedralSeminorm& rho, const Subspace& y);

/// Atom-list concatenation.
PolyhedralSeminorm sum(const PolyhedralSeminorm& a, const PolyhedralSeminorm& b, std::string label);

/// {x : rho(x) = 0}
Subspace seminorm_kernel(const PolyhedralSeminorm& rho);

/// Pointwise order: true iff mu(x) <= rho(x) for every x.
bool dominates(const PolyhedralSeminorm& rho, const PolyhedralSeminorm& mu);

/// A finite set of dual functionals whose convex hull is the dual unit ball
/// {g : |g . x| <= mu(x) for all x}, one representative per +/- pair. For
/// quotients the functionals are in quotient dual coordinates.
std::vector<Vec> dual_ball_spanning_set(const PolyhedralSeminorm& mu);

/// Adds epigraph variables to `lp` and returns an expression u with
/// u >= rho(xs) on every feasible point; minimizing u makes it tight.
LinExpr add_seminorm_bound(LpBuilder& lp, const PolyhedralSeminorm& rho, const std::vector<LinExpr>& xs);

/// Adds representation variables so that the constraints are satisfiable
/// exactly when chi_rho(g) <= t.
void add_dual_gauge_bound(LpBuilder& lp, const PolyhedralSeminorm& rho, const std::vector<LinExpr>& g,
                          const LinExpr& t);

struct ClosureResult;

/// Finite indexed family with a memoized domination table.
class SeminormFamily {
 public:
  SeminormFamily() = default;
  /// Throws PreconditionError on duplicate labels or mixed dimensions.
  explicit SeminormFamily(std::vector<PolyhedralSeminorm> members, bool directed = false);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t dim() const;
  const PolyhedralSeminorm& operator[](std::size_t i) const { return members_.at(i); }
  const std::vector<PolyhedralSeminorm>& members() const noexcept { return members_; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  std::size_t require_index(const std::string& label) const;

  bool directed() const noexcept { return directed_; }

  /// dominates(members[i], members[j]), memoized.
  bool dominates(std::size_t i, std::size_t j) const;
  /// True when every pair has a member dominating both.
  bool verify_directed() const;

 private:
  friend ClosureResult directed_closure(const SeminormFamily& fam, std::size_t cap);

  struct Cache {
    std::mutex mutex;
    std::vector<signed char> table;  // -1 unknown, 0/1 decided
  };

  std::vector<PolyhedralSeminorm> members_;
  bool directed_ = false;
  std::shared_ptr<Cache> cache_;
};

struct ClosureResult {
  SeminormFamily family;
  bool closed = false;  // false when the cap stopped the closure
  std::vector<std::string> added;
};

/// Adds pairwise sums (labelled "a+b") until every pair is dominated by some
/// member or the family would exceed `cap` members.
ClosureResult directed_closure(const SeminormFamily& fam, std::size_t cap);

/// Indices of members dominating members[mu]; in family order.
std::vector<std::size_t> subfamily_above(const SeminormFamily& fam, std::size_t mu);

}  // namespace hblab
