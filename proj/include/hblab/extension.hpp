#pragma once

// The set of norm-preserving (Hahn-Banach) extensions of a pair as a polytope,
// uniqueness certificates, the sup/inf extension identity and the
// two-extensions-at-radius construction.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hblab/dual_gauge.hpp"
#include "hblab/lp.hpp"

namespace hblab {

/// {g in X* : g|_Y = f, chi_rho(g) <= chi_rho^Y(f)}, as an LP feasible region over
/// (g, representation variables). The first dim(X) variables are g.
class HbePolytope {
 public:
  explicit HbePolytope(Pair pair);

  const Pair& pair() const noexcept { return pair_; }
  const Scalar& bound() const noexcept { return pair_.chi(); }
  std::size_t dim() const noexcept { return pair_.rho().dim(); }

  /// Exact membership: restriction equals f and chi equals the bound.
  bool contains(const Vec& g) const;

  /// min and max of coordinate i, with the extensions attaining them.
  struct Range {
    Scalar min, max;
    Vec argmin, argmax;
  };
  Range coordinate_range(std::size_t i) const;

 private:
  Vec extension_part(const Vec& point) const;

  Pair pair_;
  std::size_t num_vars_ = 0;
  std::size_t total_vars_ = 0;
  FeasibleRegion region_;
};

/// Throws InternalError if the polytope is empty.
HbePolytope hbe_set(const Pair& p);

enum class Verdict { Unique, Multiple };

struct UniquenessCertificate {
  Verdict verdict = Verdict::Unique;
  Vec witness;
  std::optional<Vec> second_witness;
  std::vector<std::pair<Scalar, Scalar>> coordinate_bounds;
};

/// Minimizes and maximizes every coordinate over the polytope. MULTIPLE
/// reports the maximizer and minimizer of the first coordinate with a gap.
UniquenessCertificate hbe_unique(const Pair& p);

/// (sup_v f(v) - c_rho rho(v + x), inf_w -f(w) + c_mu mu(w - x)) over v, w in Y.
/// Requires x outside Y and c_rho, c_mu equal to the subspace gauges of f.
std::pair<Scalar, Scalar> e1_gap(const Vec& f_on_y, const Subspace& y, const Vec& x, const PolyhedralSeminorm& rho,
                                 const PolyhedralSeminorm& mu, const Scalar& c_rho, const Scalar& c_mu);

struct TwoExtensions {
  Vec first;   // positive multiple of g added
  Vec second;  // negative multiple of g added
  std::string mu_label;
  Vec direction;  // the annihilator element g
  Scalar alpha, beta;
};

/// Member dominating both rho and rho_prime: rho itself when it qualifies,
/// otherwise the first in family order.
std::optional<std::size_t> dominating_member(const SeminormFamily& fam, std::size_t rho, std::size_t rho_prime);

/// Two distinct extensions f + alpha g, f + beta g (alpha > 0 > beta) of f with
/// chi_mu exactly r, where f is an extension of minimal mu-gauge and g is a
/// nonzero annihilator element with finite rho_prime-gauge. Requires r > chi_mu^Y(f).
TwoExtensions two_extensions_at_radius(const Vec& f_on_y, const Subspace& y, const SeminormFamily& fam,
                                       const std::string& rho_label, const std::string& rho_prime_label,
                                       const Scalar& r);

/// Exact solution of phi(t) = r for t > 0, phi(t) = chi(mu, base + t dir), given
/// phi(0) < r and chi(mu, dir) finite and positive.
Scalar pl_root(const PolyhedralSeminorm& mu, const Vec& base, const Vec& dir, const Scalar& r);

}  // namespace hblab
