#pragma once

// Builders for the example spaces: the R^2 family rho_n, finite C_p(Z) models
// with max/sum/mixed families, span{f0} and two-dimensional subspaces of C_p(Z).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hblab/exact.hpp"
#include "hblab/seminorm.hpp"

namespace hblab {

struct NamedFunctional {
  std::string name;
  Vec f;  // coordinates against the model subspace's basis
};

struct Model {
  std::string id;
  SeminormFamily family;
  Subspace y;
  /// Members [0, candidate_limit) are the candidates searched for mu.
  std::size_t candidate_limit = 0;
  std::vector<NamedFunctional> functionals;

  const Vec& functional(const std::string& name) const;
};

/// rho_n(x, y) = n(|x| + |y|) for n a power of two (2^m, m >= 1), n(|x| + |y|/2)
/// for odd n, n max(|x|, |y|) otherwise.
PolyhedralSeminorm ex4_seminorm(int n);

/// R^2 with rho_1..rho_N, N the least power of two >= 2 n_max + 2, so rho_N tops
/// the family and every candidate n <= n_max sees an even non-power above it.
/// Y = {(x, x)}, functional "f" with f(x, x) = k x. Requires n_max >= 6.
Model build_ex4(int n_max, const Scalar& k);

enum class CpzKind { Max, Sum, Mixed };

/// "{1,3}" for bit mask 0b101 (sites are 1-based).
std::string subset_name(unsigned mask);
/// Sites of a mask, 0-based.
std::vector<std::size_t> subset_sites(unsigned mask);

/// X = R^m (Dirac basis), Y_A = {f : f|_A = 0} spanned by e_i, i not in A.
/// MAX: rho_F = max_F |f(x)|. SUM: rho_F = sum_F |f(x)|. MIXED: rho_F = |F| max_F,
/// mu_F = |F| sum_F. Members in mask order, labels "rho{..}" and "mu{..}".
/// MIXED lists the members below rho_Z first (every rho_F, and mu_F with
/// |F|^2 <= m) and uses them as the candidate window: mu_Z tops the finite family
/// and no rho_F lies above it.
/// `a` holds 0-based sites. Requires 1 <= |A| < m <= 10.
Model build_cpz(std::size_t m, const std::vector<std::size_t>& a, CpzKind kind);

/// The C_p(Z) max family over all nonempty F subsets of {1..m}.
SeminormFamily cpz_max_family(std::size_t m);

/// Max family on R^m with Y = span{f0}; functional "f" is [1] (f(f0) = 1).
Model build_span_f0(const Vec& f0);

/// delta_{x3}|_Y = a delta_{x1}|_Y + b delta_{x2}|_Y with |a| + |b| = 1, where
/// x1, x2, x3 are maximizers of |f1| (0-based). Both sides then extend the same
/// functional with gauge 1 for every rho_F with F containing the three points.
struct TriplePoint {
  std::size_t x1 = 0, x2 = 0, x3 = 0;
  Scalar a, b;
};

struct P5Model {
  Model model;
  std::vector<std::size_t> maximizers;
  std::optional<TriplePoint> triple;
};

/// Max family on R^m with Y = span{f1, f2}; functionals "delta<i>" are the
/// restrictions of the Dirac functionals at the maximizers of |f1|.
/// Requires three or more maximizers and independent f1, f2.
P5Model build_p5(const Vec& f1, const Vec& f2);

/// Dirac functional at 0-based site i of R^m.
Vec dirac(std::size_t m, std::size_t i);

}  // namespace hblab
