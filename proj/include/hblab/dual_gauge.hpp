#pragma once

// The dual gauge chi_rho(f) = sup{|f(x)| : rho(x) <= 1} on X* and on Y*, pairs
// (f, rho) with finite gauge, and one norm-preserving extension per pair.

#include <compare>
#include <optional>
#include <string>

#include "hblab/exact.hpp"
#include "hblab/seminorm.hpp"

namespace hblab {

/// A rational or +infinity.
class ExtendedScalar {
 public:
  ExtendedScalar() = default;
  ExtendedScalar(Scalar v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  static ExtendedScalar infinity() {
    ExtendedScalar e;
    e.infinite_ = true;
    return e;
  }

  bool is_finite() const noexcept { return !infinite_; }
  /// Throws PreconditionError when infinite.
  const Scalar& value() const;

  friend bool operator==(const ExtendedScalar& a, const ExtendedScalar& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtendedScalar& a, const ExtendedScalar& b);
  friend ExtendedScalar operator+(const ExtendedScalar& a, const ExtendedScalar& b);

 private:
  Scalar value_;
  bool infinite_ = false;
};

std::string to_string(const ExtendedScalar& e);

/// Kernel check first, then the dual representation LP.
ExtendedScalar chi(const PolyhedralSeminorm& rho, const Vec& f);
/// sup f(x) over the unit ball, as an LP in x.
ExtendedScalar chi_primal(const PolyhedralSeminorm& rho, const Vec& f);
/// min t over representations f = sum lambda_i a_i (see add_dual_gauge_bound).
ExtendedScalar chi_dual_representation(const PolyhedralSeminorm& rho, const Vec& f);

/// chi of f_on_y (coordinates against y's basis) for rho restricted to y.
ExtendedScalar chi_on_subspace(const PolyhedralSeminorm& rho, const Vec& f_on_y, const Subspace& y);

/// {c : rho(y.embed(c)) = 0} in y coordinates.
Subspace restricted_kernel(const PolyhedralSeminorm& rho, const Subspace& y);

/// f in Y* with a seminorm whose gauge at f is finite. Validated on construction.
class Pair {
 public:
  /// Throws InvalidPairError when chi_on_subspace is infinite.
  Pair(PolyhedralSeminorm rho, Vec f_on_y, Subspace y);

  const PolyhedralSeminorm& rho() const noexcept { return rho_; }
  const Vec& f() const noexcept { return f_; }
  const Subspace& y() const noexcept { return y_; }
  /// chi_rho^Y(f)
  const Scalar& chi() const noexcept { return chi_; }

 private:
  PolyhedralSeminorm rho_;
  Vec f_;
  Subspace y_;
  Scalar chi_;
};

/// First member (family order) with finite gauge at f.
std::optional<std::size_t> finite_support_witness(const Vec& f, const SeminormFamily& fam);

/// An extension g of the pair's functional with chi(rho, g) = chi_rho^Y(f).
Vec one_hbe(const Pair& p);

}  // namespace hblab
