#pragma once

// Exact two-phase simplex (Bland's rule) with optimality, unboundedness and
// infeasibility certificates, plus a small affine-expression LP builder.

#include <cstddef>
#include <map>
#include <variant>
#include <vector>

#include "hblab/exact.hpp"

namespace hblab {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };

struct Constraint {
  Vec coeffs;
  Relation relation = Relation::LessEqual;
  Scalar rhs;
};

/// Variables are free unless flagged in `nonnegative` (an empty flag list means all free).
struct LinearProgram {
  Sense sense = Sense::Maximize;
  Vec objective;
  std::vector<Constraint> constraints;
  std::size_t num_vars = 0;
  std::vector<bool> nonnegative;

  bool is_nonnegative(std::size_t j) const { return !nonnegative.empty() && nonnegative[j]; }
  void validate() const;
};

/// `dual` holds one multiplier u_i per constraint with sum_i u_i a_i = c on free
/// variables (>= c for maximize, <= c for minimize on nonnegative ones),
/// u_i >= 0 on <= rows and u_i <= 0 on >= rows when maximizing (signs flip
/// when minimizing), and sum_i u_i b_i = value.
struct LpOptimal {
  Scalar value;
  Vec point;
  Vec dual;
};

/// `point` is feasible and point + t * ray stays feasible for t >= 0 while the
/// objective improves strictly.
struct LpUnbounded {
  Vec point;
  Vec ray;
};

/// Farkas multipliers: lambda_i >= 0 on <= rows, <= 0 on >= rows, free on
/// equalities, sum_i lambda_i a_i = 0 on free variables (>= 0 on nonnegative
/// ones) and sum_i lambda_i b_i < 0.
struct LpInfeasible {
  Vec farkas;
};

using LpResult = std::variant<LpOptimal, LpUnbounded, LpInfeasible>;

LpResult solve_lp(const LinearProgram& lp);

/// Checks the certificate carried by `result` against `lp` with exact arithmetic.
bool verify_certificate(const LinearProgram& lp, const LpResult& result);

/// The feasible set of an LP after phase one. Reusable for many objectives.
class FeasibleRegion {
 public:
  explicit FeasibleRegion(const LinearProgram& lp);

  bool feasible() const noexcept { return feasible_; }
  const Vec& farkas() const noexcept { return farkas_; }

  /// Runs phase two from the stored feasible basis. Must only be called when feasible().
  LpResult optimize(const Vec& objective, Sense sense, bool with_dual = true) const;

 private:
  enum class ColumnKind { Structural, Slack, Artificial };
  struct Column {
    ColumnKind kind;
    std::size_t index;  // variable for structural columns, row otherwise
    int sign;           // +1 or -1 for split free variables
  };
  struct Tableau {
    std::vector<Vec> rows;  // each row: columns..., rhs
    std::vector<std::size_t> basis;
    std::vector<std::size_t> kept;  // original constraint index of each row
  };

  Vec point_of(const Tableau& t) const;
  Vec solve_duals(const Tableau& t, const Vec& column_costs) const;

  std::size_t num_vars_ = 0;
  std::size_t num_rows_ = 0;
  std::vector<Column> columns_;
  std::vector<int> row_sign_;
  std::vector<Vec> standard_;  // sign-normalized constraint rows over columns_
  Tableau tableau_;
  bool feasible_ = false;
  Vec farkas_;
};

/// Affine expression sum_k c_k x_k + constant over LP variables.
struct LinExpr {
  std::map<std::size_t, Scalar> terms;
  Scalar constant;

  static LinExpr variable(std::size_t index, const Scalar& coeff = 1);
  static LinExpr value(const Scalar& c);

  LinExpr& operator+=(const LinExpr& other);
  LinExpr& operator-=(const LinExpr& other);
  LinExpr& operator*=(const Scalar& t);

  Scalar evaluate(const Vec& point) const;
};

LinExpr operator+(LinExpr a, const LinExpr& b);
LinExpr operator-(LinExpr a, const LinExpr& b);
LinExpr operator*(const Scalar& t, LinExpr a);

/// Dot product of a constant vector with a vector of expressions.
LinExpr dot(const Vec& coeffs, const std::vector<LinExpr>& xs);

class LpBuilder {
 public:
  std::size_t add_variable(bool nonnegative = false);
  std::vector<LinExpr> add_variables(std::size_t n, bool nonnegative = false);
  void add_constraint(const LinExpr& lhs, Relation rel, const LinExpr& rhs = {});

  std::size_t num_vars() const noexcept { return nonnegative_.size(); }
  std::size_t num_constraints() const noexcept { return constraints_.size(); }

  /// The LP for the given objective; the objective's constant is dropped.
  LinearProgram program(Sense sense, const LinExpr& objective) const;
  Vec objective_vector(const LinExpr& objective) const;

 private:
  std::vector<bool> nonnegative_;
  std::vector<std::pair<LinExpr, Relation>> constraints_;  // lhs rel 0
};

}  // namespace hblab
