#pragma once

// Exact rational scalars, dense vectors/matrices and subspaces.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hblab/errors.hpp"

namespace hblab {

/// Arbitrary precision rational, always stored in canonical form.
using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

/// Parses "p/q", "-p", "p" (no whitespace, q > 0). Throws ParseError.
Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& s);
std::string to_string(const Vec& v);

Vec zeros(std::size_t n);
Vec unit_vector(std::size_t n, std::size_t i);
Scalar dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& t, const Vec& a);
Vec negate(const Vec& a);
bool is_zero(const Vec& a);
Scalar abs(const Scalar& s);

/// Dense row-major matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Mat identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;
  std::vector<Vec> row_list() const;
  Mat transpose() const;

  Vec apply(const Vec& x) const;            // this * x
  Vec apply_transpose(const Vec& y) const;  // this^T * y
  Mat multiply(const Mat& other) const;

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form together with the pivot column of each nonzero row.
struct RowEchelon {
  Mat reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon row_reduce(const Mat& m);
std::size_t rank(const Mat& m);

/// Some x with m * x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve_linear(const Mat& m, const Vec& b);

/// Inverse of a square nonsingular matrix. Throws PreconditionError otherwise.
Mat inverse(const Mat& m);

/// Linear subspace of Q^n described by linearly independent basis rows.
class Subspace {
 public:
  /// Zero subspace of the given ambient dimension.
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {}

  /// Span of the given vectors; dependent vectors are dropped greedily (first come first kept).
  static Subspace span(std::size_t ambient_dim, const std::vector<Vec>& vectors);
  static Subspace whole(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Mat& basis() const noexcept { return basis_; }
  Vec basis_vector(std::size_t i) const { return basis_.row(i); }

  bool contains(const Vec& x) const;
  bool contains(const Subspace& other) const;
  bool same_span(const Subspace& other) const;

  /// basis^T * coords
  Vec embed(const Vec& coords) const;
  /// Coordinates of x in this basis; throws PreconditionError when x is outside.
  Vec coordinates(const Vec& x) const;

  Subspace sum(const Subspace& other) const;

 private:
  std::size_t ambient_dim_;
  Mat basis_;
};

/// {x : m x = 0}
Subspace kernel(const Mat& m);
/// {g : g . v = 0 for all v in y}, in dual coordinates of the same ambient space.
Subspace annihilator(const Subspace& y);
/// Coefficients of f|_Y against y's basis: component i = f . basis_i.
Vec restrict_functional(const Vec& f, const Subspace& y);

}  // namespace hblab
