#include "hblab/exact.hpp"

#include <cctype>
#include <utility>

namespace hblab {

Scalar parse_scalar(std::string_view text) {
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_int(num, true) || (slash != std::string_view::npos && !valid_int(den, false))) {
    throw ParseError("invalid rational literal '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Scalar out;
  out.get_num() = mpz_class(n, 10);
  out.get_den() = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (out.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  out.canonicalize();
  return out;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

Vec zeros(std::size_t n) { return Vec(n); }

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

Scalar dot(const Vec& a, const Vec& b) {
  require_dim(b.size(), a.size(), "dot");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  require_dim(b.size(), a.size(), "add");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  require_dim(b.size(), a.size(), "sub");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec scale(const Scalar& t, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = t * a[i];
  return out;
}

Vec negate(const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

bool is_zero(const Vec& a) {
  for (const auto& x : a) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

Scalar abs(const Scalar& s) { return sgn(s) < 0 ? Scalar(-s) : s; }

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require_dim(rows[r].size(), cols, "Mat::from_rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vec Mat::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec Mat::col(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<Vec> Mat::row_list() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vec Mat::apply(const Vec& x) const {
  require_dim(x.size(), cols_, "Mat::apply");
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(x[c]) != 0) out[r] += a * x[c];
    }
  }
  return out;
}

Vec Mat::apply_transpose(const Vec& y) const {
  require_dim(y.size(), rows_, "Mat::apply_transpose");
  Vec out(cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (sgn(y[r]) == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (sgn(a) != 0) out[c] += a * y[r];
    }
  }
  return out;
}

Mat Mat::multiply(const Mat& other) const {
  require_dim(other.rows(), cols_, "Mat::multiply");
  Mat out(rows_, other.cols());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < other.cols(); ++c) out(r, c) += a * other(k, c);
    }
  return out;
}

RowEchelon row_reduce(const Mat& m) {
  Mat a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && sgn(a(p, col)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(p, c), a(row, c));
    }
    const Scalar inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || sgn(a(r, col)) == 0) continue;
      const Scalar factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) {
        if (sgn(a(row, c)) != 0) a(r, c) -= factor * a(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Mat& m) { return row_reduce(m).pivots.size(); }

std::optional<Vec> solve_linear(const Mat& m, const Vec& b) {
  require_dim(b.size(), m.rows(), "solve_linear");
  Mat aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const RowEchelon ech = row_reduce(aug);
  Vec x(m.cols());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    if (ech.pivots[i] == m.cols()) return std::nullopt;
    x[ech.pivots[i]] = ech.reduced(i, m.cols());
  }
  return x;
}

Mat inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  Mat aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const RowEchelon ech = row_reduce(aug);
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1) throw PreconditionError("inverse: matrix is singular");
  Mat inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = ech.reduced(r, n + c);
  return inv;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vec>& vectors) {
  Subspace s(ambient_dim);
  std::vector<Vec> kept;
  for (const auto& v : vectors) {
    require_dim(v.size(), ambient_dim, "Subspace::span");
    if (is_zero(v)) continue;
    kept.push_back(v);
    if (rank(Mat::from_rows(kept, ambient_dim)) < kept.size()) kept.pop_back();
  }
  s.basis_ = Mat::from_rows(kept, ambient_dim);
  return s;
}

Subspace Subspace::whole(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  s.basis_ = Mat::identity(ambient_dim);
  return s;
}

bool Subspace::contains(const Vec& x) const {
  require_dim(x.size(), ambient_dim_, "Subspace::contains");
  if (is_zero(x)) return true;
  if (dim() == 0) return false;
  return solve_linear(basis_.transpose(), x).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  require_dim(other.ambient_dim(), ambient_dim_, "Subspace::contains");
  for (std::size_t i = 0; i < other.dim(); ++i) {
    if (!contains(other.basis_vector(i))) return false;
  }
  return true;
}

bool Subspace::same_span(const Subspace& other) const {
  return dim() == other.dim() && contains(other);
}

Vec Subspace::embed(const Vec& coords) const {
  require_dim(coords.size(), dim(), "Subspace::embed");
  return basis_.apply_transpose(coords);
}

Vec Subspace::coordinates(const Vec& x) const {
  require_dim(x.size(), ambient_dim_, "Subspace::coordinates");
  if (dim() == 0) {
    if (!is_zero(x)) throw PreconditionError("coordinates: vector outside the subspace");
    return {};
  }
  auto c = solve_linear(basis_.transpose(), x);
  if (!c) throw PreconditionError("coordinates: vector outside the subspace");
  return *c;
}

Subspace Subspace::sum(const Subspace& other) const {
  require_dim(other.ambient_dim(), ambient_dim_, "Subspace::sum");
  auto rows = basis_.row_list();
  for (auto& r : other.basis_.row_list()) rows.push_back(std::move(r));
  return span(ambient_dim_, rows);
}

Subspace kernel(const Mat& m) {
  const RowEchelon ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = -ech.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), basis);
}

Subspace annihilator(const Subspace& y) {
  if (y.dim() == 0) return Subspace::whole(y.ambient_dim());
  return kernel(y.basis());
}

Vec restrict_functional(const Vec& f, const Subspace& y) {
  require_dim(f.size(), y.ambient_dim(), "restrict_functional");
  return y.basis().apply(f);
}

}  // namespace hblab
