#include "riesz/matrix.hpp"

#include <algorithm>
#include <optional>

#include "riesz/errors.hpp"

namespace riesz {

RationalMatrix::RationalMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw PreconditionError("matrix dimension must be positive");
}

RationalMatrix::RationalMatrix(std::size_t dim, std::vector<Rational> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (dim == 0) throw PreconditionError("matrix dimension must be positive");
  if (data_.size() != dim * dim) throw PreconditionError("matrix entry count does not match dimension");
}

RationalMatrix RationalMatrix::identity(std::size_t dim) { return scalar(dim, Rational(1)); }

RationalMatrix RationalMatrix::scalar(std::size_t dim, const Rational& q) {
  RationalMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = q;
  return m;
}

RationalMatrix RationalMatrix::diagonal(std::span<const Rational> diag) {
  RationalMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

bool RationalMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other) {
  if (other.dim_ != dim_) throw PreconditionError("matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& other) {
  if (other.dim_ != dim_) throw PreconditionError("matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& q) {
  for (auto& x : data_) x *= q;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim_ != b.dim_) throw PreconditionError("matrix dimension mismatch");
  const std::size_t n = a.dim_;
  RationalMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

RationalMatrix RationalMatrix::shifted(const Rational& q) const {
  RationalMatrix m = *this;
  for (std::size_t i = 0; i < dim_; ++i) m(i, i) += q;
  return m;
}

bool psd_check(const RationalMatrix& a) {
  if (!a.is_symmetric()) throw PreconditionError("psd_check: matrix is not symmetric");
  const std::size_t n = a.dim();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
  std::vector<std::size_t> live(n);
  for (std::size_t i = 0; i < n; ++i) live[i] = i;

  while (!live.empty()) {
    std::optional<std::size_t> pivot;
    for (std::size_t idx = 0; idx < live.size(); ++idx) {
      const int s = sgn(m[live[idx]][live[idx]]);
      if (s < 0) return false;
      if (s > 0 && !pivot) pivot = idx;
    }
    // Zero diagonal entries force their rows to vanish.
    std::vector<std::size_t> rest;
    for (std::size_t idx = 0; idx < live.size(); ++idx) {
      const std::size_t i = live[idx];
      if (sgn(m[i][i]) != 0) {
        rest.push_back(i);
        continue;
      }
      for (std::size_t j : live)
        if (sgn(m[i][j]) != 0) return false;
    }
    if (!pivot) return true;
    const std::size_t p = live[*pivot];
    live.clear();
    for (std::size_t i : rest)
      if (i != p) live.push_back(i);
    const Rational d = m[p][p];
    for (std::size_t i : live) {
      if (sgn(m[i][p]) == 0) continue;
      const Rational f = m[i][p] / d;
      for (std::size_t j : live) m[i][j] -= f * m[p][j];
    }
  }
  return true;
}

Rational row_sum_bound(const RationalMatrix& a) {
  Rational best = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < a.dim(); ++j) s += rabs(a(i, j));
    best = rmax(best, s);
  }
  return best;
}

std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) throw PreconditionError("solve_linear: singular system");
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

std::vector<Rational> minimal_polynomial(const RationalMatrix& a) {
  const std::size_t n = a.dim();
  const std::size_t len = n * n;
  // Incremental echelon form of vec(I), vec(A), vec(A^2), ... tracking how each
  // reduced row is expressed in the powers.
  struct Row {
    std::vector<Rational> v;
    std::vector<Rational> combo;
    std::size_t lead;
  };
  std::vector<Row> basis;
  RationalMatrix power = RationalMatrix::identity(n);
  for (std::size_t deg = 0; deg <= n; ++deg) {
    std::vector<Rational> v(power.data().begin(), power.data().end());
    std::vector<Rational> combo(deg + 1);
    combo[deg] = 1;
    for (const Row& row : basis) {
      if (sgn(v[row.lead]) == 0) continue;
      const Rational f = v[row.lead] / row.v[row.lead];
      for (std::size_t k = 0; k < len; ++k) v[k] -= f * row.v[k];
      for (std::size_t k = 0; k < row.combo.size(); ++k) combo[k] -= f * row.combo[k];
    }
    std::size_t lead = 0;
    while (lead < len && sgn(v[lead]) == 0) ++lead;
    if (lead == len) return combo;  // combo(A) = 0 with leading coefficient 1
    basis.push_back(Row{std::move(v), std::move(combo), lead});
    power = power * a;
  }
  throw Error("minimal_polynomial: degree exceeded dimension");
}

}  // namespace riesz
