#include "ffvc/matrix.hpp"

#include <utility>

#include "ffvc/error.hpp"

namespace ffvc {

ModMatrix::ModMatrix(FieldContext ctx, std::uint32_t n) : ctx_(std::move(ctx)), n_(n), a_(n * n, 0) {}

ModMatrix::ModMatrix(FieldContext ctx, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : ctx_(std::move(ctx)), n_(static_cast<std::uint32_t>(rows.size())) {
  a_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
    for (auto v : row) a_.push_back(ctx_.reduce(v));
  }
}

ModMatrix::ModMatrix(FieldContext ctx, std::uint32_t n, const std::vector<std::int64_t>& row_major)
    : ctx_(std::move(ctx)), n_(n) {
  if (row_major.size() != std::size_t{n} * n) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n * n) + " matrix entries");
  }
  a_.reserve(row_major.size());
  for (auto v : row_major) a_.push_back(ctx_.reduce(v));
}

ModMatrix ModMatrix::identity(FieldContext ctx, std::uint32_t n) {
  ModMatrix m(std::move(ctx), n);
  for (std::uint32_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::uint32_t ModMatrix::determinant() const {
  auto m = a_;
  std::uint32_t det = 1;
  for (std::uint32_t col = 0; col < n_; ++col) {
    std::uint32_t pivot = col;
    while (pivot < n_ && m[pivot * n_ + col] == 0) ++pivot;
    if (pivot == n_) return 0;
    if (pivot != col) {
      for (std::uint32_t c = 0; c < n_; ++c) std::swap(m[pivot * n_ + c], m[col * n_ + c]);
      det = ctx_.neg(det);
    }
    const std::uint32_t pv = m[col * n_ + col];
    det = ctx_.mul(det, pv);
    const std::uint32_t pinv = ctx_.inv(pv);
    for (std::uint32_t r = col + 1; r < n_; ++r) {
      const std::uint32_t factor = ctx_.mul(m[r * n_ + col], pinv);
      if (factor == 0) continue;
      for (std::uint32_t c = col; c < n_; ++c) {
        m[r * n_ + c] = ctx_.sub(m[r * n_ + c], ctx_.mul(factor, m[col * n_ + c]));
      }
    }
  }
  return det;
}

ModMatrix ModMatrix::inverse() const {
  ModMatrix left = *this;
  ModMatrix right = identity(ctx_, n_);
  for (std::uint32_t col = 0; col < n_; ++col) {
    std::uint32_t pivot = col;
    while (pivot < n_ && left(pivot, col) == 0) ++pivot;
    if (pivot == n_) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible over F_p");
    for (std::uint32_t c = 0; c < n_; ++c) {
      std::swap(left(pivot, c), left(col, c));
      std::swap(right(pivot, c), right(col, c));
    }
    const std::uint32_t pinv = ctx_.inv(left(col, col));
    for (std::uint32_t c = 0; c < n_; ++c) {
      left(col, c) = ctx_.mul(left(col, c), pinv);
      right(col, c) = ctx_.mul(right(col, c), pinv);
    }
    for (std::uint32_t r = 0; r < n_; ++r) {
      if (r == col || left(r, col) == 0) continue;
      const std::uint32_t factor = left(r, col);
      for (std::uint32_t c = 0; c < n_; ++c) {
        left(r, c) = ctx_.sub(left(r, c), ctx_.mul(factor, left(col, c)));
        right(r, c) = ctx_.sub(right(r, c), ctx_.mul(factor, right(col, c)));
      }
    }
  }
  return right;
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix t(ctx_, n_);
  for (std::uint32_t r = 0; r < n_; ++r)
    for (std::uint32_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const {
  if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix sizes differ");
  ModMatrix out(ctx_, n_);
  for (std::uint32_t r = 0; r < n_; ++r)
    for (std::uint32_t c = 0; c < n_; ++c) {
      std::uint32_t acc = 0;
      for (std::uint32_t k = 0; k < n_; ++k) acc = ctx_.add(acc, ctx_.mul((*this)(r, k), o(k, c)));
      out(r, c) = acc;
    }
  return out;
}

std::vector<std::uint32_t> ModMatrix::apply(const std::vector<std::uint32_t>& v) const {
  if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from matrix size");
  std::vector<std::uint32_t> out(n_, 0);
  for (std::uint32_t r = 0; r < n_; ++r) {
    std::uint32_t acc = 0;
    for (std::uint32_t c = 0; c < n_; ++c) acc = ctx_.add(acc, ctx_.mul((*this)(r, c), v[c] % ctx_.p()));
    out[r] = acc;
  }
  return out;
}

}  // namespace ffvc
