#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "ffvc/field.hpp"

namespace ffvc {

/// Square matrix over F_p, row-major, entries canonical residues.
class ModMatrix {
 public:
  ModMatrix(FieldContext ctx, std::uint32_t n);
  /// Entries given row by row; reduced mod p.
  ModMatrix(FieldContext ctx, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  ModMatrix(FieldContext ctx, std::uint32_t n, const std::vector<std::int64_t>& row_major);

  static ModMatrix identity(FieldContext ctx, std::uint32_t n);

  std::uint32_t n() const noexcept { return n_; }
  const FieldContext& field() const noexcept { return ctx_; }
  std::uint32_t operator()(std::uint32_t r, std::uint32_t c) const noexcept { return a_[r * n_ + c]; }
  std::uint32_t& operator()(std::uint32_t r, std::uint32_t c) noexcept { return a_[r * n_ + c]; }

  std::uint32_t determinant() const;
  /// Throws SingularMatrix when the determinant vanishes.
  ModMatrix inverse() const;
  ModMatrix transpose() const;
  ModMatrix operator*(const ModMatrix& o) const;
  std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& v) const;

  bool operator==(const ModMatrix& o) const noexcept { return n_ == o.n_ && a_ == o.a_; }

 private:
  FieldContext ctx_;
  std::uint32_t n_;
  std::vector<std::uint32_t> a_;
};

}  // namespace ffvc
