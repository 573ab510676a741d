#pragma once

// Dense subsets of F_p^d, their set algebra, Fourier spectra and Salem
// certification.
//
// Fourier convention: S^(m) = p^{-d} sum_x chi(-m . x) S(x), with inversion
// S(x) = sum_m chi(m . x) S^(m).

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ffvc/bitset.hpp"
#include "ffvc/field.hpp"
#include "ffvc/matrix.hpp"

namespace ffvc {

class PointSet {
 public:
  /// The empty set.
  explicit PointSet(FieldContext ctx);

  static PointSet full(FieldContext ctx);
  static PointSet from_indices(FieldContext ctx, std::span<const Index> indices);
  static PointSet from_points(FieldContext ctx, const std::vector<Point>& points);
  /// {x : keep(x)} for a predicate over point indices.
  template <class Pred>
  static PointSet from_predicate(FieldContext ctx, Pred&& keep) {
    PointSet s(std::move(ctx));
    for (Index x = 0; x < s.ctx_.size(); ++x) {
      if (keep(x)) s.bits_.set(x);
    }
    s.size_ = s.bits_.count();
    return s;
  }

  const FieldContext& context() const noexcept { return ctx_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool contains(Index x) const noexcept { return bits_.test(x); }
  bool contains(const Point& x) const { return bits_.test(ctx_.encode(x)); }
  const DynamicBitset& bits() const noexcept { return bits_; }

  /// Members in increasing index order.
  std::vector<Index> indices() const;
  /// Members in lexicographic coordinate order.
  std::vector<Index> lex_members() const;

  bool operator==(const PointSet& o) const noexcept { return ctx_ == o.ctx_ && bits_ == o.bits_; }

 private:
  FieldContext ctx_;
  DynamicBitset bits_;
  std::size_t size_ = 0;
};

// Set algebra. Binary operations throw ContextMismatch for sets over different groups.
PointSet negate(const PointSet& s);
/// {x + v : x in S}.
PointSet translate(const PointSet& s, Index v);
/// {T x : x in S}; throws SingularMatrix unless T is invertible.
PointSet linear_image(const PointSet& s, const ModMatrix& transform);
PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_intersection(const PointSet& a, const PointSet& b);
/// S = -S.
bool is_symmetric(const PointSet& s);

/// Normalized forward transform of an arbitrary function on F_p^d, computed one
/// axis at a time.
std::vector<Complex> fourier_transform(const FieldContext& ctx, std::span<const Complex> f);
/// f(x) = sum_m chi(m . x) f^(m).
std::vector<Complex> inverse_fourier_transform(const FieldContext& ctx, std::span<const Complex> fhat);

class SpectrumTable {
 public:
  SpectrumTable(FieldContext ctx, std::vector<Complex> values);

  const FieldContext& context() const noexcept { return ctx_; }
  const Complex& at(Index m) const noexcept { return values_[m]; }
  std::span<const Complex> values() const noexcept { return values_; }
  /// max over m != 0 of |S^(m)|.
  double max_nontrivial() const noexcept { return max_nontrivial_; }
  /// A frequency attaining max_nontrivial (least index); 0 when p^d = 1 is impossible.
  Index argmax_nontrivial() const noexcept { return argmax_; }

 private:
  FieldContext ctx_;
  std::vector<Complex> values_;
  double max_nontrivial_ = 0.0;
  Index argmax_ = 0;
};

SpectrumTable fourier_spectrum(const PointSet& s);

struct SalemParams {
  double gamma = 0.0;
  double constant = 2.0;
};

struct SalemReport {
  double max_nontrivial = 0.0;
  /// constant * q^{-d} * (log q)^gamma * |S|^{1/2}, natural logarithm.
  double bound = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

double salem_bound(const FieldContext& ctx, std::size_t set_size, const SalemParams& params);
/// Throws EmptySet for S empty, InvalidArgument for gamma < 0 or constant <= 0.
SalemReport salem_report(const PointSet& s, const SalemParams& params = {});
SalemReport salem_report(const PointSet& s, const SpectrumTable& spectrum, const SalemParams& params = {});

/// Text format: a "p d" header line, then one point per line as d integers.
/// Lines starting with '#' and blank lines are ignored; duplicates are a ParseError.
PointSet read_pointset(std::istream& in);
void write_pointset(std::ostream& out, const PointSet& s);

}  // namespace ffvc
