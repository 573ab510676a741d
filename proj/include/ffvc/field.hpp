#pragma once

// Prime-field arithmetic, the fixed additive character, and the classical
// character sums (Legendre symbol, Gauss, Kloosterman, Weil polynomial sums).
//
// All field elements are canonical residues in [0, p). Points of F_p^d are
// addressed by a linear index x_1 + x_2 p + ... + x_d p^{d-1}.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace ffvc {

using Complex = std::complex<double>;
using Index = std::uint32_t;
using Point = std::vector<std::uint32_t>;

/// Largest supported group order p^d.
inline constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 22;

bool is_prime(std::uint64_t n) noexcept;

/// The ambient group F_p^d together with its fixed character chi(x) = exp(2 pi i x / p).
///
/// Cheap to copy; the character table is shared between copies.
class FieldContext {
 public:
  /// Throws NotPrime unless p is an odd prime, TooLarge if p^d > kMaxPoints.
  explicit FieldContext(std::uint32_t p, std::uint32_t d = 1);

  std::uint32_t p() const noexcept { return data_->p; }
  std::uint32_t d() const noexcept { return data_->d; }
  /// Number of points p^d.
  Index size() const noexcept { return data_->size; }

  // Scalar arithmetic on canonical residues.
  std::uint32_t reduce(std::int64_t x) const noexcept;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    const std::uint32_t s = a + b;
    return s >= p() ? s - p() : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + p() - b;
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p() - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p());
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  /// Multiplicative inverse; throws ZeroParameter for a = 0.
  std::uint32_t inv(std::uint32_t a) const;
  /// Signed representative in (-p/2, p/2].
  std::int64_t to_signed(std::uint32_t a) const noexcept {
    return a > p() / 2 ? std::int64_t{a} - p() : std::int64_t{a};
  }

  /// chi(x) for a canonical residue x.
  const Complex& chi(std::uint32_t x) const noexcept { return data_->roots[x]; }
  /// The unit epsilon_q = g(1) / (eta(1) sqrt(p)), computed from the Gauss sum at construction.
  Complex epsilon() const noexcept { return data_->epsilon; }

  // Points.
  Index encode(std::span<const std::uint32_t> coords) const;
  Index encode_signed(std::span<const std::int64_t> coords) const;
  Point decode(Index index) const;
  std::uint32_t coord(Index index, std::uint32_t axis) const noexcept {
    return index / data_->stride[axis] % p();
  }
  std::uint32_t stride(std::uint32_t axis) const noexcept { return data_->stride[axis]; }
  Index add_points(Index a, Index b) const noexcept;
  Index sub_points(Index a, Index b) const noexcept;
  Index neg_point(Index a) const noexcept;
  /// m . x mod p.
  std::uint32_t dot(Index m, Index x) const noexcept;

  /// Rank of a point in lexicographic order on (x_1, ..., x_d), x_1 most significant.
  Index lex_rank(Index index) const noexcept;
  Index from_lex_rank(Index rank) const noexcept;

  bool operator==(const FieldContext& other) const noexcept {
    return p() == other.p() && d() == other.d();
  }

 private:
  struct Data {
    std::uint32_t p = 0;
    std::uint32_t d = 0;
    Index size = 0;
    std::vector<Index> stride;
    std::vector<Complex> roots;
    Complex epsilon;
  };
  std::shared_ptr<const Data> data_;
};

/// Evaluates chi and the characters chi_m(x) = chi(m . x) of F_p^d.
class CharacterEvaluator {
 public:
  explicit CharacterEvaluator(FieldContext ctx) : ctx_(std::move(ctx)) {}

  const FieldContext& context() const noexcept { return ctx_; }
  Complex operator()(std::uint32_t x) const noexcept { return ctx_.chi(x); }
  Complex operator()(Index m, Index x) const noexcept { return ctx_.chi(ctx_.dot(m, x)); }

 private:
  FieldContext ctx_;
};

/// eta(k): +1 for nonzero squares, -1 for nonsquares, 0 for k = 0.
int legendre(const FieldContext& ctx, std::uint32_t k);

/// g(k) = sum_x chi(k x^2).
Complex gauss_sum(const FieldContext& ctx, std::uint32_t k);

/// sum_{j != 0} chi(a j + b / j). Throws ZeroParameter if a or b is zero.
Complex kloosterman(const FieldContext& ctx, std::uint32_t a, std::uint32_t b);

/// Polynomials are coefficient lists, constant term first. Coefficients are
/// reduced mod p and trailing zeros dropped.
std::vector<std::uint32_t> normalize_poly(const FieldContext& ctx, std::span<const std::int64_t> coeffs);
std::uint32_t eval_poly(const FieldContext& ctx, std::span<const std::uint32_t> coeffs, std::uint32_t x) noexcept;
/// Degree of a normalized polynomial; the zero polynomial has degree 0.
inline std::size_t poly_degree(std::span<const std::uint32_t> coeffs) noexcept {
  return coeffs.empty() ? 0 : coeffs.size() - 1;
}

/// sum_j chi(f(j)). Throws ConstantPolynomial for deg f = 0 and
/// DegreeDivisibleByP when p | deg f.
Complex weil_poly_sum(const FieldContext& ctx, std::span<const std::int64_t> coeffs);

}  // namespace ffvc
