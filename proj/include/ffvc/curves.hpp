#pragma once

// Explicit curves in F_p^d and the reduction of plane conics to canonical form.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ffvc/field.hpp"
#include "ffvc/matrix.hpp"
#include "ffvc/pointset.hpp"

namespace ffvc {

/// f(x, y) = A x^2 + B xy + C y^2 + D x + E y + F over F_p.
class QuadraticSpec {
 public:
  /// Throws NotQuadratic when A = B = C = 0 or f lies in F_p[x] or F_p[y].
  QuadraticSpec(FieldContext field, const std::array<std::int64_t, 6>& coefficients);

  const FieldContext& field() const noexcept { return field_; }
  const std::array<std::uint32_t, 6>& coefficients() const noexcept { return c_; }
  std::uint32_t A() const noexcept { return c_[0]; }
  std::uint32_t B() const noexcept { return c_[1]; }
  std::uint32_t C() const noexcept { return c_[2]; }
  std::uint32_t D() const noexcept { return c_[3]; }
  std::uint32_t E() const noexcept { return c_[4]; }
  std::uint32_t F() const noexcept { return c_[5]; }

  /// The symmetric matrix [[A, B/2], [B/2, C]] of the quadratic part.
  ModMatrix quadratic_matrix() const;
  /// The bordered 3x3 matrix [[A, B/2, D/2], [B/2, C, E/2], [D/2, E/2, F]].
  ModMatrix bordered_matrix() const;
  std::uint32_t det2() const { return quadratic_matrix().determinant(); }
  std::uint32_t det3() const { return bordered_matrix().determinant(); }

  std::uint32_t evaluate(std::uint32_t x, std::uint32_t y) const noexcept;

 private:
  FieldContext field_;
  std::array<std::uint32_t, 6> c_{};
};

struct ConicClassification {
  bool smooth = false;                     ///< det3 != 0
  bool degenerate_quadratic_part = false;  ///< det2 == 0
};

ConicClassification classify_quadratic(const QuadraticSpec& spec);

enum class CanonicalKind { Parabola, Diagonal };

/// Canonical coordinates z = linear * x + offset. For Parabola the image of
/// the zero set is {Y = X^2}; for Diagonal it is {a X^2 + b Y^2 + c = 0} and
/// f(x) = a X^2 + b Y^2 + c holds pointwise.
struct CanonicalForm {
  FieldContext field;
  CanonicalKind kind = CanonicalKind::Diagonal;
  /// Diagonal coefficients; zero for Parabola.
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t c = 0;
  /// Row-major 2x2 matrix.
  std::array<std::uint32_t, 4> linear{};
  std::array<std::uint32_t, 2> offset{};
  /// Diagonal kind only: w = -1/2 M^{-1} (D, E)^t, the point whose translation removes linear terms.
  std::array<std::uint32_t, 2> center{};

  ModMatrix linear_matrix() const { return ModMatrix(field, 2, {linear[0], linear[1], linear[2], linear[3]}); }
  std::array<std::uint32_t, 2> apply(std::uint32_t x, std::uint32_t y) const noexcept;
  bool canonical_contains(std::uint32_t X, std::uint32_t Y) const noexcept;
};

/// Congruence diagonalization of the quadratic part followed by completing
/// the square. Throws DegenerateConic when the quadratic part is degenerate
/// and no linear term survives in the kernel direction (a pair of lines).
CanonicalForm reduce_quadratic(const QuadraticSpec& spec);

/// Zero set of f in the plane context `plane` (d must be 2).
PointSet zero_set(const QuadraticSpec& spec, const FieldContext& plane);
/// Zero set of the canonical equation.
PointSet canonical_zero_set(const CanonicalForm& form, const FieldContext& plane);

namespace family {
/// x_1^2 + ... + x_d^2 = t.
struct Sphere {
  std::uint32_t t = 1;
};
/// {(x_1, ..., x_{d-1}, x_1^2 + ... + x_{d-1}^2)}.
struct Paraboloid {};
struct Conic {
  QuadraticSpec spec;
};
/// Graph {(x, f(x))} of a polynomial, constant term first.
struct PolyGraph {
  std::vector<std::uint32_t> coeffs;
};
/// {(x, x^2)} union {(x, -x^2)}.
struct SymmetrizedParabola {};
}  // namespace family

using CurveFamily =
    std::variant<family::Sphere, family::Paraboloid, family::Conic, family::PolyGraph, family::SymmetrizedParabola>;

struct CurveHandle {
  CurveFamily family;
  PointSet points;

  std::string descriptor() const;
};

CurveHandle make_sphere(const FieldContext& ctx, std::uint32_t t);
CurveHandle make_paraboloid(const FieldContext& ctx);
/// Throws DegenerateConic if the canonical form is a X^2 + b Y^2 = 0 or a line pair.
CurveHandle make_conic(const FieldContext& ctx, const std::array<std::int64_t, 6>& coefficients);
/// Throws BadDegree unless deg f >= 2 and p does not divide deg f.
CurveHandle make_poly_graph(const FieldContext& ctx, std::span<const std::int64_t> coeffs);
CurveHandle make_symmetrized_parabola(const FieldContext& ctx);

/// Parses "circle:t", "sphere:t", "paraboloid", "conic:A,B,C,D,E,F",
/// "polygraph:c0,c1,...,cn" or "sym-parabola".
CurveHandle make_curve(const FieldContext& ctx, std::string_view descriptor);

}  // namespace ffvc
