#pragma once

// Exact incidence counting for the directed graph x ~ y iff x - y in S, with
// Fourier-side cross-checks, plus the rhombus and cube constructions used to
// build 3-shattering configurations.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ffvc/field.hpp"
#include "ffvc/pointset.hpp"

namespace ffvc {

/// Distance set {||x - y|| : x, y in E} with ||z|| = z_1^2 + ... + z_d^2, sorted.
/// Throws EmptySet for E empty.
std::vector<std::uint32_t> distance_set(const PointSet& e);

/// E*S(x) = |{y in E : x - y in S}| for every x.
class ConvolutionTable {
 public:
  ConvolutionTable(FieldContext ctx, std::vector<std::uint32_t> values)
      : ctx_(std::move(ctx)), values_(std::move(values)) {}

  const FieldContext& context() const noexcept { return ctx_; }
  std::uint32_t at(Index x) const noexcept { return values_[x]; }
  const std::vector<std::uint32_t>& values() const noexcept { return values_; }

 private:
  FieldContext ctx_;
  std::vector<std::uint32_t> values_;
};

ConvolutionTable convolve(const PointSet& e, const PointSet& s);

struct EdgeCountReport {
  std::uint64_t nu = 0;         ///< |{(x, y) in E^2 : x - y in S}|
  double K = 0.0;               ///< |S| / q^{d-1}
  double main_term = 0.0;       ///< K |E|^2 / q
  double error = 0.0;           ///< nu - main_term
  double normalized_error = 0.0;  ///< |error| / (q^{(d-1)/2} (log q)^gamma |E|)
  double fourier_nu = 0.0;      ///< q^{2d} sum_m conj(E^(m)) E^(m) S^(m)
};

/// Throws EmptySet for S empty.
EdgeCountReport edge_count(const PointSet& e, const PointSet& s, double gamma = 0.0);

/// sum_{x in E} (E*S(x))^2: tuples (x, y1, y2) in E^3 with x - y1, x - y2 in S.
std::uint64_t triple_count(const PointSet& e, const PointSet& s);

/// A nonnegative real function on F_p^d.
class WeightTable {
 public:
  /// Throws InvalidArgument on negative or non-finite entries.
  WeightTable(FieldContext ctx, std::vector<double> values);
  static WeightTable indicator(const PointSet& s);

  const FieldContext& context() const noexcept { return ctx_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double l1() const noexcept;
  double l2() const noexcept;

 private:
  FieldContext ctx_;
  std::vector<double> values_;
};

struct BilinearReport {
  double value = 0.0;          ///< sum_{x,y} f(x) g(y) S(x - y), direct
  double fourier_value = 0.0;  ///< q^{2d} sum_m conj(f^(m)) g^(m) S^(m)
  double main_term = 0.0;      ///< (K / q) ||f||_1 ||g||_1
  double error = 0.0;          ///< |value - main_term|
  double bound = 0.0;          ///< q^{(d-1)/2} (log q)^gamma ||f||_2 ||g||_2
};

BilinearReport bilinear_form(const WeightTable& f, const WeightTable& g, const PointSet& s, double gamma = 0.0);

struct IntersectionProfile {
  /// intersection size -> number of nonzero shifts v attaining it
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t max_size = 0;
  /// Lexicographically least nonzero shift attaining max_size.
  Index argmax = 0;
  std::uint64_t at_zero = 0;
  /// log_p(max_size); absent when max_size = 0.
  std::optional<double> beta;
};

/// Exact |S cap (S - v)| for every v != 0. Throws EmptySet for S empty.
IntersectionProfile intersection_profile(const PointSet& s);

/// E_M = {x in E : E*S(x) > M}.
PointSet prune(const PointSet& e, const PointSet& s, std::uint64_t threshold);

/// x1 - x2 = x3 - x4 = u in S and x1 - x3 = x2 - x4 = w in S, four distinct
/// points, no pairwise difference equal to +-v.
struct RhombusWitness {
  std::array<Index, 4> x{};
  Index u = 0;
  Index w = 0;
};

/// Rhombus x1..x4 together with x1 + v, x2 + v, x3 + v: the cube graph Q3 with
/// the vertex x4 + v removed.
struct CubeWitness {
  RhombusWitness rhombus;
  Index v = 0;
  std::array<Index, 3> lifted{};

  /// The seven vertices: x1, x2, x3, x4, x1 + v, x2 + v, x3 + v.
  std::array<Index, 7> vertices() const noexcept {
    return {rhombus.x[0], rhombus.x[1], rhombus.x[2], rhombus.x[3], lifted[0], lifted[1], lifted[2]};
  }
};

/// Pigeonhole step: u in S \ excluded, u != 0, maximizing |E cap (E - u)|,
/// ties broken lexicographically. Returns all candidates in that order.
std::vector<Index> ranked_shifts(const PointSet& e, const PointSet& s, const std::vector<Index>& excluded);

/// Throws NotSymmetric unless S = -S, InvalidArgument for v = 0.
std::optional<RhombusWitness> find_rhombus(const PointSet& e, const PointSet& s, Index v);
/// Throws NotSymmetric unless S = -S.
std::optional<CubeWitness> build_cube(const PointSet& e, const PointSet& s);

/// Visits every cube reachable by the pigeonhole ranking of v, then of u,
/// then the lexicographic pair scan, until the visitor returns true.
/// Returns the number of cubes visited.
std::uint64_t for_each_cube(const PointSet& e, const PointSet& s, const std::function<bool(const CubeWitness&)>& visit);

bool verify_rhombus(const PointSet& e, const PointSet& s, Index v, const RhombusWitness& r);
bool verify_cube(const PointSet& e, const PointSet& s, const CubeWitness& c);

}  // namespace ffvc
