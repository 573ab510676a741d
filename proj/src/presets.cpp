#include "ffvc/presets.hpp"

#include <cmath>

#include "ffvc/error.hpp"
#include "ffvc/rng.hpp"

namespace ffvc {

namespace {

Index encode_xy(const FieldContext& plane, const std::array<std::uint32_t, 2>& xy) {
  return plane.encode(std::span<const std::uint32_t>(xy.data(), 2));
}

unsigned pattern(const FieldContext& plane, const PointSet& shape, const std::vector<Index>& xs, Index y) {
  unsigned mask = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (shape.contains(plane.sub_points(xs[i], y))) mask |= 1U << i;
  }
  return mask;
}

}  // namespace

std::vector<std::array<std::uint32_t, 2>> published_x_tuple(std::uint32_t p) {
  switch (p) {
    case 11: return {{0, 0}, {1, 2}, {2, 8}, {7, 4}};
    case 17: return {{0, 0}, {0, 1}, {1, 8}, {12, 13}};
    case 23: return {{0, 0}, {1, 2}, {10, 17}, {13, 6}};
    case 29: return {{0, 0}, {0, 2}, {8, 7}, {11, 2}};
    default: throw Error(ErrorCode::InvalidArgument, "no published x-tuple for p = " + std::to_string(p));
  }
}

std::vector<std::pair<unsigned, std::array<std::uint32_t, 2>>> published_f11_centers() {
  return {
      {0b0001, {0, 0}},  {0b0010, {0, 3}},  {0b0100, {0, 4}},  {0b1000, {0, 9}},  {0b0011, {9, 4}},
      {0b0101, {10, 10}}, {0b1001, {1, 1}}, {0b0110, {0, 1}},  {0b1010, {2, 1}},  {0b1100, {1, 7}},
      {0b0111, {7, 5}},  {0b1011, {5, 8}},  {0b1101, {6, 3}},  {0b1110, {10, 6}}, {0b1111, {3, 9}},
  };
}

PresetResult reproduce_f11_table() {
  const FieldContext plane(11, 2);
  const auto shape = make_symmetrized_parabola(plane).points;
  std::vector<Index> xs;
  for (const auto& xy : published_x_tuple(11)) xs.push_back(encode_xy(plane, xy));

  PresetResult out;
  ShatterWitness w{xs, std::vector<Index>(16, 0)};
  Json checks = Json::array();
  bool all = true;
  for (const auto& [mask, xy] : published_f11_centers()) {
    const Index y = encode_xy(plane, xy);
    const unsigned got = pattern(plane, shape, xs, y);
    checks.push_back({{"subset", mask}, {"center", point_json(plane, y)}, {"pattern", got}, {"ok", got == mask}});
    all = all && got == mask;
    w.witnesses[mask] = y;
  }
  std::optional<Index> empty_center;
  for (Index r = 0; r < plane.size() && !empty_center; ++r) {
    const Index y = plane.from_lex_rank(r);
    if (pattern(plane, shape, xs, y) == 0) empty_center = y;
  }
  if (empty_center) w.witnesses[0] = *empty_center;
  const auto problem = ShatterProblem::over(shape, PointSet::full(plane), 4);
  const bool verified = all && empty_center && verify_witness(problem, w);
  out.pass = verified;
  out.detail = {{"p", 11}, {"published_centers", checks}, {"verified", verified}, {"witness", to_json(plane, w)}};
  return out;
}

PresetResult reproduce_x_tuple(std::uint32_t p) {
  const FieldContext plane(p, 2);
  const auto shape = make_symmetrized_parabola(plane).points;
  std::vector<Index> xs;
  for (const auto& xy : published_x_tuple(p)) xs.push_back(encode_xy(plane, xy));
  const auto problem = ShatterProblem::over(shape, PointSet::full(plane), 4);
  const auto w = witness_for_tuple(problem, xs);
  PresetResult out;
  out.pass = w && verify_witness(problem, *w);
  out.detail = {{"p", p}, {"verified", out.pass}};
  out.detail["witness"] = w ? to_json(plane, *w) : Json(nullptr);
  return out;
}

PresetResult conic_census(std::uint32_t p, std::uint64_t count, std::uint64_t seed) {
  const FieldContext line(p);
  const FieldContext plane(p, 2);
  SplitMix64 rng(seed);
  const double q = p;
  const double decay = 2.0 * std::pow(q, -1.5) + 1e-9;
  PresetResult out;
  out.pass = true;
  Json conics = Json::array();
  std::uint64_t drawn = 0;
  while (conics.size() < count) {
    ++drawn;
    std::array<std::int64_t, 6> c{};
    for (auto& v : c) v = static_cast<std::int64_t>(rng.below(p));
    std::optional<QuadraticSpec> spec;
    try {
      spec.emplace(line, c);
    } catch (const Error&) {
      continue;
    }
    const auto cls = classify_quadratic(*spec);
    if (!cls.smooth || cls.degenerate_quadratic_part) continue;
    const auto points = zero_set(*spec, plane);
    const auto n = points.size();
    const bool count_ok = n + 1 >= p && n <= p + 1;
    const double fourier = fourier_spectrum(points).max_nontrivial();
    const auto inter = intersection_profile(points).max_size;
    const bool ok = count_ok && fourier <= decay && inter <= 2;
    out.pass = out.pass && ok;
    conics.push_back({{"coefficients", c},
                      {"points", n},
                      {"max_nontrivial", round_sig(fourier)},
                      {"max_intersection", inter},
                      {"ok", ok}});
  }
  out.detail = {{"p", p}, {"seed", seed}, {"drawn", drawn}, {"decay_bound", round_sig(decay)}, {"conics", conics}};
  return out;
}

PresetResult weil_suite(std::uint32_t p, std::uint64_t polys, std::uint64_t seed) {
  const FieldContext ctx(p);
  const double sq = std::sqrt(static_cast<double>(p));
  PresetResult out;
  out.pass = true;

  double gauss_dev = 0.0;
  for (std::uint32_t k = 1; k < p; ++k) {
    const Complex g = gauss_sum(ctx, k);
    const Complex expected = ctx.epsilon() * static_cast<double>(legendre(ctx, k)) * sq;
    gauss_dev = std::max({gauss_dev, std::abs(std::abs(g) - sq), std::abs(g - expected)});
  }
  const bool gauss_ok = gauss_dev <= 1e-9;

  double kloost_max = 0.0;
  for (std::uint32_t a = 1; a < p; ++a) {
    for (std::uint32_t b = 1; b < p; ++b) kloost_max = std::max(kloost_max, std::abs(kloosterman(ctx, a, b)));
  }
  const bool kloost_ok = kloost_max <= 2.0 * sq + 1e-9;

  SplitMix64 rng(seed);
  Json weil = Json::array();
  bool weil_ok = true;
  for (std::size_t n : {3U, 4U}) {
    if (n % p == 0) continue;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < polys; ++i) {
      std::vector<std::int64_t> f(n + 1);
      for (auto& c : f) c = static_cast<std::int64_t>(rng.below(p));
      f[n] = static_cast<std::int64_t>(1 + rng.below(p - 1));
      worst = std::max(worst, std::abs(weil_poly_sum(ctx, f)) / ((static_cast<double>(n) - 1) * sq));
    }
    const bool ok = worst <= 1.0 + 1e-9;
    weil_ok = weil_ok && ok;
    weil.push_back({{"degree", n}, {"polynomials", polys}, {"max_ratio", round_sig(worst)}, {"ok", ok}});
  }

  out.pass = gauss_ok && kloost_ok && weil_ok;
  out.detail = {{"p", p},
                {"seed", seed},
                {"epsilon", complex_json(ctx.epsilon())},
                {"gauss", {{"max_deviation", round_sig(gauss_dev)}, {"ok", gauss_ok}}},
                {"kloosterman", {{"max_abs", round_sig(kloost_max)}, {"bound", round_sig(2.0 * sq)}, {"ok", kloost_ok}}},
                {"weil", weil}};
  return out;
}

}  // namespace ffvc
