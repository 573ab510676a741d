#include <gtest/gtest.h>

#include <random>

#include "ffvc/analysis.hpp"
#include "ffvc/curves.hpp"
#include "ffvc/error.hpp"
#include "oracles.hpp"

using namespace ffvc;

namespace {

template <class Fn>
void expect_error(ErrorCode code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

// Image of the zero set under the returned affine map, compared with the
// canonical zero set point for point.
void expect_transform_matches(const QuadraticSpec& spec) {
  const FieldContext plane(spec.field().p(), 2);
  const auto form = reduce_quadratic(spec);
  EXPECT_NE(form.linear_matrix().determinant(), 0U);
  const auto zeros = zero_set(spec, plane);
  const auto canon = canonical_zero_set(form, plane);
  ASSERT_EQ(zeros.size(), canon.size());
  for (auto x : zeros.indices()) {
    const auto pt = plane.decode(x);
    const auto z = form.apply(pt[0], pt[1]);
    EXPECT_TRUE(canon.contains(Point{z[0], z[1]}));
  }
  EXPECT_EQ(form.kind == CanonicalKind::Parabola, spec.det2() == 0);
  if (form.kind == CanonicalKind::Diagonal) {
    const auto& f = spec.field();
    for (std::uint32_t x = 0; x < f.p(); ++x) {
      for (std::uint32_t y = 0; y < f.p(); ++y) {
        const auto z = form.apply(x, y);
        const auto rhs = f.add(f.add(f.mul(form.a, f.mul(z[0], z[0])), f.mul(form.b, f.mul(z[1], z[1]))), form.c);
        EXPECT_EQ(spec.evaluate(x, y), rhs);
      }
    }
  }
}

}  // namespace

TEST(QuadraticSpec, RejectsSingleVariableAndLinear) {
  const FieldContext f(7);
  expect_error(ErrorCode::NotQuadratic, [&] { QuadraticSpec(f, {1, 0, 0, 0, 0, -1}); });
  expect_error(ErrorCode::NotQuadratic, [&] { QuadraticSpec(f, {0, 0, 1, 0, 3, 2}); });
  expect_error(ErrorCode::NotQuadratic, [&] { QuadraticSpec(f, {0, 0, 0, 1, 1, 0}); });
  expect_error(ErrorCode::NotQuadratic, [&] { QuadraticSpec(f, {7, 0, 0, 0, 0, -1}); });
  EXPECT_NO_THROW(QuadraticSpec(f, {1, 0, 0, 0, 1, 0}));
}

TEST(Classify, Examples) {
  const FieldContext f(7);
  const QuadraticSpec circle(f, {1, 0, 1, 0, 0, -1});
  EXPECT_EQ(circle.det3(), f.reduce(-1));
  EXPECT_EQ(circle.det2(), 1U);
  const auto c = classify_quadratic(circle);
  EXPECT_TRUE(c.smooth);
  EXPECT_FALSE(c.degenerate_quadratic_part);

  const QuadraticSpec parabola(f, {-1, 0, 0, 0, 1, 0});
  EXPECT_EQ(parabola.det2(), 0U);
  EXPECT_EQ(parabola.det3(), f.inv(4));
  const auto p = classify_quadratic(parabola);
  EXPECT_TRUE(p.smooth);
  EXPECT_TRUE(p.degenerate_quadratic_part);

  const QuadraticSpec lines(f, {1, 0, -1, 0, 0, 0});
  EXPECT_FALSE(classify_quadratic(lines).smooth);
}

TEST(Reduce, AlreadyCanonicalCircle) {
  const FieldContext f(11);
  const QuadraticSpec circle(f, {1, 0, 1, 0, 0, -1});
  const auto form = reduce_quadratic(circle);
  EXPECT_EQ(form.kind, CanonicalKind::Diagonal);
  EXPECT_EQ(form.a, 1U);
  EXPECT_EQ(form.b, 1U);
  EXPECT_EQ(form.c, 10U);
  EXPECT_TRUE(form.linear_matrix() == ModMatrix::identity(f, 2));
  EXPECT_EQ(form.offset[0], 0U);
  EXPECT_EQ(form.offset[1], 0U);
  expect_transform_matches(circle);
}

TEST(Reduce, ParabolaByTranslation) {
  const FieldContext f(11);
  const QuadraticSpec spec(f, {-1, 0, 0, -3, 1, 0});  // y - x^2 - 3x
  const auto form = reduce_quadratic(spec);
  EXPECT_EQ(form.kind, CanonicalKind::Parabola);
  expect_transform_matches(spec);
}

TEST(Reduce, MixedTermDiagonalizedByCongruence) {
  const FieldContext f(11);
  const QuadraticSpec spec(f, {2, 2, 3, 0, 0, -1});
  const auto form = reduce_quadratic(spec);
  EXPECT_EQ(form.kind, CanonicalKind::Diagonal);
  expect_transform_matches(spec);
}

TEST(Reduce, EveryCoefficientPatternOverSmallFields) {
  for (std::uint32_t p : {3U, 5U, 7U}) {
    const FieldContext f(p);
    std::size_t checked = 0;
    std::array<std::int64_t, 6> c{};
    // all coefficient vectors for p = 3, a strided sample otherwise
    const std::uint64_t total = static_cast<std::uint64_t>(std::pow(p, 6));
    const std::uint64_t stride = p == 3 ? 1 : 37;
    for (std::uint64_t code = 0; code < total; code += stride) {
      std::uint64_t r = code;
      for (auto& v : c) {
        v = static_cast<std::int64_t>(r % p);
        r /= p;
      }
      std::optional<QuadraticSpec> spec;
      try {
        spec.emplace(f, c);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotQuadratic);
        continue;
      }
      try {
        expect_transform_matches(*spec);
        ++checked;
      } catch (const Error& e) {
        // only a line pair with no surviving linear term may fail to reduce
        EXPECT_EQ(e.code(), ErrorCode::DegenerateConic);
        EXPECT_EQ(spec->det2(), 0U);
      }
    }
    EXPECT_GT(checked, 0U);
  }
}

TEST(Conics, PointCountsOfSmoothNondegenerateConics) {
  std::mt19937_64 rng(41);
  for (std::uint32_t p : {5U, 7U, 11U, 13U}) {
    const FieldContext f(p);
    const FieldContext plane(p, 2);
    std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
    int found = 0;
    while (found < 100) {
      std::array<std::int64_t, 6> c{};
      for (auto& v : c) v = coef(rng);
      std::optional<QuadraticSpec> spec;
      try {
        spec.emplace(f, c);
      } catch (const Error&) {
        continue;
      }
      const auto cls = classify_quadratic(*spec);
      if (!cls.smooth || cls.degenerate_quadratic_part) continue;
      ++found;
      const auto z = zero_set(*spec, plane);
      EXPECT_GE(z.size() + 1, p);
      EXPECT_LE(z.size(), p + 1);
      const double q = p;
      EXPECT_LE(fourier_spectrum(z).max_nontrivial(), 2.0 * std::pow(q, -1.5) + 1e-9);
      EXPECT_TRUE(salem_report(z, {0.0, 2.0}).pass);
      // brute-force count
      std::size_t n = 0;
      for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t y = 0; y < p; ++y) {
          const std::int64_t v = c[0] * x * x + c[1] * x * y + c[2] * y * y + c[3] * x + c[4] * y + c[5];
          n += ((v % p) + p) % p == 0 ? 1 : 0;
        }
      }
      EXPECT_EQ(z.size(), n);
    }
  }
}

TEST(Curves, Examples) {
  const FieldContext p5(5, 2);
  EXPECT_EQ(make_sphere(p5, 1).points.size(), 4U);
  const FieldContext p7(7, 2);
  const std::vector<std::int64_t> cube = {0, 0, 0, 1};
  const auto g = make_poly_graph(p7, cube);
  EXPECT_EQ(g.points.size(), 7U);
  const FieldContext p11(11, 2);
  const auto sym = make_symmetrized_parabola(p11);
  EXPECT_EQ(sym.points.size(), 21U);
}

TEST(Curves, FamilyInvariants) {
  for (std::uint32_t p : {3U, 5U, 7U, 11U}) {
    const FieldContext plane(p, 2);
    const FieldContext space(p, 3);
    for (std::uint32_t t = 0; t < p; ++t) {
      for (const auto* ctx : {&plane, &space}) {
        const auto s = make_sphere(*ctx, t).points;
        std::size_t n = 0;
        for (Index x = 0; x < ctx->size(); ++x) {
          const auto c = oracle::coords(p, ctx->d(), x);
          std::int64_t norm = 0;
          for (auto v : c) norm += v * v;
          const bool on = norm % p == t;
          EXPECT_EQ(s.contains(x), on);
          n += on;
        }
        EXPECT_EQ(s.size(), n);
      }
    }
    const auto par = make_paraboloid(space).points;
    EXPECT_EQ(par.size(), static_cast<std::size_t>(p * p));
    for (auto x : par.indices()) {
      const auto c = space.decode(x);
      EXPECT_EQ(c[2], (c[0] * c[0] + c[1] * c[1]) % p);
    }
    const auto sym = make_symmetrized_parabola(plane).points;
    const std::vector<std::int64_t> sq = {0, 0, 1};
    const std::vector<std::int64_t> neg_sq = {0, 0, -1};
    EXPECT_TRUE(sym == set_union(make_poly_graph(plane, sq).points, make_poly_graph(plane, neg_sq).points));
    EXPECT_TRUE(is_symmetric(sym));
  }
}

TEST(Curves, Errors) {
  const FieldContext plane(5, 2);
  const std::vector<std::int64_t> linear = {1, 1};
  const std::vector<std::int64_t> deg5 = {0, 0, 0, 0, 0, 1};
  expect_error(ErrorCode::BadDegree, [&] { make_poly_graph(plane, linear); });
  expect_error(ErrorCode::BadDegree, [&] { make_poly_graph(plane, deg5); });
  expect_error(ErrorCode::DegenerateConic, [&] { make_conic(plane, {1, 0, 1, 0, 0, 0}); });   // x^2 + y^2 = 0
  expect_error(ErrorCode::DegenerateConic, [&] { make_conic(plane, {1, 2, 1, 0, 0, -1}); });  // (x + y)^2 = 1
  expect_error(ErrorCode::NotQuadratic, [&] { make_conic(plane, {1, 0, 0, 0, 0, -1}); });
  expect_error(ErrorCode::InvalidArgument, [&] { make_conic(FieldContext(5, 3), {1, 0, 1, 0, 0, -1}); });
  expect_error(ErrorCode::InvalidArgument, [&] { make_paraboloid(FieldContext(5, 1)); });
  expect_error(ErrorCode::InvalidArgument, [&] { make_symmetrized_parabola(FieldContext(5, 3)); });
}

TEST(Curves, DescriptorParsing) {
  const FieldContext plane(7, 2);
  EXPECT_TRUE(make_curve(plane, "circle:1").points == make_sphere(plane, 1).points);
  EXPECT_TRUE(make_curve(plane, "sphere:3").points == make_sphere(plane, 3).points);
  EXPECT_TRUE(make_curve(plane, "paraboloid").points == make_paraboloid(plane).points);
  EXPECT_TRUE(make_curve(plane, "sym-parabola").points == make_symmetrized_parabola(plane).points);
  EXPECT_EQ(make_curve(plane, "conic:1,0,1,0,0,-1").points.size(), make_sphere(plane, 1).points.size());
  EXPECT_EQ(make_curve(plane, "polygraph:0,0,0,1").points.size(), 7U);
  for (const char* bad : {"circle", "ellipse:1", "conic:1,2,3", "polygraph:", "circle:x", "polygraph:1,,2"}) {
    expect_error(ErrorCode::ParseError, [&] { make_curve(plane, bad); });
  }
  EXPECT_EQ(make_curve(plane, "circle:2").descriptor(), "circle:2");
}

TEST(PolyGraph, FourierDecayAndIntersections) {
  std::mt19937_64 rng(9);
  for (std::uint32_t p : {5U, 7U, 11U, 13U}) {
    const FieldContext plane(p, 2);
    std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
    std::uniform_int_distribution<std::int64_t> lead(1, p - 1);
    for (std::size_t n : {2U, 3U, 4U}) {
      if (n % p == 0) continue;
      for (int t = 0; t < 5; ++t) {
        std::vector<std::int64_t> c(n + 1);
        for (auto& v : c) v = coef(rng);
        c[n] = lead(rng);
        const auto g = make_poly_graph(plane, c).points;
        const double q = p;
        EXPECT_LE(fourier_spectrum(g).max_nontrivial(), (static_cast<double>(n) - 1) * std::pow(q, -1.5) * (1 + 1e-6));
        EXPECT_LE(intersection_profile(g).max_size, n - 1);
      }
    }
  }
}
