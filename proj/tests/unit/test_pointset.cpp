#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "ffvc/curves.hpp"
#include "ffvc/error.hpp"
#include "ffvc/matrix.hpp"
#include "ffvc/pointset.hpp"
#include "oracles.hpp"

using namespace ffvc;

namespace {

std::vector<double> sorted_magnitudes(const PointSet& s) {
  const auto t = fourier_spectrum(s);
  std::vector<double> out;
  for (Index m = 1; m < s.context().size(); ++m) out.push_back(std::abs(t.at(m)));
  std::sort(out.begin(), out.end());
  return out;
}

PointSet parabola_graph(const FieldContext& plane) {
  const std::vector<std::int64_t> c = {0, 0, 1};
  return make_poly_graph(plane, c).points;
}

}  // namespace

TEST(PointSet, ConstructionAndMembership) {
  const FieldContext plane(5, 2);
  const PointSet empty(plane);
  EXPECT_TRUE(empty.empty());
  const auto full = PointSet::full(plane);
  EXPECT_EQ(full.size(), 25U);
  const auto s = PointSet::from_points(plane, {{1, 2}, {3, 4}, {1, 2}});
  EXPECT_EQ(s.size(), 2U);
  EXPECT_TRUE(s.contains(Point{1, 2}));
  EXPECT_FALSE(s.contains(Point{2, 1}));
  EXPECT_EQ(s.bits().count(), s.size());
}

TEST(PointSet, LexMembersOrderFirstCoordinateFirst) {
  const FieldContext plane(5, 2);
  const auto s = PointSet::from_points(plane, {{1, 0}, {0, 1}, {0, 3}});
  const auto lex = s.lex_members();
  ASSERT_EQ(lex.size(), 3U);
  EXPECT_EQ(plane.decode(lex[0]), (Point{0, 1}));
  EXPECT_EQ(plane.decode(lex[1]), (Point{0, 3}));
  EXPECT_EQ(plane.decode(lex[2]), (Point{1, 0}));
}

TEST(SetAlgebra, SymmetryExamples) {
  const FieldContext plane(5, 2);
  EXPECT_TRUE(is_symmetric(make_sphere(plane, 1).points));
  EXPECT_FALSE(is_symmetric(parabola_graph(plane)));
}

TEST(SetAlgebra, TranslateNegateLinearImage) {
  const FieldContext plane(7, 2);
  std::mt19937_64 rng(11);
  const auto s = oracle::random_set(plane, rng, 0.3);
  for (Index v = 0; v < plane.size(); v += 5) {
    const auto t = translate(s, v);
    EXPECT_EQ(t.size(), s.size());
    for (auto x : s.indices()) EXPECT_TRUE(t.contains(plane.add_points(x, v)));
  }
  const auto n = negate(s);
  for (auto x : s.indices()) EXPECT_TRUE(n.contains(plane.neg_point(x)));
  EXPECT_TRUE(negate(n) == s);
  EXPECT_TRUE(is_symmetric(set_union(s, n)));

  const FieldContext line(7);
  const ModMatrix m(plane, 2, {1, 2, 3, 5});
  const auto img = linear_image(s, m);
  EXPECT_EQ(img.size(), s.size());
  for (auto x : s.indices()) {
    const auto y = m.apply(plane.decode(x));
    EXPECT_TRUE(img.contains(y));
  }
  const ModMatrix singular(plane, 2, {1, 2, 2, 4});
  try {
    linear_image(s, singular);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
  const auto a = oracle::random_set(plane, rng, 0.5);
  const auto u = set_union(s, a);
  const auto i = set_intersection(s, a);
  for (Index x = 0; x < plane.size(); ++x) {
    EXPECT_EQ(u.contains(x), s.contains(x) || a.contains(x));
    EXPECT_EQ(i.contains(x), s.contains(x) && a.contains(x));
  }
  EXPECT_THROW(set_union(s, PointSet::full(FieldContext(5, 2))), Error);
}

TEST(Fourier, TrivialSpectra) {
  const FieldContext plane(5, 2);
  const auto empty = fourier_spectrum(PointSet(plane));
  for (auto v : empty.values()) EXPECT_NEAR(std::abs(v), 0.0, 1e-12);
  const auto full = fourier_spectrum(PointSet::full(plane));
  EXPECT_NEAR(std::abs(full.at(0) - Complex(1.0)), 0.0, 1e-12);
  EXPECT_NEAR(full.max_nontrivial(), 0.0, 1e-12);
  const auto circle = make_sphere(plane, 1).points;
  EXPECT_NEAR(std::abs(fourier_spectrum(circle).at(0) - Complex(circle.size() / 25.0)), 0.0, 1e-12);
}

TEST(Fourier, MatchesDirectDoubleSum) {
  std::mt19937_64 rng(5);
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 2}, {7, 2}, {3, 3}, {5, 3}}) {
    const FieldContext ctx(p, d);
    for (int t = 0; t < 5; ++t) {
      const auto s = oracle::random_set(ctx, rng, 0.4);
      const auto direct = oracle::dft(p, d, oracle::indicator(s));
      const auto table = fourier_spectrum(s);
      const double q = ctx.size();
      double best = 0;
      for (Index m = 0; m < ctx.size(); ++m) {
        EXPECT_NEAR(std::abs(table.at(m) - direct[m]) * q, 0.0, 1e-9);
        if (m != 0) best = std::max(best, std::abs(direct[m]));
      }
      EXPECT_NEAR(table.max_nontrivial(), best, 1e-12);
      EXPECT_NEAR(std::abs(table.at(table.argmax_nontrivial())), best, 1e-12);
    }
  }
}

TEST(Fourier, InversionPlancherelOrthogonality) {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {3U, 5U, 7U, 11U}) {
    const FieldContext ctx(p, 2);
    const double q = ctx.size();
    for (int t = 0; t < 20; ++t) {
      const auto s = oracle::random_set(ctx, rng, 0.3);
      const auto table = fourier_spectrum(s);
      const auto back = inverse_fourier_transform(ctx, table.values());
      for (Index x = 0; x < ctx.size(); ++x) EXPECT_NEAR(std::abs(back[x] - Complex(s.contains(x) ? 1.0 : 0.0)), 0.0, 1e-9);
      double energy = 0;
      for (auto v : table.values()) energy += std::norm(v);
      EXPECT_NEAR(energy * q, static_cast<double>(s.size()), 1e-9 * std::max<double>(1.0, s.size()));
    }
    // orthogonality: the transform of chi_m is the delta at m
    for (Index m = 0; m < ctx.size(); m += 3) {
      std::vector<Complex> f(ctx.size());
      for (Index x = 0; x < ctx.size(); ++x) f[x] = ctx.chi(ctx.dot(m, x));
      const auto hat = fourier_transform(ctx, f);
      for (Index k = 0; k < ctx.size(); ++k) EXPECT_NEAR(std::abs(hat[k] - Complex(k == m ? 1.0 : 0.0)), 0.0, 1e-9);
    }
  }
}

TEST(Fourier, MagnitudesInvariantUnderLinearMapsAndTranslations) {
  std::mt19937_64 rng(23);
  const FieldContext plane(7, 2);
  const ModMatrix m(plane, 2, {2, 1, 5, 3});
  ASSERT_NE(m.determinant(), 0U);
  for (int t = 0; t < 10; ++t) {
    const auto s = oracle::random_set(plane, rng, 0.3);
    const auto base = sorted_magnitudes(s);
    const auto lin = sorted_magnitudes(linear_image(s, m));
    const auto tr = sorted_magnitudes(translate(s, static_cast<Index>(rng() % plane.size())));
    for (std::size_t i = 0; i < base.size(); ++i) {
      EXPECT_NEAR(base[i], lin[i], 1e-9);
      EXPECT_NEAR(base[i], tr[i], 1e-9);
    }
  }
}

TEST(Salem, Examples) {
  const FieldContext plane(7, 2);
  EXPECT_TRUE(salem_report(make_sphere(plane, 1).points, {0.0, 2.0}).pass);
  EXPECT_TRUE(salem_report(make_paraboloid(plane).points, {0.0, 2.0}).pass);
  const auto full = salem_report(PointSet::full(plane));
  EXPECT_NEAR(full.max_nontrivial, 0.0, 1e-12);
  EXPECT_TRUE(full.pass);
  try {
    salem_report(PointSet(plane));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySet);
  }
  EXPECT_THROW(salem_report(full.pass ? PointSet::full(plane) : PointSet(plane), {-1.0, 2.0}), Error);
}

TEST(Salem, BoundFormula) {
  const FieldContext plane(11, 2);
  const double expected = 2.0 * std::pow(11.0, -2) * std::pow(std::log(11.0), 1.5) * std::sqrt(12.0);
  EXPECT_NEAR(salem_bound(plane, 12, {1.5, 2.0}), expected, 1e-15);
  const auto r = salem_report(make_sphere(plane, 1).points, {0.0, 2.0});
  EXPECT_NEAR(r.ratio, r.max_nontrivial / r.bound, 1e-12);
  EXPECT_EQ(r.pass, r.max_nontrivial <= r.bound);
}

TEST(PointSetIo, RoundTrip) {
  const FieldContext plane(7, 2);
  const auto s = make_sphere(plane, 2).points;
  std::stringstream buf;
  write_pointset(buf, s);
  const auto back = read_pointset(buf);
  EXPECT_TRUE(back == s);
}

TEST(PointSetIo, CommentsBlankLinesAndErrors) {
  std::istringstream ok("# header comment\n5 2\n\n1 2\n# skip\n3 4\n");
  const auto s = read_pointset(ok);
  EXPECT_EQ(s.size(), 2U);
  EXPECT_TRUE(s.contains(Point{3, 4}));

  auto parse_error_mentions = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      read_pointset(in);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  parse_error_mentions("5 2\n1 2\n1 2\n", "line 3");
  parse_error_mentions("5 2\n1 5\n", "line 2");
  parse_error_mentions("5 2\n1\n", "line 2");
  parse_error_mentions("4 2\n", "line 1");
  parse_error_mentions("", "header");
}
