#include "ffvc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ffvc/error.hpp"
#include "ffvc/parallel.hpp"

namespace ffvc {

namespace {

void require_same_context(const PointSet& a, const PointSet& b) {
  if (!(a.context() == b.context())) {
    throw Error(ErrorCode::ContextMismatch, "point sets live in different groups");
  }
}

void require_symmetric(const PointSet& s) {
  if (!is_symmetric(s)) throw Error(ErrorCode::NotSymmetric, "construction requires S = -S");
}

double log_factor(const FieldContext& ctx, double gamma) {
  return gamma == 0.0 ? 1.0 : std::pow(std::log(static_cast<double>(ctx.p())), gamma);
}

// {x in E : x + u in E}.
PointSet shifted_overlap(const PointSet& e, Index u) {
  const auto& ctx = e.context();
  return PointSet::from_predicate(ctx, [&](Index x) { return e.contains(x) && e.contains(ctx.add_points(x, u)); });
}

std::uint64_t overlap_size(const PointSet& e, const std::vector<Index>& e_members, Index u) {
  const auto& ctx = e.context();
  std::uint64_t count = 0;
  for (auto x : e_members) count += e.contains(ctx.add_points(x, u)) ? 1 : 0;
  return count;
}

double fourier_pairing(const FieldContext& ctx, std::span<const Complex> f_hat, std::span<const Complex> g_hat,
                       const SpectrumTable& s_hat) {
  Complex acc = 0.0;
  for (Index m = 0; m < ctx.size(); ++m) acc += std::conj(f_hat[m]) * g_hat[m] * s_hat.at(m);
  const double q_d = static_cast<double>(ctx.size());
  return (acc * q_d * q_d).real();
}

// Walks the rhombi of E for shift v with pigeonhole vector `side`; calls
// visit(rhombus) in scan order until it returns true.
bool scan_rhombi(const PointSet& e, const PointSet& s, Index v, Index side,
                 const std::function<bool(const RhombusWitness&)>& visit) {
  const auto& ctx = e.context();
  const PointSet e_side = shifted_overlap(e, side);
  if (e_side.empty()) return false;

  const Index neg_side = ctx.neg_point(side);
  const Index neg_v = ctx.neg_point(v);
  const std::array<Index, 9> excluded{0,
                                      side,
                                      neg_side,
                                      v,
                                      neg_v,
                                      ctx.add_points(side, v),
                                      ctx.add_points(side, neg_v),
                                      ctx.add_points(neg_side, v),
                                      ctx.add_points(neg_side, neg_v)};
  std::vector<Index> allowed;
  for (auto a : s.indices()) {
    if (std::find(excluded.begin(), excluded.end(), a) == excluded.end()) allowed.push_back(a);
  }
  if (allowed.empty()) return false;

  std::vector<Index> partners;
  for (auto y : e_side.lex_members()) {
    partners.clear();
    for (auto a : allowed) {
      const Index x = ctx.add_points(y, a);
      if (e_side.contains(x)) partners.push_back(x);
    }
    std::sort(partners.begin(), partners.end(), [&](Index l, Index r) { return ctx.lex_rank(l) < ctx.lex_rank(r); });
    for (auto x : partners) {
      RhombusWitness r;
      r.x = {ctx.add_points(x, side), ctx.add_points(y, side), x, y};
      r.u = ctx.sub_points(x, y);
      r.w = side;
      if (visit(r)) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::uint32_t> distance_set(const PointSet& e) {
  if (e.empty()) throw Error(ErrorCode::EmptySet, "distance set of an empty set");
  const auto& ctx = e.context();
  const auto members = e.indices();
  std::vector<bool> seen(ctx.p(), false);
  for (auto x : members) {
    for (auto y : members) {
      const Index diff = ctx.sub_points(x, y);
      std::uint32_t norm = 0;
      for (std::uint32_t axis = 0; axis < ctx.d(); ++axis) {
        const auto c = ctx.coord(diff, axis);
        norm = ctx.add(norm, ctx.mul(c, c));
      }
      seen[norm] = true;
    }
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < ctx.p(); ++t) {
    if (seen[t]) out.push_back(t);
  }
  return out;
}

ConvolutionTable convolve(const PointSet& e, const PointSet& s) {
  require_same_context(e, s);
  const auto& ctx = e.context();
  std::vector<std::uint32_t> table(ctx.size(), 0);
  const auto s_members = s.indices();
  for (auto y : e.indices()) {
    for (auto d : s_members) ++table[ctx.add_points(y, d)];
  }
  return ConvolutionTable(ctx, std::move(table));
}

EdgeCountReport edge_count(const PointSet& e, const PointSet& s, double gamma) {
  require_same_context(e, s);
  if (s.empty()) throw Error(ErrorCode::EmptySet, "edge count needs a nonempty S");
  if (gamma < 0.0) throw Error(ErrorCode::InvalidArgument, "gamma must be nonnegative");
  const auto& ctx = e.context();
  const auto conv = convolve(e, s);

  EdgeCountReport r;
  for (auto x : e.indices()) r.nu += conv.at(x);

  const double q = ctx.p();
  const double d = ctx.d();
  const double e_size = static_cast<double>(e.size());
  r.K = static_cast<double>(s.size()) / std::pow(q, d - 1.0);
  r.main_term = r.K * e_size * e_size / q;
  r.error = static_cast<double>(r.nu) - r.main_term;
  const double scale = std::pow(q, (d - 1.0) / 2.0) * log_factor(ctx, gamma) * e_size;
  r.normalized_error = e_size == 0.0 ? 0.0 : std::abs(r.error) / scale;

  const auto e_hat = fourier_spectrum(e);
  const auto s_hat = fourier_spectrum(s);
  r.fourier_nu = fourier_pairing(ctx, e_hat.values(), e_hat.values(), s_hat);
  return r;
}

std::uint64_t triple_count(const PointSet& e, const PointSet& s) {
  const auto conv = convolve(e, s);
  std::uint64_t total = 0;
  for (auto x : e.indices()) total += std::uint64_t{conv.at(x)} * conv.at(x);
  return total;
}

WeightTable::WeightTable(FieldContext ctx, std::vector<double> values)
    : ctx_(std::move(ctx)), values_(std::move(values)) {
  if (values_.size() != ctx_.size()) throw Error(ErrorCode::DimensionMismatch, "weight table has wrong length");
  for (auto v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "weights must be finite and >= 0");
  }
}

WeightTable WeightTable::indicator(const PointSet& s) {
  std::vector<double> values(s.context().size(), 0.0);
  for (auto x : s.indices()) values[x] = 1.0;
  return WeightTable(s.context(), std::move(values));
}

double WeightTable::l1() const noexcept {
  double sum = 0.0;
  for (auto v : values_) sum += v;
  return sum;
}

double WeightTable::l2() const noexcept {
  double sum = 0.0;
  for (auto v : values_) sum += v * v;
  return std::sqrt(sum);
}

BilinearReport bilinear_form(const WeightTable& f, const WeightTable& g, const PointSet& s, double gamma) {
  if (!(f.context() == s.context()) || !(g.context() == s.context())) {
    throw Error(ErrorCode::ContextMismatch, "weight tables and S live in different groups");
  }
  if (gamma < 0.0) throw Error(ErrorCode::InvalidArgument, "gamma must be nonnegative");
  const auto& ctx = s.context();
  const auto s_members = s.indices();

  BilinearReport r;
  for (Index x = 0; x < ctx.size(); ++x) {
    const double fx = f.values()[x];
    if (fx == 0.0) continue;
    double inner = 0.0;
    for (auto d : s_members) inner += g.values()[ctx.sub_points(x, d)];
    r.value += fx * inner;
  }

  std::vector<Complex> fc(f.values().begin(), f.values().end());
  std::vector<Complex> gc(g.values().begin(), g.values().end());
  const auto f_hat = fourier_transform(ctx, fc);
  const auto g_hat = fourier_transform(ctx, gc);
  r.fourier_value = fourier_pairing(ctx, f_hat, g_hat, fourier_spectrum(s));

  const double q = ctx.p();
  const double d = ctx.d();
  const double K = static_cast<double>(s.size()) / std::pow(q, d - 1.0);
  r.main_term = K / q * f.l1() * g.l1();
  r.error = std::abs(r.value - r.main_term);
  r.bound = std::pow(q, (d - 1.0) / 2.0) * log_factor(ctx, gamma) * f.l2() * g.l2();
  return r;
}

IntersectionProfile intersection_profile(const PointSet& s) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "intersection profile of an empty set");
  const auto& ctx = s.context();
  const auto members = s.indices();
  std::vector<std::uint64_t> counts(ctx.size(), 0);
  parallel_for(ctx.size(), [&](std::size_t v) {
    if (v == 0) return;
    std::uint64_t c = 0;
    for (auto x : members) c += s.contains(ctx.add_points(x, static_cast<Index>(v))) ? 1 : 0;
    counts[v] = c;
  });

  IntersectionProfile profile;
  profile.at_zero = s.size();
  bool have_max = false;
  Index best_rank = 0;
  for (Index v = 1; v < ctx.size(); ++v) {
    ++profile.histogram[counts[v]];
    const Index rank = ctx.lex_rank(v);
    if (!have_max || counts[v] > profile.max_size || (counts[v] == profile.max_size && rank < best_rank)) {
      have_max = true;
      profile.max_size = counts[v];
      profile.argmax = v;
      best_rank = rank;
    }
  }
  if (profile.max_size > 0) {
    profile.beta = std::log(static_cast<double>(profile.max_size)) / std::log(static_cast<double>(ctx.p()));
  }
  return profile;
}

PointSet prune(const PointSet& e, const PointSet& s, std::uint64_t threshold) {
  const auto conv = convolve(e, s);
  return PointSet::from_predicate(e.context(), [&](Index x) { return e.contains(x) && conv.at(x) > threshold; });
}

std::vector<Index> ranked_shifts(const PointSet& e, const PointSet& s, const std::vector<Index>& excluded) {
  require_same_context(e, s);
  const auto& ctx = e.context();
  const auto e_members = e.indices();
  struct Candidate {
    std::uint64_t overlap;
    Index rank;
    Index u;
  };
  std::vector<Candidate> candidates;
  for (auto u : s.indices()) {
    if (u == 0 || std::find(excluded.begin(), excluded.end(), u) != excluded.end()) continue;
    candidates.push_back({overlap_size(e, e_members, u), ctx.lex_rank(u), u});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.overlap != b.overlap ? a.overlap > b.overlap : a.rank < b.rank;
  });
  std::vector<Index> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(c.u);
  return out;
}

std::optional<RhombusWitness> find_rhombus(const PointSet& e, const PointSet& s, Index v) {
  require_same_context(e, s);
  require_symmetric(s);
  const auto& ctx = e.context();
  if (v == 0 || v >= ctx.size()) throw Error(ErrorCode::InvalidArgument, "rhombus shift must be a nonzero point");
  const auto sides = ranked_shifts(e, s, {v, ctx.neg_point(v)});
  if (sides.empty()) return std::nullopt;
  std::optional<RhombusWitness> found;
  scan_rhombi(e, s, v, sides.front(), [&](const RhombusWitness& r) {
    found = r;
    return true;
  });
  return found;
}

std::optional<CubeWitness> build_cube(const PointSet& e, const PointSet& s) {
  require_same_context(e, s);
  require_symmetric(s);
  const auto& ctx = e.context();
  const auto shifts = ranked_shifts(e, s, {});
  if (shifts.empty()) return std::nullopt;
  const Index v = shifts.front();
  const auto rhombus = find_rhombus(shifted_overlap(e, v), s, v);
  if (!rhombus) return std::nullopt;
  CubeWitness cube;
  cube.rhombus = *rhombus;
  cube.v = v;
  for (std::size_t i = 0; i < 3; ++i) cube.lifted[i] = ctx.add_points(rhombus->x[i], v);
  return cube;
}

std::uint64_t for_each_cube(const PointSet& e, const PointSet& s, const std::function<bool(const CubeWitness&)>& visit) {
  require_same_context(e, s);
  require_symmetric(s);
  const auto& ctx = e.context();
  std::uint64_t visited = 0;
  for (auto v : ranked_shifts(e, s, {})) {
    const PointSet e_v = shifted_overlap(e, v);
    for (auto side : ranked_shifts(e_v, s, {v, ctx.neg_point(v)})) {
      const bool stop = scan_rhombi(e_v, s, v, side, [&](const RhombusWitness& r) {
        CubeWitness cube;
        cube.rhombus = r;
        cube.v = v;
        for (std::size_t i = 0; i < 3; ++i) cube.lifted[i] = ctx.add_points(r.x[i], v);
        ++visited;
        return visit(cube);
      });
      if (stop) return visited;
    }
  }
  return visited;
}

bool verify_rhombus(const PointSet& e, const PointSet& s, Index v, const RhombusWitness& r) {
  const auto& ctx = e.context();
  for (auto x : r.x) {
    if (!e.contains(x)) return false;
  }
  const auto& [x1, x2, x3, x4] = r.x;
  if (ctx.sub_points(x1, x2) != r.u || ctx.sub_points(x3, x4) != r.u) return false;
  if (ctx.sub_points(x1, x3) != r.w || ctx.sub_points(x2, x4) != r.w) return false;
  if (!s.contains(r.u) || !s.contains(r.w)) return false;
  const Index neg_v = ctx.neg_point(v);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      const Index diff = ctx.sub_points(r.x[i], r.x[j]);
      if (diff == 0 || diff == v || diff == neg_v) return false;
    }
  }
  return true;
}

bool verify_cube(const PointSet& e, const PointSet& s, const CubeWitness& c) {
  const auto& ctx = e.context();
  if (c.v == 0 || !s.contains(c.v)) return false;
  if (!verify_rhombus(e, s, c.v, c.rhombus)) return false;
  const auto verts = c.vertices();
  for (auto x : verts) {
    if (!e.contains(x)) return false;
  }
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (verts[i] == verts[j]) return false;
    }
  }
  const auto& x = c.rhombus.x;
  const auto& lifted = c.lifted;
  for (std::size_t i = 0; i < 3; ++i) {
    if (lifted[i] != ctx.add_points(x[i], c.v)) return false;
  }
  auto edge = [&](Index a, Index b) { return s.contains(ctx.sub_points(a, b)); };
  // Nine edges of Q3 minus the vertex x4 + v.
  return edge(x[0], x[1]) && edge(x[0], x[2]) && edge(x[1], x[3]) && edge(x[2], x[3]) &&
         edge(lifted[0], x[0]) && edge(lifted[1], x[1]) && edge(lifted[2], x[2]) &&
         edge(lifted[0], lifted[1]) && edge(lifted[0], lifted[2]);
}

}  // namespace ffvc
