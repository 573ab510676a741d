#include "ffvc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <string>

namespace ffvc {

const char* version() noexcept { return FFVC_VERSION; }

double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

Json point_json(const FieldContext& ctx, Index x) {
  Json out = Json::array();
  for (auto c : ctx.decode(x)) out.push_back(c);
  return out;
}

Json complex_json(Complex z) { return Json::array({round_sig(z.real()), round_sig(z.imag())}); }

Json points_json(const PointSet& s) {
  Json out = Json::array();
  for (auto x : s.lex_members()) out.push_back(point_json(s.context(), x));
  return out;
}

Json to_json(const SalemReport& r) {
  return {{"max_nontrivial", round_sig(r.max_nontrivial)},
          {"bound", round_sig(r.bound)},
          {"ratio", round_sig(r.ratio)},
          {"pass", r.pass}};
}

Json to_json(const SpectrumTable& t, std::size_t top) {
  const auto& ctx = t.context();
  std::vector<Index> order(ctx.size() - 1);
  std::iota(order.begin(), order.end(), Index{1});
  auto key = [&](Index m) { return round_sig(std::abs(t.at(m))); };
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ka = key(a);
    const double kb = key(b);
    return ka != kb ? ka > kb : ctx.lex_rank(a) < ctx.lex_rank(b);
  });
  Json largest = Json::array();
  for (std::size_t i = 0; i < std::min(top, order.size()); ++i) {
    largest.push_back({{"m", point_json(ctx, order[i])}, {"value", complex_json(t.at(order[i]))}, {"abs", key(order[i])}});
  }
  return {{"zero", complex_json(t.at(0))},
          {"max_nontrivial", round_sig(t.max_nontrivial())},
          {"argmax", point_json(ctx, t.argmax_nontrivial())},
          {"largest", largest}};
}

Json to_json(const EdgeCountReport& r) {
  return {{"nu", r.nu},
          {"main_term", round_sig(r.main_term)},
          {"error", round_sig(r.error)},
          {"normalized_error", round_sig(r.normalized_error)},
          {"K", round_sig(r.K)},
          {"fourier_nu", round_sig(r.fourier_nu)}};
}

Json to_json(const BilinearReport& r) {
  return {{"value", round_sig(r.value)},
          {"fourier_value", round_sig(r.fourier_value)},
          {"main_term", round_sig(r.main_term)},
          {"error", round_sig(r.error)},
          {"bound", round_sig(r.bound)}};
}

Json to_json(const FieldContext& ctx, const IntersectionProfile& r) {
  Json hist = Json::object();
  for (const auto& [size, count] : r.histogram) hist[std::to_string(size)] = count;
  Json out = {{"histogram", hist}, {"max", r.max_size}, {"argmax", point_json(ctx, r.argmax)}, {"at_zero", r.at_zero}};
  out["beta"] = r.beta ? Json(round_sig(*r.beta)) : Json(nullptr);
  return out;
}

Json to_json(const FieldContext& ctx, const ShatterWitness& w) {
  Json points = Json::array();
  for (auto x : w.points) points.push_back(point_json(ctx, x));
  Json witnesses = Json::object();
  for (std::size_t mask = 0; mask < w.witnesses.size(); ++mask) {
    witnesses[std::to_string(mask)] = point_json(ctx, w.witnesses[mask]);
  }
  return {{"k", w.k()}, {"points", points}, {"witnesses", witnesses}};
}

Json to_json(const FieldContext& ctx, const SearchOutcome& r) {
  Json out = {{"status", to_string(r.status)},
              {"tuples_examined", r.stats.tuples_examined},
              {"elapsed_seconds", round_sig(r.stats.elapsed_seconds)}};
  out["witness"] = r.witness ? to_json(ctx, *r.witness) : Json(nullptr);
  return out;
}

Json to_json(const FieldContext& ctx, const VcBounds& r) {
  Json out = {{"lower", r.lower}};
  out["exact"] = r.exact ? Json(*r.exact) : Json(nullptr);
  out["witness"] = r.witness ? to_json(ctx, *r.witness) : Json(nullptr);
  return out;
}

Json to_json(const FieldContext& ctx, const CubeWitness& c) {
  Json rhombus = Json::array();
  for (auto x : c.rhombus.x) rhombus.push_back(point_json(ctx, x));
  Json lifted = Json::array();
  for (auto x : c.lifted) lifted.push_back(point_json(ctx, x));
  return {{"rhombus", rhombus},
          {"u", point_json(ctx, c.rhombus.u)},
          {"w", point_json(ctx, c.rhombus.w)},
          {"v", point_json(ctx, c.v)},
          {"lifted", lifted}};
}

Json to_json(const ConicClassification& c) {
  return {{"smooth", c.smooth}, {"degenerate_quadratic_part", c.degenerate_quadratic_part}};
}

Json to_json(const CanonicalForm& f) {
  Json out = {{"kind", f.kind == CanonicalKind::Parabola ? "parabola" : "diagonal"}};
  if (f.kind == CanonicalKind::Diagonal) {
    out["a"] = f.a;
    out["b"] = f.b;
    out["c"] = f.c;
    out["center"] = f.center;
  }
  out["linear"] = Json::array({Json::array({f.linear[0], f.linear[1]}), Json::array({f.linear[2], f.linear[3]})});
  out["offset"] = f.offset;
  return out;
}

Json to_json(const HayesReport& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"m_param", r.m_param},
          {"phi", round_sig(r.phi)},
          {"epsilon", round_sig(r.epsilon)},
          {"bound", round_sig(r.bound)},
          {"pass", r.pass}};
}

Json to_json(const TrialSummary& r) {
  Json phi = Json::array();
  for (double v : r.phi) phi.push_back(round_sig(v));
  const auto& q = r.max_intersection_quantiles;
  return {{"trials", r.trials},
          {"evaluated", r.evaluated},
          {"degenerate", r.degenerate},
          {"pass_fraction", round_sig(r.pass_fraction)},
          {"max_intersection_quantiles",
           {{"min", round_sig(q.min)},
            {"q25", round_sig(q.q25)},
            {"median", round_sig(q.median)},
            {"q75", round_sig(q.q75)},
            {"max", round_sig(q.max)}}},
          {"beta", round_sig(r.beta)},
          {"omega_above_fraction", round_sig(r.omega_above_fraction)},
          {"phi", phi},
          {"omega", r.omega},
          {"seed", r.seed},
          {"trial_seeds", r.trial_seeds},
          {"rng", r.rng}};
}

Json to_json(const SymmetrizeReport& r) {
  return {{"size", r.T.size()}, {"overlap", r.overlap}, {"size_identity", r.size_identity}, {"T", points_json(r.T)}};
}

Json to_json(const VcRandomSummary& r) {
  Json trials = Json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"seed", t.seed},
                      {"s_shattered2", t.s_shattered2},
                      {"t_shattered3", t.t_shattered3},
                      {"verified", t.verified}});
  }
  return {{"p", r.p},
          {"s_success_rate", round_sig(r.s_success_rate)},
          {"t_success_rate", round_sig(r.t_success_rate)},
          {"all_verified", r.all_verified},
          {"trials", trials}};
}

}  // namespace ffvc
