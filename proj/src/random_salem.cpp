#include "ffvc/random_salem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ffvc/analysis.hpp"
#include "ffvc/error.hpp"
#include "ffvc/parallel.hpp"
#include "ffvc/rng.hpp"
#include "ffvc/shatter.hpp"

namespace ffvc {

namespace {

// Linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

PointSet sample_subset(const FieldContext& ctx, std::uint64_t size, std::uint64_t seed) {
  const std::uint64_t n = ctx.size();
  if (size > n) {
    throw Error(ErrorCode::SizeOutOfRange,
                "size " + std::to_string(size) + " exceeds group order " + std::to_string(n));
  }
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  SplitMix64 rng(seed);
  for (std::uint64_t i = 0; i < size; ++i) {
    const auto j = i + rng.below(n - i);
    std::swap(perm[i], perm[j]);
  }
  return PointSet::from_indices(ctx, std::span<const Index>(perm.data(), size));
}

HayesReport hayes_check(const PointSet& s, double epsilon) {
  const auto& ctx = s.context();
  if (s.empty() || s.size() == ctx.size()) {
    throw Error(ErrorCode::DegenerateSize, "Hayes check needs 0 < |S| < q^d");
  }
  HayesReport r;
  r.n = ctx.size();
  r.k = s.size();
  r.m_param = std::min(r.k, r.n - r.k);
  r.phi = static_cast<double>(r.n) * fourier_spectrum(s).max_nontrivial();
  r.epsilon = epsilon;
  r.bound = 2.0 * std::sqrt(2.0 * (1.0 + epsilon) * static_cast<double>(r.m_param) * std::log(static_cast<double>(r.n)));
  r.pass = r.phi < r.bound;
  return r;
}

TrialSummary monte_carlo(const FieldContext& ctx, std::uint64_t size, std::uint64_t trials, std::uint64_t seed,
                         double epsilon, double beta) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  if (size > ctx.size()) throw Error(ErrorCode::SizeOutOfRange, "size exceeds group order");

  struct Result {
    bool degenerate = true;
    bool pass = false;
    double phi = 0;
    std::uint64_t omega = 0;
  };
  std::vector<Result> results(trials);
  TrialSummary out;
  out.trials = trials;
  out.seed = seed;
  out.beta = beta;
  out.rng = std::string(SplitMix64::kAlgorithm);
  out.trial_seeds.resize(trials);
  for (std::uint64_t t = 0; t < trials; ++t) out.trial_seeds[t] = derive_seed(seed, t);

  parallel_for(trials, [&](std::size_t t) {
    const auto s = sample_subset(ctx, size, out.trial_seeds[t]);
    if (s.empty() || s.size() == ctx.size()) return;
    const auto h = hayes_check(s, epsilon);
    results[t] = {false, h.pass, h.phi, intersection_profile(s).max_size};
  });

  const double threshold = std::pow(static_cast<double>(ctx.p()), beta);
  std::uint64_t passes = 0;
  std::uint64_t above = 0;
  for (const auto& r : results) {
    if (r.degenerate) {
      ++out.degenerate;
      continue;
    }
    ++out.evaluated;
    passes += r.pass ? 1 : 0;
    above += static_cast<double>(r.omega) > threshold ? 1 : 0;
    out.phi.push_back(r.phi);
    out.omega.push_back(r.omega);
  }
  if (out.evaluated > 0) {
    out.pass_fraction = static_cast<double>(passes) / static_cast<double>(out.evaluated);
    out.omega_above_fraction = static_cast<double>(above) / static_cast<double>(out.evaluated);
    std::vector<double> sorted(out.omega.begin(), out.omega.end());
    std::sort(sorted.begin(), sorted.end());
    out.max_intersection_quantiles = {sorted.front(), quantile(sorted, 0.25), quantile(sorted, 0.5),
                                      quantile(sorted, 0.75), sorted.back()};
  }
  return out;
}

SymmetrizeReport symmetrize(const PointSet& s) {
  const auto neg = negate(s);
  SymmetrizeReport r{set_union(s, neg), set_intersection(s, neg).size(), false};
  r.size_identity = r.T.size() == 2 * s.size() - r.overlap;
  return r;
}

bool intersection_decomposition_holds(const PointSet& s) {
  const auto& ctx = s.context();
  const auto neg = negate(s);
  const auto t = set_union(s, neg);
  for (Index x = 0; x < ctx.size(); ++x) {
    const Index minus_x = ctx.neg_point(x);
    const auto s_shift = translate(s, minus_x);
    const auto neg_shift = translate(neg, minus_x);
    const auto lhs = set_intersection(t, translate(t, minus_x));
    const auto rhs = set_union(set_union(set_intersection(s, s_shift), set_intersection(s, neg_shift)),
                               set_union(set_intersection(neg, s_shift), set_intersection(neg, neg_shift)));
    if (!(set_intersection(lhs, rhs) == lhs)) return false;
  }
  return true;
}

VcRandomSummary vc_random_experiment(std::uint32_t p, std::uint64_t trials, std::uint64_t seed) {
  const FieldContext ctx(p, 2);
  const auto plane = PointSet::full(ctx);
  VcRandomSummary out;
  out.p = p;
  std::uint64_t s_hits = 0;
  std::uint64_t t_hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    VcRandomTrial trial;
    trial.seed = derive_seed(seed, i);
    const auto s = sample_subset(ctx, p, trial.seed);
    const auto t = symmetrize(s).T;
    const auto p2 = ShatterProblem::over(s, plane, 2);
    const auto p3 = ShatterProblem::over(t, plane, 3);
    const auto r2 = shatter_search(p2);
    const auto r3 = shatter_search(p3);
    trial.s_shattered2 = r2.status == SearchStatus::Found;
    trial.t_shattered3 = r3.status == SearchStatus::Found;
    if (r2.witness) trial.verified = trial.verified && verify_witness(p2, *r2.witness);
    if (r3.witness) trial.verified = trial.verified && verify_witness(p3, *r3.witness);
    s_hits += trial.s_shattered2 ? 1 : 0;
    t_hits += trial.t_shattered3 ? 1 : 0;
    out.all_verified = out.all_verified && trial.verified;
    out.trials.push_back(trial);
  }
  if (trials > 0) {
    out.s_success_rate = static_cast<double>(s_hits) / static_cast<double>(trials);
    out.t_success_rate = static_cast<double>(t_hits) / static_cast<double>(trials);
  }
  return out;
}

}  // namespace ffvc
