// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "../unit/oracles.hpp"
#include "ffvc/analysis.hpp"
#include "ffvc/curves.hpp"
#include "ffvc/error.hpp"
#include "ffvc/field.hpp"
#include "ffvc/presets.hpp"
#include "ffvc/random_salem.hpp"
#include "ffvc/rng.hpp"
#include "ffvc/shatter.hpp"

using namespace ffvc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// A failing check records the first reason and keeps going.
struct Check {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double dt = seconds_since(t0);
  if (!c.ok) ++failures;
  std::printf("%s %2d %s [%.3fs]%s%s\n", c.ok ? "PASS" : "FAIL", id, title, dt, c.ok ? "" : " : ",
              c.why.str().c_str());
  std::fflush(stdout);
}

std::vector<std::uint32_t> odd_primes(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = lo; p <= hi; ++p) {
    if (p > 2 && is_prime(p)) out.push_back(p);
  }
  return out;
}

std::string tag(std::uint32_t p) { return " p=" + std::to_string(p); }

void f11_table(Check& c) {
  const FieldContext ctx(11, 2);
  ShatterWitness w;
  for (const auto& x : published_x_tuple(11)) w.points.push_back(ctx.encode(x));
  w.witnesses.assign(16, 0);
  for (const auto& [mask, y] : published_f11_centers()) w.witnesses[mask] = ctx.encode(y);
  // the table lists no y for the empty pattern; supply one with no x - y on P
  const auto parabola = make_symmetrized_parabola(ctx).points;
  const auto problem = ShatterProblem::with_witnesses(parabola, PointSet::full(ctx), PointSet::full(ctx), 4);
  for (Index y = 0; y < ctx.size(); ++y) {
    bool hits = false;
    for (auto x : w.points) hits = hits || parabola.contains(ctx.sub_points(x, y));
    if (!hits) {
      w.witnesses[0] = y;
      break;
    }
  }
  const auto t0 = Clock::now();
  const bool verified = verify_witness(problem, w);
  const double dt = seconds_since(t0);
  c.require(verified, "table does not verify");
  c.require(dt < 1e-3, "verify took " + std::to_string(dt) + "s");
}

void published_tuples(Check& c) {
  for (std::uint32_t p : {17U, 23U, 29U}) {
    const FieldContext ctx(p, 2);
    const auto problem =
        ShatterProblem::with_witnesses(make_symmetrized_parabola(ctx).points, PointSet::full(ctx), PointSet::full(ctx), 4);
    std::vector<Index> pts;
    for (const auto& x : published_x_tuple(p)) pts.push_back(ctx.encode(x));
    const auto t0 = Clock::now();
    const auto w = witness_for_tuple(problem, pts);
    const double dt = seconds_since(t0);
    c.require(w.has_value(), "no witness regions" + tag(p));
    if (w) c.require(verify_witness(problem, *w), "witness fails to verify" + tag(p));
    c.require(dt < 1.0, "search took " + std::to_string(dt) + "s" + tag(p));
  }
}

SearchOutcome exhaustive(const PointSet& s, unsigned k) {
  const auto e = PointSet::full(s.context());
  return shatter_search(ShatterProblem::with_witnesses(s, e, e, k), ExhaustiveStrategy{}, kDefaultTupleBudget);
}

void rediscover_f11(Check& c) {
  const FieldContext ctx(11, 2);
  const auto s = make_symmetrized_parabola(ctx).points;
  const auto out = exhaustive(s, 4);
  c.require(out.status == SearchStatus::Found, std::string("status ") + to_string(out.status));
  c.require(out.stats.tuples_examined <= kDefaultTupleBudget, "budget exceeded");
  if (out.witness) {
    c.require(verify_witness(ShatterProblem::with_witnesses(s, PointSet::full(ctx), PointSet::full(ctx), 4), *out.witness),
              "witness fails to verify");
  }
}

void parabola_three(Check& c) {
  const FieldContext ctx(11, 2);
  const std::vector<std::int64_t> sq = {0, 0, 1};
  const auto out = exhaustive(make_poly_graph(ctx, sq).points, 3);
  c.require(out.status == SearchStatus::ExhaustedNo, std::string("status ") + to_string(out.status));
}

void circle_vc(Check& c) {
  const auto circle = make_sphere(FieldContext(11, 2), 1).points;
  const auto three = exhaustive(circle, 3);
  c.require(three.status == SearchStatus::Found, std::string("k=3 status ") + to_string(three.status));
  const auto four = exhaustive(circle, 4);
  c.require(four.status == SearchStatus::ExhaustedNo, std::string("k=4 status ") + to_string(four.status));
}

void salem_conics(Check& c) {
  for (auto p : odd_primes(3, 97)) {
    const FieldContext ctx(p, 2);
    const double q = p;
    const double cap = 2.0 * std::sqrt(q) + 1e-6;
    const double mp = q * q * fourier_spectrum(make_paraboloid(ctx).points).max_nontrivial();
    c.require(mp <= cap, "paraboloid" + tag(p));
    for (std::uint32_t t = 1; t < p; ++t) {
      const double mc = q * q * fourier_spectrum(make_sphere(ctx, t).points).max_nontrivial();
      c.require(mc <= cap, "circle t=" + std::to_string(t) + tag(p));
    }
  }
}

void conic_counts(Check& c) {
  for (auto p : odd_primes(5, 31)) {
    const FieldContext ctx(p, 2);
    const FieldContext line(p, 1);
    SplitMix64 rng(derive_seed(7, p));
    int drawn = 0;
    while (drawn < 100) {
      std::array<std::int64_t, 6> co{};
      for (auto& x : co) x = static_cast<std::int64_t>(rng.below(p));
      std::optional<QuadraticSpec> spec;
      try {
        spec.emplace(line, co);
      } catch (const Error&) {
        continue;
      }
      if (spec->det3() == 0 || spec->det2() == 0) continue;
      ++drawn;
      const auto n = zero_set(*spec, ctx).size();
      c.require(n + 1 == p || n == p || n == p + 1, "count " + std::to_string(n) + tag(p));
    }
  }
}

void intersection_profiles(Check& c) {
  for (auto p : odd_primes(3, 31)) {
    const FieldContext ctx(p, 2);
    for (std::uint32_t t = 1; t < p; ++t) {
      c.require(intersection_profile(make_sphere(ctx, t).points).max_size <= 2, "circle" + tag(p));
    }
    c.require(intersection_profile(make_symmetrized_parabola(ctx).points).max_size <= 6, "sym-parabola" + tag(p));
    for (std::int64_t n = 2; n <= 5 && n < static_cast<std::int64_t>(p); ++n) {
      std::vector<std::int64_t> coeffs(n + 1, 1);
      const auto prof = intersection_profile(make_poly_graph(ctx, coeffs).points);
      c.require(prof.max_size <= static_cast<std::uint64_t>(n - 1), "degree " + std::to_string(n) + tag(p));
    }
  }
}

void character_sums(Check& c) {
  for (auto p : odd_primes(3, 97)) {
    const FieldContext f(p);
    const double rp = std::sqrt(static_cast<double>(p));
    const Complex eps = p % 4 == 1 ? Complex(1, 0) : Complex(0, 1);
    for (std::uint32_t k = 1; k < p; ++k) {
      const auto g = gauss_sum(f, k);
      c.require(std::abs(std::abs(g) - rp) <= 1e-9, "|g| k=" + std::to_string(k) + tag(p));
      c.require(std::abs(g - eps * static_cast<double>(legendre(f, k)) * rp) <= 1e-9,
                "g = eps eta sqrt(p) k=" + std::to_string(k) + tag(p));
    }
    for (std::uint32_t a = 1; a < p; ++a) {
      for (std::uint32_t b = 1; b < p; ++b) {
        c.require(std::abs(kloosterman(f, a, b)) <= 2.0 * rp + 1e-9, "Kloosterman" + tag(p));
      }
    }
  }
  for (auto p : odd_primes(5, 31)) {
    const FieldContext f(p);
    const double rp = std::sqrt(static_cast<double>(p));
    SplitMix64 rng(derive_seed(9, p));
    for (std::size_t n : {3U, 4U}) {
      if (p % n == 0) continue;
      for (int i = 0; i < 50; ++i) {
        std::vector<std::int64_t> coeffs(n + 1);
        for (auto& x : coeffs) x = static_cast<std::int64_t>(rng.below(p));
        coeffs[n] = 1 + static_cast<std::int64_t>(rng.below(p - 1));
        c.require(std::abs(weil_poly_sum(f, coeffs)) <= (n - 1.0) * rp + 1e-9, "Weil degree " + std::to_string(n) + tag(p));
      }
    }
  }
}

void edge_counts(Check& c) {
  std::mt19937_64 rng(10);
  for (auto p : odd_primes(3, 31)) {
    const FieldContext ctx(p, 2);
    const auto circle = make_sphere(ctx, 1).points;
    for (int t = 0; t < 5; ++t) {
      const auto e = oracle::random_set(ctx, rng, 0.1 + 0.2 * t);
      if (e.empty()) continue;
      const auto r = edge_count(e, circle);
      c.require(std::abs(r.fourier_nu - r.nu) <= 1e-6 * std::max<double>(1.0, r.nu), "Fourier side" + tag(p));
      if (p <= 7) c.require(r.nu == oracle::pair_count(e, circle), "brute force" + tag(p));
    }
  }
  for (auto p : odd_primes(11, 31)) {
    const FieldContext ctx(p, 2);
    const auto circle = make_sphere(ctx, 1).points;
    const auto size = static_cast<std::uint64_t>(std::ceil(std::pow(p, 1.5)));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto e = sample_subset(ctx, size, derive_seed(p, seed));
      const auto r = edge_count(e, circle);
      c.require(r.normalized_error <= 4.0, "normalized_error " + std::to_string(r.normalized_error) + tag(p));
      c.require(r.nu >= r.main_term / 2.0, "nu below half the main term" + tag(p));
    }
  }
}

void functional_inequalities(Check& c) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  for (auto p : odd_primes(3, 7)) {
    const FieldContext ctx(p, 2);
    const auto n = ctx.size();
    for (int t = 0; t < 10; ++t) {
      const auto s = oracle::random_set(ctx, rng, 0.3);
      if (s.empty()) continue;
      std::vector<double> f(n);
      std::vector<double> g(n);
      for (auto& x : f) x = weight(rng);
      for (auto& x : g) x = weight(rng);
      double brute = 0.0;
      for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) {
          if (s.contains(oracle::diff(p, 2, x, y))) brute += f[x] * g[y];
        }
      }
      const auto r = bilinear_form(WeightTable(ctx, f), WeightTable(ctx, g), s);
      c.require(std::abs(r.value - brute) <= 1e-9 * std::max(1.0, brute), "bilinear direct" + tag(p));
      c.require(std::abs(r.fourier_value - brute) <= 1e-6 * std::max(1.0, brute), "bilinear Fourier" + tag(p));
    }
  }
  int instances = 0;
  for (auto p : odd_primes(11, 31)) {
    const FieldContext ctx(p, 2);
    const auto circle = make_sphere(ctx, 1).points;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto e = sample_subset(ctx, ctx.size() / 2, derive_seed(100 + p, seed));
      const auto r = edge_count(e, circle);
      const double q = p;
      const double big_e = static_cast<double>(e.size());
      if (r.nu < r.K * big_e * big_e / (2.0 * q)) continue;
      const auto m = static_cast<std::uint64_t>(std::floor(r.K * big_e / (4.0 * q)));
      const auto conv = convolve(e, circle);
      double mass = 0.0;
      for (auto x : prune(e, circle, m).indices()) mass += conv.at(x);
      c.require(mass >= r.K * big_e * big_e / (4.0 * q), "pruning mass" + tag(p));
      ++instances;
    }
  }
  c.require(instances > 0, "no qualifying pruning instance");
  std::printf("     pruning mass checked on %d instances\n", instances);
}

void constructive(Check& c) {
  const FieldContext ctx(11, 2);
  const auto circle = make_sphere(ctx, 1).points;
  const auto e = PointSet::full(ctx);
  const auto out = construct_shatter3(circle, e);
  c.require(out.status == SearchStatus::Found, std::string("status ") + to_string(out.status));
  if (out.witness) c.require(verify_witness(ShatterProblem::over(circle, e, 3), *out.witness), "witness fails to verify");
  const auto cube = build_cube(e, circle);
  c.require(cube.has_value(), "no cube");
  if (cube) {
    const auto v = cube->vertices();
    const auto in = [&](Index a, Index b) { return circle.contains(ctx.sub_points(a, b)); };
    // x1-x2, x3-x4, x1-x3, x2-x4 and the three lifts, plus x1'-x2', x1'-x3'
    const bool nine = in(v[0], v[1]) && in(v[2], v[3]) && in(v[0], v[2]) && in(v[1], v[3]) && in(v[4], v[0]) &&
                      in(v[5], v[1]) && in(v[6], v[2]) && in(v[4], v[5]) && in(v[4], v[6]);
    c.require(nine, "cube memberships");
    c.require(verify_cube(e, circle, *cube), "verify_cube");
  }
}

void random_sets(Check& c) {
  const FieldContext ctx(31, 2);
  const auto mc = monte_carlo(ctx, 31, 200, 2024, 0.5, 0.45);
  c.require(mc.evaluated == 200, "degenerate trials");
  c.require(mc.pass_fraction >= 0.95, "Hayes pass fraction " + std::to_string(mc.pass_fraction));
  for (auto s : mc.trial_seeds) {
    const auto r = symmetrize(sample_subset(ctx, 31, s));
    c.require(r.T == negate(r.T) && r.size_identity, "symmetrize");
  }
  for (std::uint32_t p : {11U, 13U}) {
    const auto vc = vc_random_experiment(p, 20, 77);
    c.require(vc.all_verified, "unverified witness" + tag(p));
    std::printf("     VC random p=%u: S 2-shattered %.2f, T 3-shattered %.2f\n", p, vc.s_success_rate, vc.t_success_rate);
  }
}

void oracle_equivalence(Check& c) {
  std::mt19937_64 rng(14);
  int instances = 0;
  int positive = 0;
  int negative = 0;
  for (std::uint32_t p : {3U, 5U, 7U}) {
    const FieldContext ctx(p, 2);
    for (int t = 0; t < 34; ++t) {
      const auto s = oracle::random_set(ctx, rng, 0.15 + 0.05 * (t % 5));
      const auto e = oracle::random_set(ctx, rng, 0.7);
      const auto w = t % 2 == 0 ? e : oracle::random_set(ctx, rng, 0.6);
      for (unsigned k = 0; k <= 3; ++k) {
        const auto out = shatter_search(ShatterProblem::with_witnesses(s, e, w, k));
        const bool found = out.status == SearchStatus::Found;
        ++(found ? positive : negative);
        c.require(out.status != SearchStatus::BudgetExhausted, "budget");
        c.require(found == oracle::shatterable(s, e, w, k), "decision differs" + tag(p) + " k=" + std::to_string(k));
      }
      ++instances;
    }
  }
  c.require(instances >= 100, "too few instances");
  std::printf("     %d instances, %d shattered and %d not\n", instances, positive, negative);
}

void identities(Check& c) {
  std::mt19937_64 rng(15);
  for (std::uint32_t p : {3U, 5U, 7U, 11U}) {
    const FieldContext ctx(p, 2);
    const auto n = ctx.size();
    const double qd = n;
    std::vector<Complex> ones(n, Complex(1, 0));
    const auto delta = fourier_transform(ctx, ones);
    for (Index m = 0; m < n; ++m) {
      c.require(std::abs(delta[m] - Complex(m == 0 ? 1.0 : 0.0, 0)) <= 1e-9, "orthogonality" + tag(p));
    }
    for (int t = 0; t < 50; ++t) {
      const auto s = oracle::random_set(ctx, rng, 0.05 + 0.018 * t);
      const auto f = oracle::indicator(s);
      const auto fh = fourier_transform(ctx, f);
      double lhs = 0.0;
      for (const auto& z : fh) lhs += std::norm(z);
      const double rhs = static_cast<double>(s.size()) / qd;
      c.require(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs), "Plancherel" + tag(p));
      const auto back = inverse_fourier_transform(ctx, fh);
      for (Index x = 0; x < n; ++x) c.require(std::abs(back[x] - f[x]) <= 1e-9, "inversion" + tag(p));
      // sum_m chi(m.x) = q^d [x = 0] applied to S: sum_m S^(m) = S(0)
      Complex total = 0;
      for (const auto& z : fh) total += z;
      c.require(std::abs(total - Complex(s.contains(Index{0}) ? 1.0 : 0.0, 0)) <= 1e-9, "character sum" + tag(p));
    }
  }
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion(1, "F11 published table verifies", f11_table);
  criterion(2, "F17/F23/F29 x-tuples have all witness regions", published_tuples);
  criterion(3, "exhaustive 4-shattering of the symmetrized parabola over F11", rediscover_f11);
  criterion(4, "parabola over F11 does not 3-shatter", parabola_three);
  criterion(5, "circle over F11 has VC dimension 3", circle_vc);
  criterion(6, "circle and paraboloid spectra below 2 sqrt(q) / q^2, p <= 97", salem_conics);
  criterion(7, "smooth conic point counts in {q-1, q, q+1}", conic_counts);
  criterion(8, "intersection profile caps, p <= 31", intersection_profiles);
  criterion(9, "Gauss, Kloosterman and Weil bounds", character_sums);
  criterion(10, "edge count identities and error bounds", edge_counts);
  criterion(11, "bilinear form and pruning mass", functional_inequalities);
  criterion(12, "constructive 3-shattering pipeline", constructive);
  criterion(13, "random sets: Hayes, symmetrize, VC random", random_sets);
  criterion(14, "search agrees with naive enumeration", oracle_equivalence);
  criterion(15, "Plancherel, inversion, orthogonality", identities);
  std::printf("%d of 15 criteria failed [%.1fs total]\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
