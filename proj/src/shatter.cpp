#include "ffvc/shatter.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <string>

#include "ffvc/analysis.hpp"
#include "ffvc/error.hpp"
#include "ffvc/parallel.hpp"
#include "ffvc/rng.hpp"

namespace ffvc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_same_context(const PointSet& a, const PointSet& b) {
  if (!(a.context() == b.context())) {
    throw Error(ErrorCode::ContextMismatch, "point sets live in different groups");
  }
}

// Neighbor sets N(x) = (x - S) cap W over lexicographic ranks of W, for every
// candidate x of E in lexicographic order.
struct NeighborTable {
  std::vector<Index> candidates;
  std::vector<DynamicBitset> neighbors;
  DynamicBitset witness_domain;
};

NeighborTable build_neighbors(const ShatterProblem& problem, std::span<const Index> candidates) {
  const auto& ctx = problem.shape.context();
  NeighborTable t;
  t.candidates.assign(candidates.begin(), candidates.end());
  t.witness_domain = DynamicBitset(ctx.size());
  for (auto y : problem.witness_domain.indices()) t.witness_domain.set(ctx.lex_rank(y));
  const auto shape = problem.shape.indices();
  t.neighbors.resize(t.candidates.size(), DynamicBitset(ctx.size()));
  parallel_for(t.candidates.size(), [&](std::size_t i) {
    const Index x = t.candidates[i];
    for (auto s : shape) {
      const Index y = ctx.sub_points(x, s);
      if (problem.witness_domain.contains(y)) t.neighbors[i].set(ctx.lex_rank(y));
    }
  });
  return t;
}

// Witness regions of a growing prefix. Level j holds 2^j regions of `words`
// words each; region I at level j is cap_{i in I} N(x^i) minus cup_{i notin I} N(x^i).
class RegionStack {
 public:
  RegionStack(const NeighborTable& table, unsigned k)
      : table_(table), words_(table.witness_domain.word_count()), levels_(k + 1) {
    for (unsigned j = 0; j <= k; ++j) levels_[j].assign((std::size_t{1} << j) * words_, 0);
    std::copy(table.witness_domain.words().begin(), table.witness_domain.words().end(), levels_[0].begin());
  }

  // Builds level j + 1 from level j by splitting on candidate c; false if a region empties.
  bool extend(unsigned j, std::size_t c) {
    const auto nb = table_.neighbors[c].words();
    const auto& cur = levels_[j];
    auto& next = levels_[j + 1];
    const std::size_t regions = std::size_t{1} << j;
    for (std::size_t r = 0; r < regions; ++r) {
      const std::uint64_t* src = cur.data() + r * words_;
      std::uint64_t* out_without = next.data() + r * words_;
      std::uint64_t* out_with = next.data() + (r | regions) * words_;
      std::uint64_t any_with = 0;
      std::uint64_t any_without = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        out_with[w] = src[w] & nb[w];
        out_without[w] = src[w] & ~nb[w];
        any_with |= out_with[w];
        any_without |= out_without[w];
      }
      if (any_with == 0 || any_without == 0) return false;
    }
    return true;
  }

  // Least lexicographic rank in region r of level j.
  std::size_t first_in(unsigned j, std::size_t r) const {
    const std::uint64_t* src = levels_[j].data() + r * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      if (src[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(src[w]));
    }
    return DynamicBitset::npos;
  }

 private:
  const NeighborTable& table_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> levels_;
};

ShatterWitness witness_from_stack(const FieldContext& ctx, const NeighborTable& table, const RegionStack& stack,
                                  const std::vector<std::size_t>& chosen) {
  const auto k = static_cast<unsigned>(chosen.size());
  ShatterWitness w;
  for (auto c : chosen) w.points.push_back(table.candidates[c]);
  w.witnesses.resize(std::size_t{1} << k);
  for (std::size_t mask = 0; mask < w.witnesses.size(); ++mask) {
    w.witnesses[mask] = ctx.from_lex_rank(static_cast<Index>(stack.first_in(k, mask)));
  }
  return w;
}

struct SharedBudget {
  std::uint64_t limit;
  std::atomic<std::uint64_t> used{0};
  std::atomic<bool> exhausted{false};

  // Returns false once the budget is spent.
  bool charge(std::uint64_t n) {
    if (exhausted.load(std::memory_order_relaxed)) return false;
    if (used.fetch_add(n, std::memory_order_relaxed) + n > limit) {
      exhausted.store(true);
      return false;
    }
    return true;
  }
};

class DepthFirst {
 public:
  DepthFirst(const NeighborTable& table, unsigned k, SharedBudget& budget)
      : table_(table), k_(k), stack_(table, k), budget_(budget) {}

  // Explores all tuples starting with candidate `first`; true if one shatters.
  bool run(std::size_t first) {
    chosen_.clear();
    if (!charge()) return false;
    if (!stack_.extend(0, first)) return false;
    chosen_.push_back(first);
    const bool found = k_ == 1 || descend(1, first + 1);
    flush();
    return found;
  }

  const RegionStack& stack() const noexcept { return stack_; }
  const std::vector<std::size_t>& chosen() const noexcept { return chosen_; }
  bool aborted() const noexcept { return aborted_; }

 private:
  bool descend(unsigned depth, std::size_t start) {
    const std::size_t m = table_.candidates.size();
    for (std::size_t c = start; c + (k_ - depth) <= m; ++c) {
      if (!charge()) return false;
      if (!stack_.extend(depth, c)) continue;
      chosen_.push_back(c);
      if (depth + 1 == k_ || descend(depth + 1, c + 1)) return true;
      chosen_.pop_back();
      if (aborted_) return false;
    }
    return false;
  }

  bool charge() {
    if (aborted_) return false;
    if (++pending_ >= 4096) flush();
    return !aborted_;
  }

  void flush() {
    if (pending_ > 0 && !budget_.charge(pending_)) aborted_ = true;
    pending_ = 0;
  }

  const NeighborTable& table_;
  unsigned k_;
  RegionStack stack_;
  SharedBudget& budget_;
  std::vector<std::size_t> chosen_;
  std::uint64_t pending_ = 0;
  bool aborted_ = false;
};

SearchOutcome finish(const ShatterProblem& problem, SearchOutcome out, Clock::time_point start) {
  if (out.witness && !verify_witness(problem, *out.witness)) {
    throw std::logic_error("shatter search produced a witness that fails verification");
  }
  out.stats.elapsed_seconds = seconds_since(start);
  return out;
}

SearchOutcome trivial_outcome(const ShatterProblem& problem, Clock::time_point start) {
  SearchOutcome out;
  if (problem.witness_domain.empty()) {
    out.status = SearchStatus::ExhaustedNo;
  } else {
    out.status = SearchStatus::Found;
    out.witness = ShatterWitness{{}, {problem.witness_domain.lex_members().front()}};
  }
  return finish(problem, std::move(out), start);
}

SearchOutcome exhaustive_search(const ShatterProblem& problem, std::uint64_t budget_limit) {
  const auto start = Clock::now();
  if (problem.k == 0) return trivial_outcome(problem, start);
  const auto candidates = problem.domain.lex_members();
  SearchOutcome out;
  if (candidates.size() < problem.k) {
    out.status = SearchStatus::ExhaustedNo;
    return finish(problem, std::move(out), start);
  }
  const auto table = build_neighbors(problem, candidates);
  const auto& ctx = problem.shape.context();
  SharedBudget budget{budget_limit};

  // Tuples are partitioned by their first point; the least first point that
  // admits a shattered tuple wins, and within it the sequential scan is ordered.
  const std::size_t m = candidates.size();
  std::atomic<std::size_t> best_first{m};
  std::vector<std::optional<ShatterWitness>> found(m);
  parallel_for(m - problem.k + 1, [&](std::size_t first) {
    if (first > best_first.load() || budget.exhausted.load()) return;
    DepthFirst dfs(table, problem.k, budget);
    if (dfs.run(first)) {
      found[first] = witness_from_stack(ctx, table, dfs.stack(), dfs.chosen());
      std::size_t cur = best_first.load();
      while (first < cur && !best_first.compare_exchange_weak(cur, first)) {
      }
    }
  });

  out.stats.tuples_examined = std::min(budget.used.load(), budget_limit);
  for (auto& w : found) {
    if (w) {
      out.status = SearchStatus::Found;
      out.witness = std::move(w);
      return finish(problem, std::move(out), start);
    }
  }
  out.status = budget.exhausted.load() ? SearchStatus::BudgetExhausted : SearchStatus::ExhaustedNo;
  return finish(problem, std::move(out), start);
}

SearchOutcome random_search(const ShatterProblem& problem, const RandomStrategy& strategy, std::uint64_t budget_limit) {
  const auto start = Clock::now();
  if (problem.k == 0) return trivial_outcome(problem, start);
  const auto candidates = problem.domain.lex_members();
  SearchOutcome out;
  if (candidates.size() < problem.k) {
    out.status = SearchStatus::ExhaustedNo;
    return finish(problem, std::move(out), start);
  }
  const auto table = build_neighbors(problem, candidates);
  RegionStack stack(table, problem.k);
  SplitMix64 rng(strategy.seed);
  const std::uint64_t samples = std::min(strategy.samples, budget_limit);
  std::vector<std::size_t> chosen;
  for (std::uint64_t t = 0; t < samples; ++t) {
    ++out.stats.tuples_examined;
    chosen.clear();
    while (chosen.size() < problem.k) {
      const auto c = static_cast<std::size_t>(rng.below(candidates.size()));
      if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
    }
    std::sort(chosen.begin(), chosen.end());
    bool ok = true;
    for (unsigned j = 0; j < problem.k && ok; ++j) ok = stack.extend(j, chosen[j]);
    if (ok) {
      out.status = SearchStatus::Found;
      out.witness = witness_from_stack(problem.shape.context(), table, stack, chosen);
      return finish(problem, std::move(out), start);
    }
  }
  out.status = SearchStatus::BudgetExhausted;
  return finish(problem, std::move(out), start);
}

}  // namespace

ShatterProblem ShatterProblem::over(PointSet shape, PointSet domain, unsigned k) {
  PointSet witnesses = domain;
  return with_witnesses(std::move(shape), std::move(domain), std::move(witnesses), k);
}

ShatterProblem ShatterProblem::with_witnesses(PointSet shape, PointSet domain, PointSet witness_domain, unsigned k) {
  require_same_context(shape, domain);
  require_same_context(shape, witness_domain);
  if (k > 20) throw Error(ErrorCode::InvalidArgument, "k is too large");
  return ShatterProblem{std::move(shape), std::move(domain), std::move(witness_domain), k};
}

const char* to_string(SearchStatus status) noexcept {
  switch (status) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::ExhaustedNo: return "ExhaustedNo";
    case SearchStatus::BudgetExhausted: return "BudgetExhausted";
    case SearchStatus::NotFound: return "NotFound";
  }
  return "Unknown";
}

bool verify_witness(const ShatterProblem& problem, const ShatterWitness& witness) {
  const unsigned k = problem.k;
  if (witness.points.size() != k || witness.witnesses.size() != (std::size_t{1} << k)) {
    throw Error(ErrorCode::DimensionMismatch, "witness does not match k = " + std::to_string(k));
  }
  const auto& ctx = problem.shape.context();
  for (std::size_t i = 0; i < k; ++i) {
    const Index x = witness.points[i];
    if (x >= ctx.size() || !problem.domain.contains(x)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (witness.points[j] == x) return false;
    }
  }
  for (std::size_t mask = 0; mask < witness.witnesses.size(); ++mask) {
    const Index y = witness.witnesses[mask];
    if (y >= ctx.size() || !problem.witness_domain.contains(y)) return false;
    for (std::size_t i = 0; i < k; ++i) {
      const bool member = problem.shape.contains(ctx.sub_points(witness.points[i], y));
      const bool wanted = (mask >> i) & 1U;
      if (member != wanted) return false;
    }
  }
  return true;
}

ShatterWitness restrict_witness(const ShatterWitness& witness, unsigned j) {
  if (j > witness.k()) throw Error(ErrorCode::DimensionMismatch, "cannot restrict to more points than the witness has");
  ShatterWitness out;
  out.points.assign(witness.points.begin(), witness.points.begin() + j);
  out.witnesses.assign(witness.witnesses.begin(), witness.witnesses.begin() + (std::ptrdiff_t{1} << j));
  return out;
}

SearchOutcome shatter_search(const ShatterProblem& problem, const SearchStrategy& strategy, std::uint64_t budget) {
  if (std::holds_alternative<RandomStrategy>(strategy)) {
    return random_search(problem, std::get<RandomStrategy>(strategy), budget);
  }
  return exhaustive_search(problem, budget);
}

std::optional<ShatterWitness> witness_for_tuple(const ShatterProblem& problem, std::span<const Index> points) {
  if (points.size() != problem.k) throw Error(ErrorCode::DimensionMismatch, "tuple length differs from k");
  for (auto x : points) {
    if (x >= problem.shape.context().size()) throw Error(ErrorCode::InvalidArgument, "point index out of range");
  }
  const auto table = build_neighbors(problem, points);
  RegionStack stack(table, problem.k);
  std::vector<std::size_t> chosen;
  for (unsigned j = 0; j < problem.k; ++j) {
    if (!stack.extend(j, j)) return std::nullopt;
    chosen.push_back(j);
  }
  if (problem.k == 0 && problem.witness_domain.empty()) return std::nullopt;
  auto w = witness_from_stack(problem.shape.context(), table, stack, chosen);
  if (!verify_witness(problem, w)) return std::nullopt;
  return w;
}

VcBounds vc_bounds(const PointSet& shape, const PointSet& domain, const PointSet& witness_domain, unsigned k_max,
                   std::uint64_t budget) {
  if (k_max > 5) throw Error(ErrorCode::InvalidArgument, "exhaustive certification is limited to k <= 5");
  if (witness_domain.empty()) throw Error(ErrorCode::InvalidArgument, "witness domain is empty");
  VcBounds bounds;
  for (unsigned k = 0; k <= k_max; ++k) {
    const auto problem = ShatterProblem::with_witnesses(shape, domain, witness_domain, k);
    auto outcome = shatter_search(problem, ExhaustiveStrategy{}, budget);
    if (outcome.status == SearchStatus::Found) {
      bounds.lower = static_cast<int>(k);
      bounds.witness = std::move(outcome.witness);
      continue;
    }
    if (outcome.status == SearchStatus::ExhaustedNo) {
      bounds.exact = bounds.lower;
      break;
    }
    throw Error(ErrorCode::BudgetExceeded, "tuple budget exhausted at k = " + std::to_string(k));
  }
  return bounds;
}

SearchOutcome construct_shatter3(const PointSet& shape, const PointSet& domain, std::uint64_t max_cubes) {
  const auto start = Clock::now();
  require_same_context(shape, domain);
  if (shape.empty()) throw Error(ErrorCode::EmptySet, "shape is empty");
  if (!is_symmetric(shape)) throw Error(ErrorCode::NotSymmetric, "constructive pipeline requires S = -S");

  const auto& ctx = shape.context();
  const auto problem = ShatterProblem::over(shape, domain, 3);
  const auto profile = intersection_profile(shape);
  const std::uint64_t threshold = 7 + 2 * profile.max_size;
  const PointSet pruned = prune(domain, shape, threshold);
  const auto shape_members = shape.indices();

  auto adjacent = [&](Index x, Index y) { return shape.contains(ctx.sub_points(x, y)); };
  auto pattern = [&](const std::array<Index, 3>& xs, Index y) {
    unsigned mask = 0;
    for (unsigned i = 0; i < 3; ++i) mask |= adjacent(xs[i], y) ? 1U << i : 0U;
    return mask;
  };

  SearchOutcome out;
  out.status = SearchStatus::NotFound;
  std::uint64_t visited = 0;
  for_each_cube(pruned, shape, [&](const CubeWitness& cube) {
    if (++visited > max_cubes) return true;
    const auto& r = cube.rhombus.x;
    // Relabeling: x^1 = x2, x^2 = x1 + v, x^3 = x3; y^123 = x1, y^12 = x2 + v,
    // y^13 = x4, y^23 = x3 + v.
    const std::array<Index, 3> xs{r[1], cube.lifted[0], r[2]};
    ShatterWitness w;
    w.points.assign(xs.begin(), xs.end());
    w.witnesses.assign(8, 0);
    w.witnesses[0b111] = r[0];
    w.witnesses[0b011] = cube.lifted[1];
    w.witnesses[0b101] = r[3];
    w.witnesses[0b110] = cube.lifted[2];
    for (unsigned mask : {0b111U, 0b011U, 0b101U, 0b110U}) {
      if (pattern(xs, w.witnesses[mask]) != mask) return false;
    }

    const auto verts = cube.vertices();
    std::vector<Index> forbidden(verts.begin(), verts.end());
    auto allowed = [&](Index y) {
      return domain.contains(y) && std::find(forbidden.begin(), forbidden.end(), y) == forbidden.end();
    };
    auto least = [&](const std::vector<Index>& ys) {
      return *std::min_element(ys.begin(), ys.end(), [&](Index a, Index b) { return ctx.lex_rank(a) < ctx.lex_rank(b); });
    };
    for (unsigned i = 0; i < 3; ++i) {
      std::vector<Index> options;
      for (auto s : shape_members) {
        const Index y = ctx.sub_points(xs[i], s);
        if (allowed(y) && pattern(xs, y) == (1U << i)) options.push_back(y);
      }
      if (options.empty()) return false;
      w.witnesses[1U << i] = least(options);
      forbidden.push_back(w.witnesses[1U << i]);
    }
    std::optional<Index> empty_center;
    for (auto y : domain.lex_members()) {
      if (allowed(y) && pattern(xs, y) == 0) {
        empty_center = y;
        break;
      }
    }
    if (!empty_center) return false;
    w.witnesses[0] = *empty_center;

    if (!verify_witness(problem, w)) return false;
    out.status = SearchStatus::Found;
    out.witness = std::move(w);
    return true;
  });
  out.stats.tuples_examined = std::min(visited, max_cubes);
  if (!out.witness && visited > max_cubes) out.status = SearchStatus::BudgetExhausted;
  return finish(problem, std::move(out), start);
}

}  // namespace ffvc
