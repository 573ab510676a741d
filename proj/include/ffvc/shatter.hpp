#pragma once

// Shattering by translates of a fixed shape S: the class {h_y : y in W} with
// h_y(x) = [x - y in S], evaluated on points drawn from E.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ffvc/field.hpp"
#include "ffvc/pointset.hpp"

namespace ffvc {

struct ShatterProblem {
  PointSet shape;
  PointSet domain;          ///< E: where the shattered points live
  PointSet witness_domain;  ///< W: where the centers y live
  unsigned k = 0;

  /// W = E, as in the hypothesis class H_S(E). Throws ContextMismatch.
  static ShatterProblem over(PointSet shape, PointSet domain, unsigned k);
  static ShatterProblem with_witnesses(PointSet shape, PointSet domain, PointSet witness_domain, unsigned k);
};

/// witnesses[I] is y^I for the subset I encoded as a bitmask (bit i <=> point i).
struct ShatterWitness {
  std::vector<Index> points;
  std::vector<Index> witnesses;

  unsigned k() const noexcept { return static_cast<unsigned>(points.size()); }
};

/// Checks x^i - y^I in S <=> i in I for every i and I, distinct points,
/// points in E and centers in W. Throws DimensionMismatch if the witness
/// shape does not match problem.k.
bool verify_witness(const ShatterProblem& problem, const ShatterWitness& witness);

/// The witness for the first j points (j <= k), taken from the masks below 2^j.
ShatterWitness restrict_witness(const ShatterWitness& witness, unsigned j);

enum class SearchStatus { Found, ExhaustedNo, BudgetExhausted, NotFound };

const char* to_string(SearchStatus status) noexcept;

struct SearchStats {
  std::uint64_t tuples_examined = 0;
  double elapsed_seconds = 0.0;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::ExhaustedNo;
  std::optional<ShatterWitness> witness;
  SearchStats stats;
};

struct ExhaustiveStrategy {};
struct RandomStrategy {
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
};
using SearchStrategy = std::variant<ExhaustiveStrategy, RandomStrategy>;

inline constexpr std::uint64_t kDefaultTupleBudget = 1'000'000'000;

/// Exhaustive search enumerates k-subsets of E in lexicographic order,
/// abandoning a prefix as soon as one of its witness regions is empty, and
/// returns the least shattered tuple with the least center in each region.
/// Every Found witness has passed verify_witness.
SearchOutcome shatter_search(const ShatterProblem& problem, const SearchStrategy& strategy = ExhaustiveStrategy{},
                             std::uint64_t budget = kDefaultTupleBudget);

/// Searches only the 2^k witness regions of a given tuple; the least center
/// is taken in each region.
std::optional<ShatterWitness> witness_for_tuple(const ShatterProblem& problem, std::span<const Index> points);

struct VcBounds {
  int lower = 0;
  std::optional<int> exact;
  std::optional<ShatterWitness> witness;  ///< certifies `lower`
};

/// Runs exhaustive searches for k = 0, 1, ..., k_max (k_max <= 5). Throws
/// BudgetExceeded if a search runs out of budget, InvalidArgument if W is empty.
VcBounds vc_bounds(const PointSet& shape, const PointSet& domain, const PointSet& witness_domain, unsigned k_max,
                   std::uint64_t budget = kDefaultTupleBudget);

/// Constructive 3-shattering for symmetric S with W = E: prune E to E_M with
/// M = 7 + 2 max|S cap (S - v)|, build a cube minus a vertex inside E_M,
/// relabel it as x^1, x^2, x^3 and the pair/triple centers, then pick y^1,
/// y^2, y^3 and y^empty greedily. Cubes are tried in pigeonhole order until
/// one completes. Throws NotSymmetric or EmptySet.
SearchOutcome construct_shatter3(const PointSet& shape, const PointSet& domain,
                                 std::uint64_t max_cubes = kDefaultTupleBudget);

}  // namespace ffvc
