#pragma once

// Random subsets of F_p^d: sampling, the Hayes character-sum check, Monte
// Carlo over seeds, and symmetrization T = S u (-S).

#include <cstdint>
#include <string>
#include <vector>

#include "ffvc/field.hpp"
#include "ffvc/pointset.hpp"

namespace ffvc {

/// Uniform `size`-subset of F_p^d via a partial Fisher-Yates shuffle driven by
/// SplitMix64. Throws SizeOutOfRange unless 0 <= size <= p^d.
PointSet sample_subset(const FieldContext& ctx, std::uint64_t size, std::uint64_t seed);

struct HayesReport {
  std::uint64_t n = 0;        // group order
  std::uint64_t k = 0;        // |S|
  std::uint64_t m_param = 0;  // min(k, n - k)
  double phi = 0.0;           // max over m != 0 of |sum_{x in S} chi(-m.x)|
  double epsilon = 0.0;
  double bound = 0.0;  // 2 sqrt(2 (1 + eps) m log n)
  bool pass = false;
};

/// Throws DegenerateSize when S is empty or the whole group.
HayesReport hayes_check(const PointSet& s, double epsilon);

struct Quantiles {
  double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

struct TrialSummary {
  std::uint64_t trials = 0;      // requested
  std::uint64_t evaluated = 0;   // trials with a non-degenerate sample
  std::uint64_t degenerate = 0;  // skipped: sample empty or the whole group
  double pass_fraction = 0.0;    // over evaluated trials
  std::vector<double> phi;       // per evaluated trial
  std::vector<std::uint64_t> omega;  // max_{x != 0} |S cap (S - x)| per evaluated trial
  Quantiles max_intersection_quantiles;
  double beta = 0.0;
  double omega_above_fraction = 0.0;  // fraction with omega > q^beta
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> trial_seeds;  // every trial, including skipped ones
  std::string rng;
};

/// Throws InvalidArgument for trials = 0, SizeOutOfRange as sample_subset.
TrialSummary monte_carlo(const FieldContext& ctx, std::uint64_t size, std::uint64_t trials, std::uint64_t seed,
                         double epsilon, double beta);

struct SymmetrizeReport {
  PointSet T;
  std::uint64_t overlap = 0;  // |S cap (-S)|
  bool size_identity = false;  // |T| == 2|S| - overlap
};

SymmetrizeReport symmetrize(const PointSet& s);

/// T cap (T - x) is contained in the union of S cap (S - x), S cap (-S - x),
/// -S cap (S - x), -S cap (-S - x), for every x. T = S u (-S).
bool intersection_decomposition_holds(const PointSet& s);

struct VcRandomTrial {
  std::uint64_t seed = 0;
  bool s_shattered2 = false;
  bool t_shattered3 = false;
  bool verified = true;  // every Found witness re-verified
};

struct VcRandomSummary {
  std::uint64_t p = 0;
  std::vector<VcRandomTrial> trials;
  double s_success_rate = 0.0;
  double t_success_rate = 0.0;
  bool all_verified = true;
};

/// For each trial: S uniform of size p in F_p^2, T = S u (-S), exhaustive
/// search for a 2-shattering by S and a 3-shattering by T with W = E = F_p^2.
VcRandomSummary vc_random_experiment(std::uint32_t p, std::uint64_t trials, std::uint64_t seed);

}  // namespace ffvc
