#pragma once

// Reproduction presets: the published F_11 shattering table, the x-tuples for
// F_17, F_23 and F_29, a random conic census and a character-sum suite.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffvc/report.hpp"

namespace ffvc {

struct PresetResult {
  bool pass = false;
  Json detail;
};

/// The four points of the published table for p in {11, 17, 23, 29}.
std::vector<std::array<std::uint32_t, 2>> published_x_tuple(std::uint32_t p);

/// The fifteen published centers over F_11 keyed by subset bitmask (bit i-1 <=> x^i).
std::vector<std::pair<unsigned, std::array<std::uint32_t, 2>>> published_f11_centers();

/// Checks the published centers against the symmetrized parabola and fills in
/// y^empty as the least point of the plane on none of the four translates.
PresetResult reproduce_f11_table();

/// Searches the witness regions of the published x-tuple over F_p, W = F_p^2.
PresetResult reproduce_x_tuple(std::uint32_t p);

/// `count` random conics with det2 != 0 and det3 != 0 over F_p: point counts,
/// Fourier decay max|S^(m)| <= 2 q^{-3/2} and translate intersections <= 2.
PresetResult conic_census(std::uint32_t p, std::uint64_t count, std::uint64_t seed);

/// Gauss sums for all k != 0, Kloosterman sums for all a, b != 0 and `polys`
/// random polynomials each of degree 3 and 4 (skipping degrees divisible by p).
PresetResult weil_suite(std::uint32_t p, std::uint64_t polys, std::uint64_t seed);

}  // namespace ffvc
