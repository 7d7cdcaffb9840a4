#pragma once

#include <cstdint>

#include "mdh/hierarchy.hpp"

namespace mdh {

inline constexpr std::uint64_t default_seed = 20240917;

/// Closed Ehrhart form against the brute-force composition sum for n <= n_max, d_i <= d_max, A <= A_max.
Report run_ehrhart_suite(int n_max, int d_max, long A_max);

/// Closed u-side commutator against the q-side Moyal commutator on `count` seeded pairs of random
/// singular u-monomials (derivative orders <= 3, degree <= 3), order by order up to hbar^max_order.
Report run_commutator_suite(std::uint64_t seed, int count, const TruncationSpec& window, int max_order);

/// Antisymmetry and Jacobi of the q-side Poisson bracket, and [f, g] = hbar {f, g} + O(hbar^2),
/// on `count` seeded triples of random integrated elements.
Report run_bracket_axioms_suite(std::uint64_t seed, int count);

/// Every term of [f, g-bar] has degree deg f + deg g - 1 for seeded homogeneous f, g.
Report run_degree_law_suite(std::uint64_t seed, int count);

}  // namespace mdh
