#pragma once

#include "mimtilt/pmf.hpp"
#include "mimtilt/solver.hpp"

namespace mimtilt {

/// Result of a brute-force KL minimization, either over a simplex lattice or
/// after local refinement. `grid_step` is the feasibility slack of the
/// argmin: the lattice spacing for grid results, 1e-9 for refined results.
struct GridMinimizerResult {
  Pmf argmin;
  double kl_value;  // D(argmin || source), nats
  double grid_step;
  long feasible_points_checked;
};

/// Exact probability that the empirical type of n draws lands in
/// {T : sum P(a) T(a) <= beta}, by exhaustive composition enumeration.
struct TypeEnumeration {
  long n;
  double exact_probability;
  long num_types_in_event;
};

/// Exhaustive scan of the simplex lattice with the given spacing.
/// Inequality mode keeps lattice points with sum(P q) <= beta; equality mode
/// keeps |sum(P q) - beta| <= step * (p_max - p_min). Ties break to the
/// lexicographically smallest probability vector. Alphabets are capped at 4
/// and the lattice at ~5e8 points.
GridMinimizerResult grid_minimize_kl(const Pmf& source, const ConstraintSpec& spec,
                                     double grid_step);

/// Polish a feasible seed by projected gradient descent on D(.||P) with
/// exact Euclidean projection onto the constrained simplex. Stops when the
/// improvement drops below 1e-13 or after 1e5 iterations; the result is
/// never worse than the seed.
GridMinimizerResult refine_minimize_kl(const Pmf& source, const ConstraintSpec& spec,
                                       const Pmf& seed);

/// Enumerate all compositions of n over the alphabet (capped at |X| <= 3,
/// n <= 12) and sum the exact multinomial probabilities of types inside the
/// constraint set.
TypeEnumeration enumerate_types(const Pmf& source, const ConstraintSpec& spec, long n);

}  // namespace mimtilt
