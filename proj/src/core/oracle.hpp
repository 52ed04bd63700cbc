#pragma once

#include <utility>
#include <vector>

#include "core/types.hpp"

namespace clustrans {

// Independent ground truth for desk-size instances: plain enumeration of all
// k^n assignments in lexicographic order, nothing shared with the solver.

struct BruteForceResult {
  Clustering best;
  double objective = 0.0;
};

/// Argmax of c(s)^T y over all feasible assignments; ties resolve to the
/// lexicographically smallest assignment. Throws InputError when k^n
/// exceeds the budget or no assignment fits the bounds.
BruteForceResult brute_force_best(const DataSet& ds, const SiteVector& s, const SizeBounds& bounds,
                                  std::uint64_t budget);

/// Enumeration argmax at `grid`+1 evenly spaced values of lambda in [0,1]
/// under (1-lambda)c(s)+lambda c(t); returns one (lambda, argmax) per grid
/// point where the argmax changed (plus the entry for lambda=0).
std::vector<std::pair<double, Clustering>> brute_force_breakpoints(const DataSet& ds,
                                                                   const SiteVector& s,
                                                                   const SiteVector& t,
                                                                   const SizeBounds& bounds, int grid,
                                                                   std::uint64_t budget);

/// True iff no clustering of the same shape beats C under c(s).
bool exhaustive_separability_check(const DataSet& ds, const Clustering& c, const SiteVector& s,
                                   std::uint64_t budget);

}  // namespace clustrans
