#pragma once

#include <optional>
#include <vector>

#include "core/types.hpp"

namespace clustrans {

// Polyhedral cell complex given by sites plus per-cell offsets. Cell i is
// { x : (s_l - s_i)^T x <= gamma_l - gamma_i  for all l != i }; the additive
// weights describe the same cells as w_i = |s_i|^2 - 2 gamma_i, shifted so
// that w_1 = 0.
struct PowerDiagram {
  SiteVector sites;
  std::vector<double> gammas;   // gammas[0] == 0
  std::vector<double> weights;  // weights[0] == 0
  std::optional<double> margin;  // Euclidean margin; +infinity when unconstrained
};

// Optimal basis of a previous diagram LP; valid as a warm start for the
// next one whenever only right-hand sides changed.
struct DualWarmStart {
  std::vector<int> basic;
  std::uint64_t structure = 0;
};

struct DiagramSolve {
  PowerDiagram diagram;
  double epsilon = 0.0;
  int pivots = 0;
  bool warm_used = false;
  DualWarmStart warm;  // basis of this solve, reusable for the next one
};

/// Offsets maximizing the minimum Euclidean distance of any item to the
/// boundary of its cell, for fixed sites. Requires pairwise distinct sites
/// and a clustering that some diagram with these sites induces.
DiagramSolve max_margin_diagram(const DataSet& ds, const Clustering& c, const SiteVector& sites,
                                const Config& cfg, const DualWarmStart* warm = nullptr);

/// Offsets of a single diagram inducing both clusterings (items that moved
/// between them end up on cell boundaries). Infeasibility means the two
/// clusterings are not equally good for these sites.
DiagramSolve shared_diagram(const DataSet& ds, const Clustering& c_prev, const Clustering& c_next,
                            const SiteVector& sites, const Config& cfg,
                            const DualWarmStart* warm = nullptr);

DualWarmStart warm_start_duals(const DiagramSolve& solve);

/// Scale-aware tolerance for cell-boundary comparisons.
double boundary_tolerance(double site_distance);

/// Every item of cluster i satisfies all cell-i inequalities (strictly, with
/// slack above the boundary tolerance, when `strict`).
bool induces(const DataSet& ds, const PowerDiagram& pd, const Clustering& c, bool strict);

/// Every item assigned differently by the two clusterings lies on the
/// separating hyperplane between its two cells.
bool moved_items_on_boundary(const DataSet& ds, const PowerDiagram& pd, const Clustering& c_prev,
                             const Clustering& c_next);

}  // namespace clustrans
