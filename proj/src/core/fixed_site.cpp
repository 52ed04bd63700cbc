#include "core/fixed_site.hpp"

#include <cmath>

namespace clustrans {

namespace {

// Best objective among clusterings of exactly this shape, optionally
// returning the optimizer.
double single_shape_optimum(const DataSet& ds, const Shape& shape, const ObjectiveMatrix& obj,
                            const Config& cfg, const Clustering* warm, Clustering* out) {
  TransportModel eq(ds.size(), shape.k(), SizeBounds{shape.sizes, shape.sizes});
  OptimizeResult res = optimize(eq, obj, cfg, warm);
  Clustering best = eq.clustering_from_vertex(res.vertex);
  double val = clustering_objective(obj, best);
  if (out) *out = std::move(best);
  return val;
}

}  // namespace

Clustering step_to_next_shape(const TransportModel& model, const Clustering& c_prev,
                              const TransportVertex& adjacent, const ObjectiveMatrix& obj,
                              const Config& cfg) {
  Clustering moved = model.clustering_from_vertex(adjacent);
  Shape new_shape = moved.shape();

  // Re-optimize within the new shape, warm-started from the adjacent vertex.
  TransportModel eq(model.n(), model.k(), SizeBounds{new_shape.sizes, new_shape.sizes});
  OptimizeResult best = optimize(eq, obj, cfg, &moved);
  Clustering c_opt = eq.clustering_from_vertex(best.vertex);

  // Keep only the path of the difference graph: cycles cannot improve on
  // c_prev (it was optimal for its shape), so applying the path alone
  // reaches the same objective as c_opt while staying a single exchange.
  CdgDecomposition dec;
  try {
    dec = decompose(build_cdg(c_prev, c_opt));
  } catch (const InputError& e) {
    throw InternalError(std::string("shape step produced an inconsistent difference graph: ") +
                        e.what());
  }
  if (!dec.path) throw InternalError("shape changed but the difference graph holds no path");
  Clustering next = apply_exchange(c_prev, *dec.path);

  double got = clustering_objective(obj, next);
  double want = clustering_objective(obj, c_opt);
  if (!rel_close(got, want, 1e-7))
    throw InternalError("path-only repair lost objective value within the new shape");
  return next;
}

FixedSiteResult init_to_rad(const DataSet& ds, const Clustering& c, const SiteVector& sites,
                            const SizeBounds& bounds, const Config& cfg) {
  c.validate(ds.size());
  bounds.validate(ds.size());
  if (!bounds.contains(c.shape())) throw InputError("initial clustering violates the size bounds");
  ObjectiveMatrix obj = objective_from_sites(ds, sites);

  // The input must already be best-of-its-shape; we fail rather than
  // silently replace a non-optimal clustering.
  double own = clustering_objective(obj, c);
  double best_same_shape = single_shape_optimum(ds, c.shape(), obj, cfg, &c, nullptr);
  if (best_same_shape > own + 1e-6 * (1.0 + std::abs(own)))
    throw InputError("input clustering is not optimal for its own shape: objective gap " +
                     std::to_string(best_same_shape - own));

  TransportModel model(ds.size(), c.k, bounds);
  FixedSiteResult result;
  result.clusterings.push_back(c);
  result.objectives.push_back(own);

  DiagramSolve first = max_margin_diagram(ds, c, sites, cfg);
  result.inducing.push_back(first.diagram);
  DualWarmStart margin_warm = warm_start_duals(first);
  DualWarmStart shared_warm;

  Clustering cur = c;
  while (true) {
    BasisState state = model.basis_for_vertex(model.vertex_from_clustering(cur), cfg.tol);
    StepResult step = simplex_step(model, state, obj, cfg);
    if (step.outcome == StepOutcome::AlreadyOptimal) break;

    Clustering next = step_to_next_shape(model, cur, step.vertex, obj, cfg);
    double prev_obj = result.objectives.back();
    double next_obj = clustering_objective(obj, next);
    if (next_obj <= prev_obj + 1e-9 * (1.0 + std::abs(prev_obj)))
      throw InternalError("fixed-site step did not strictly improve the objective");

    CdgDecomposition dec = decompose(build_cdg(cur, next));
    if (!dec.path || !dec.cycles.empty())
      throw InternalError("consecutive fixed-site clusterings differ by more than one path");

    DiagramSolve sh = shared_diagram(ds, cur, next, sites, cfg, &shared_warm);
    shared_warm = warm_start_duals(sh);
    DiagramSolve ind = max_margin_diagram(ds, next, sites, cfg, &margin_warm);
    margin_warm = warm_start_duals(ind);

    result.clusterings.push_back(next);
    result.objectives.push_back(next_obj);
    result.exchanges.push_back(*dec.path);
    result.shared.push_back(sh.diagram);
    result.inducing.push_back(ind.diagram);
    cur = std::move(next);
  }
  return result;
}

}  // namespace clustrans
