#include "core/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace clustrans {

namespace {

std::vector<double> blend(const std::vector<double>& a, const std::vector<double>& b, double lam) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (1.0 - lam) * a[i] + lam * b[i];
  return r;
}

// Entering candidates are the columns whose reduced cost is negative for
// lambda + epsilon: either already negative, or zero with a negative drift.
int pick_violator(const BasisState& state, const std::vector<double>& z,
                  const std::vector<double>& dz, double tol_opt) {
  for (std::size_t jj = 0; jj < state.nonbasic().size(); ++jj) {
    if (z[jj] < -tol_opt) return state.nonbasic()[jj];
    if (z[jj] <= tol_opt && dz[jj] < -tol_opt) return state.nonbasic()[jj];
  }
  return -1;
}

constexpr long kWalkCap = 200000;

}  // namespace

AdvanceResult advance_to_breakpoint(const TransportModel& model, BasisState& state,
                                    const ObjectiveMatrix& c_s, const ObjectiveMatrix& c_t,
                                    double lambda_cur, const Config& cfg) {
  std::vector<double> obj_s = model.objective_vector(c_s);
  std::vector<double> obj_t = model.objective_vector(c_t);
  std::vector<double> dobj(obj_s.size());
  for (std::size_t i = 0; i < obj_s.size(); ++i) dobj[i] = obj_t[i] - obj_s[i];

  double lambda = lambda_cur;
  for (long guard = 0; guard < kWalkCap; ++guard) {
    std::vector<double> c_lam = blend(obj_s, obj_t, lambda);
    std::vector<double> z = state.reduced_costs(c_lam);
    std::vector<double> dz = state.reduced_costs(dobj);
    double delta = infinity();
    for (std::size_t jj = 0; jj < z.size(); ++jj) {
      if (dz[jj] >= -cfg.tol.opt) continue;
      double zj = std::abs(z[jj]) <= cfg.tol.opt ? 0.0 : std::max(z[jj], 0.0);
      delta = std::min(delta, zj / (-dz[jj]));
    }
    if (delta == infinity() || lambda + delta > 1.0 + 1e-12) return {false, lambda, {}};
    lambda = std::min(lambda + delta, 1.0);

    // Execute the basis changes due at this breakpoint; stop as soon as the
    // walk leaves the vertex. Purely degenerate changes fall through and the
    // scan for the next breakpoint resumes.
    c_lam = blend(obj_s, obj_t, lambda);
    for (long inner = 0; inner < kWalkCap; ++inner) {
      z = state.reduced_costs(c_lam);
      dz = state.reduced_costs(dobj);
      int q = pick_violator(state, z, dz, cfg.tol.opt);
      if (q < 0) break;
      std::vector<double> dir = state.ftran(q);
      BasisState::Ratio rt = state.ratio_test(dir);
      if (rt.unbounded) throw InternalError("unbounded direction on a bounded polytope");
      state.pivot(q, rt.leaving_pos, dir);
      if (rt.step > cfg.tol.feas) return {true, lambda, model.vertex_from_state(state)};
    }
  }
  throw InternalError("parametric walk exceeded its iteration cap");
}

namespace {

struct WalkContext {
  const DataSet& ds;
  const SiteVector& s;
  const SiteVector& t;
  const Config& cfg;
  RadToRadResult& result;
  DualWarmStart shared_warm;
  DualWarmStart margin_warm;

  // Records a completed step and back-fills the inducing diagram of the
  // previous clustering, whose departure site vector is only known now.
  void emit(double lambda, const Clustering& prev, Clustering next) {
    CdgDecomposition dec = decompose(build_cdg(prev, next));
    Exchange ex;
    if (dec.path && dec.cycles.empty())
      ex = *dec.path;
    else if (!dec.path && dec.cycles.size() == 1)
      ex = dec.cycles.front();
    else
      throw InternalError("adjacent vertices differ by more than a single exchange");

    SiteVector s_lam = interpolate(s, t, lambda);
    DiagramSolve sh = shared_diagram(ds, prev, next, s_lam, cfg, &shared_warm);
    shared_warm = warm_start_duals(sh);

    if (!result.steps.empty()) {
      TransitionStep& last = result.steps.back();
      SiteVector mid = interpolate(s, t, 0.5 * (last.lambda + lambda));
      DiagramSolve ind = max_margin_diagram(ds, last.clustering, mid, cfg, &margin_warm);
      margin_warm = warm_start_duals(ind);
      last.inducing = ind.diagram;
    }

    TransitionStep step;
    step.lambda = lambda;
    step.clustering = std::move(next);
    step.exchange = std::move(ex);
    step.shared = sh.diagram;
    result.steps.push_back(std::move(step));
  }
};

// At lambda = 1 several vertices can be optimal simultaneously. Walk the
// optimal face toward the target along zero-cost edges, preferring columns
// that the target assignment sets to one.
void resolve_terminal_ties(const TransportModel& model, BasisState& state, WalkContext& ctx,
                           Clustering& cur, const Clustering& target,
                           const ObjectiveMatrix& c_t) {
  std::vector<double> obj_t = model.objective_vector(c_t);
  std::vector<double> w(model.lp().cols, 0.0);
  for (int j = 0; j < model.n(); ++j) w[model.yvar(target.assignment[j], j)] = 1.0;

  for (long guard = 0; guard < kWalkCap && !(cur == target); ++guard) {
    std::vector<double> z = state.reduced_costs(obj_t);
    std::vector<double> zw = state.reduced_costs(w);
    int q = -1;
    for (std::size_t jj = 0; jj < state.nonbasic().size(); ++jj)
      if (std::abs(z[jj]) <= ctx.cfg.tol.opt && zw[jj] < -ctx.cfg.tol.opt) {
        q = state.nonbasic()[jj];
        break;
      }
    if (q < 0)
      throw InputError(
          "could not reach the target clustering at lambda = 1: the terminal optimal face is "
          "ambiguous");
    std::vector<double> dir = state.ftran(q);
    BasisState::Ratio rt = state.ratio_test(dir);
    if (rt.unbounded) throw InternalError("unbounded direction on a bounded polytope");
    state.pivot(q, rt.leaving_pos, dir);
    if (rt.step > ctx.cfg.tol.feas) {
      Clustering next = model.clustering_from_vertex(model.vertex_from_state(state));
      ctx.emit(1.0, cur, next);
      cur = std::move(next);
    }
  }
  if (!(cur == target))
    throw InternalError("terminal tie resolution exceeded its iteration cap");
}

}  // namespace

RadToRadResult rad_to_rad(const DataSet& ds, const Clustering& c_s_rad, const Clustering& c_t_rad,
                          const SiteVector& s, const SiteVector& t, const SizeBounds& bounds,
                          const Config& cfg) {
  c_s_rad.validate(ds.size());
  c_t_rad.validate(ds.size());
  TransportModel model(ds.size(), c_s_rad.k, bounds);
  ObjectiveMatrix c_s = objective_from_sites(ds, s);
  ObjectiveMatrix c_t = objective_from_sites(ds, t);

  // Entry checks: both endpoints must already be optimal over the bounded
  // polytope for their own sites.
  for (auto [clustering, obj, name] :
       {std::tuple{&c_s_rad, &c_s, "initial"}, std::tuple{&c_t_rad, &c_t, "target"}}) {
    OptimizeResult best = optimize(model, *obj, cfg);
    double mine = clustering_objective(*obj, *clustering);
    double opt = clustering_objective(*obj, model.clustering_from_vertex(best.vertex));
    if (opt > mine + 1e-6 * (1.0 + std::abs(mine)))
      throw InputError(std::string(name) + " clustering is not radial for its sites: objective gap " +
                       std::to_string(opt - mine));
  }

  RadToRadResult result;
  result.start = c_s_rad;
  if (c_s_rad == c_t_rad) return result;

  BasisState state = model.basis_for_vertex(model.vertex_from_clustering(c_s_rad), cfg.tol);
  std::vector<double> obj_s_vec = model.objective_vector(c_s);
  primal_solve(state, obj_s_vec, controls_from(cfg), cfg.tol);
  if (!(model.clustering_from_vertex(model.vertex_from_state(state)) == c_s_rad))
    throw InternalError("cleaning the start basis moved off a verified optimal vertex");

  WalkContext ctx{ds, s, t, cfg, result, {}, {}};
  Clustering cur = c_s_rad;
  double lambda = 0.0;
  while (!(cur == c_t_rad)) {
    AdvanceResult adv = advance_to_breakpoint(model, state, c_s, c_t, lambda, cfg);
    if (!adv.moved) {
      resolve_terminal_ties(model, state, ctx, cur, c_t_rad, c_t);
      break;
    }
    lambda = adv.lambda;
    Clustering next = model.clustering_from_vertex(adv.vertex);
    ctx.emit(lambda, cur, next);
    cur = std::move(next);
  }
  return result;
}

}  // namespace clustrans
