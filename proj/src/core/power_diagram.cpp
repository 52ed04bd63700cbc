#include "core/power_diagram.hpp"

#include <algorithm>
#include <cmath>

#include "core/simplex.hpp"

namespace clustrans {

namespace {

constexpr double kCoincidentSiteTol = 1e-12;

double site_distance(const SiteVector& s, int i, int l) {
  double dist = 0.0;
  for (int coord = 0; coord < s.d; ++coord) {
    double diff = s.site(l)[coord] - s.site(i)[coord];
    dist += diff * diff;
  }
  return std::sqrt(dist);
}

struct PairRow {
  int source = 0;  // cluster whose items the row keeps inside their cell
  int target = 0;
  int which = 0;  // 0 = primary clustering, 1 = previous one (shared systems)
  double rhs = 0.0;
  double eps_coeff = 0.0;
};

// Variables: gamma_i (i >= 2) split into +/- parts, one epsilon, one surplus
// per row. gamma_1 is fixed to zero by omission.
struct DiagramLp {
  int k = 0;
  std::vector<PairRow> rows;
  LpProblem lp;
  std::uint64_t structure = 0;

  int gamma_plus(int i) const { return i - 1; }
  int gamma_minus(int i) const { return (k - 1) + i - 1; }
  int eps_var() const { return 2 * (k - 1); }
  int surplus_var(int r) const { return 2 * (k - 1) + 1 + r; }

  void assemble() {
    const int m = static_cast<int>(rows.size());
    lp.rows = m;
    lp.cols = 2 * (k - 1) + 1 + m;
    lp.a.assign(static_cast<std::size_t>(lp.cols) * m, 0.0);
    lp.b.resize(m);
    structure = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) { structure = (structure ^ v) * 1099511628211ull; };
    mix(static_cast<std::uint64_t>(k));
    for (int r = 0; r < m; ++r) {
      const PairRow& row = rows[r];
      if (row.target != 0) {
        lp.at(r, gamma_plus(row.target)) += 1.0;
        lp.at(r, gamma_minus(row.target)) += -1.0;
      }
      if (row.source != 0) {
        lp.at(r, gamma_plus(row.source)) += -1.0;
        lp.at(r, gamma_minus(row.source)) += 1.0;
      }
      lp.at(r, eps_var()) = -row.eps_coeff;
      lp.at(r, surplus_var(r)) = -1.0;
      lp.b[r] = row.rhs;
      mix(static_cast<std::uint64_t>(row.source) * 131 + row.target * 7 + row.which + 3);
    }
  }
};

double pair_max(const DataSet& ds, const Clustering& c, const SiteVector& s, int i, int l,
                bool& empty) {
  // max over x in C_i of (s_l - s_i)^T x
  double best = 0.0;
  empty = true;
  for (int j = 0; j < ds.size(); ++j) {
    if (c.assignment[j] != i) continue;
    double v = dot(ds.point(j), s.site(l)) - dot(ds.point(j), s.site(i));
    if (empty || v > best) best = v;
    empty = false;
  }
  return best;
}

void append_pair_rows(DiagramLp& d, const DataSet& ds, const Clustering& c, const SiteVector& s,
                      int which, bool with_eps) {
  for (int i = 0; i < d.k; ++i)
    for (int l = 0; l < d.k; ++l) {
      if (i == l) continue;
      bool empty = false;
      double m = pair_max(ds, c, s, i, l, empty);
      if (empty) continue;  // an empty cluster constrains nothing as a source
      PairRow row;
      row.source = i;
      row.target = l;
      row.which = which;
      row.rhs = m;
      if (with_eps) row.eps_coeff = site_distance(s, i, l);
      d.rows.push_back(row);
    }
}

PowerDiagram diagram_from_solution(const DiagramLp& d, const SiteVector& sites,
                                   const std::vector<double>& x, std::optional<double> margin) {
  PowerDiagram pd;
  pd.sites = sites;
  pd.gammas.assign(d.k, 0.0);
  for (int i = 1; i < d.k; ++i) pd.gammas[i] = x[d.gamma_plus(i)] - x[d.gamma_minus(i)];
  pd.weights.assign(d.k, 0.0);
  double base = squared_norm(sites.site(0));  // gamma_1 = 0
  for (int i = 0; i < d.k; ++i)
    pd.weights[i] = squared_norm(sites.site(i)) - 2.0 * pd.gammas[i] - base;
  pd.margin = margin;
  return pd;
}

struct LpRun {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> solution;
  std::vector<int> basic;
  int pivots = 0;
  bool warm_used = false;
};

LpRun run_diagram_lp(const DiagramLp& d, std::span<const double> c, const Config& cfg,
                     const DualWarmStart* warm) {
  LpRun run;
  if (warm && warm->structure == d.structure &&
      static_cast<int>(warm->basic.size()) == d.lp.rows) {
    try {
      BasisState state(&d.lp, cfg.tol, warm->basic);
      std::vector<double> z = state.reduced_costs(c);
      bool dual_ok = std::all_of(z.begin(), z.end(), [&](double v) { return v >= -cfg.tol.opt; });
      if (dual_ok) {
        SolveOutcome out = dual_solve(state, c, cfg.tol);
        if (out.status == LpStatus::Optimal) {
          run.status = LpStatus::Optimal;
          run.solution = state.full_solution();
          run.basic = state.basic();
          run.pivots = out.pivots;
          run.warm_used = true;
          return run;
        }
        if (out.status == LpStatus::Infeasible) {
          run.status = LpStatus::Infeasible;
          run.pivots = out.pivots;
          run.warm_used = true;
          return run;
        }
      }
    } catch (const InternalError&) {
      // Basis no longer factorizes for the new coefficients; fall through.
    }
  }
  SolveControls ctl;
  ctl.rule = cfg.pivot;
  ColdSolve cold = cold_solve(d.lp, c, ctl, cfg.tol);
  run.status = cold.status;
  run.pivots = cold.pivots;
  if (cold.state) {
    run.solution = cold.state->full_solution();
    run.basic = cold.state->basic();
  }
  return run;
}

}  // namespace

double boundary_tolerance(double site_distance) { return 1e-6 * (1.0 + site_distance); }

DiagramSolve max_margin_diagram(const DataSet& ds, const Clustering& c, const SiteVector& sites,
                                const Config& cfg, const DualWarmStart* warm) {
  c.validate(ds.size());
  if (sites.k != c.k || sites.d != ds.dim()) throw InputError("site vector does not match instance");
  if (c.k == 1) {
    PowerDiagram pd;
    pd.sites = sites;
    pd.gammas = {0.0};
    pd.weights = {0.0};
    pd.margin = infinity();
    return {std::move(pd), infinity(), 0, false, {}};
  }
  for (int i = 0; i < sites.k; ++i)
    for (int l = i + 1; l < sites.k; ++l)
      if (site_distance(sites, i, l) <= kCoincidentSiteTol)
        throw InputError("margin diagram requires pairwise distinct sites");

  DiagramLp d;
  d.k = c.k;
  append_pair_rows(d, ds, c, sites, 0, true);
  d.assemble();
  std::vector<double> obj(d.lp.cols, 0.0);
  obj[d.eps_var()] = 1.0;

  LpRun run = run_diagram_lp(d, obj, cfg, warm);
  if (run.status == LpStatus::Infeasible)
    throw InputError("no power diagram with these sites induces the clustering");
  bool unbounded = run.status == LpStatus::Unbounded;
  double eps = unbounded ? infinity() : run.solution[d.eps_var()];
  DiagramSolve solve;
  solve.diagram = diagram_from_solution(d, sites, run.solution, eps);
  solve.epsilon = eps;
  solve.pivots = run.pivots;
  solve.warm_used = run.warm_used;
  solve.warm = {run.basic, d.structure};
  return solve;
}

DiagramSolve shared_diagram(const DataSet& ds, const Clustering& c_prev, const Clustering& c_next,
                            const SiteVector& sites, const Config& cfg, const DualWarmStart* warm) {
  c_prev.validate(ds.size());
  c_next.validate(ds.size());
  if (c_prev.k != c_next.k) throw InputError("clusterings disagree on cluster count");
  if (sites.k != c_next.k || sites.d != ds.dim()) throw InputError("site vector does not match instance");
  if (c_next.k == 1) {
    PowerDiagram pd;
    pd.sites = sites;
    pd.gammas = {0.0};
    pd.weights = {0.0};
    return {std::move(pd), 0.0, 0, false, {}};
  }

  DiagramLp d;
  d.k = c_next.k;
  append_pair_rows(d, ds, c_next, sites, 0, false);
  append_pair_rows(d, ds, c_prev, sites, 1, false);
  d.assemble();
  std::vector<double> obj(d.lp.cols, 0.0);

  LpRun run = run_diagram_lp(d, obj, cfg, warm);
  if (run.status == LpStatus::Infeasible)
    throw InputError(
        "no shared power diagram exists: the clusterings are not equally compatible with these "
        "sites");
  if (run.status == LpStatus::Unbounded) throw InternalError("feasibility system reported unbounded");
  DiagramSolve solve;
  solve.diagram = diagram_from_solution(d, sites, run.solution, std::nullopt);
  solve.pivots = run.pivots;
  solve.warm_used = run.warm_used;
  solve.warm = {run.basic, d.structure};
  return solve;
}

DualWarmStart warm_start_duals(const DiagramSolve& solve) { return solve.warm; }

bool induces(const DataSet& ds, const PowerDiagram& pd, const Clustering& c, bool strict) {
  for (int j = 0; j < ds.size(); ++j) {
    int i = c.assignment[j];
    for (int l = 0; l < c.k; ++l) {
      if (l == i) continue;
      double lhs = dot(ds.point(j), pd.sites.site(l)) - dot(ds.point(j), pd.sites.site(i));
      double slack = (pd.gammas[l] - pd.gammas[i]) - lhs;
      double tol = boundary_tolerance(site_distance(pd.sites, i, l));
      if (strict ? slack <= tol : slack < -tol) return false;
    }
  }
  return true;
}

bool moved_items_on_boundary(const DataSet& ds, const PowerDiagram& pd, const Clustering& c_prev,
                             const Clustering& c_next) {
  for (int j = 0; j < ds.size(); ++j) {
    int a = c_prev.assignment[j], b = c_next.assignment[j];
    if (a == b) continue;
    double lhs = dot(ds.point(j), pd.sites.site(b)) - dot(ds.point(j), pd.sites.site(a));
    double gap = lhs - (pd.gammas[b] - pd.gammas[a]);
    if (std::abs(gap) > boundary_tolerance(site_distance(pd.sites, a, b))) return false;
  }
  return true;
}

}  // namespace clustrans
