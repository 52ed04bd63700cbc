#include "core/transport.hpp"

#include <algorithm>
#include <cmath>

namespace clustrans {

TransportModel::TransportModel(int n, int k, SizeBounds bounds)
    : n_(n), k_(k), bounds_(std::move(bounds)) {
  if (static_cast<int>(bounds_.lower.size()) != k_) throw InputError("bounds do not match cluster count");
  bounds_.validate(n_);
  lp_.rows = n_ + 2 * k_;
  lp_.cols = n_ * k_ + 2 * k_;
  lp_.a.assign(static_cast<std::size_t>(lp_.cols) * lp_.rows, 0.0);
  lp_.b.assign(lp_.rows, 0.0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < n_; ++j) {
      lp_.at(j, yvar(i, j)) = 1.0;
      lp_.at(n_ + i, yvar(i, j)) = 1.0;
      lp_.at(n_ + k_ + i, yvar(i, j)) = 1.0;
    }
  for (int j = 0; j < n_; ++j) lp_.b[j] = 1.0;
  for (int i = 0; i < k_; ++i) {
    lp_.at(n_ + i, lower_var(i)) = -1.0;
    lp_.b[n_ + i] = bounds_.lower[i];
    lp_.at(n_ + k_ + i, upper_var(i)) = 1.0;
    lp_.b[n_ + k_ + i] = bounds_.upper[i];
  }
}

std::vector<double> TransportModel::objective_vector(const ObjectiveMatrix& c) const {
  if (c.k != k_ || c.n != n_) throw InputError("objective matrix does not match polytope");
  std::vector<double> obj(lp_.cols, 0.0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < n_; ++j) obj[yvar(i, j)] = c.at(i, j);
  return obj;
}

TransportVertex TransportModel::vertex_from_clustering(const Clustering& c) const {
  c.validate(n_);
  if (c.k != k_) throw InputError("clustering cluster count does not match polytope");
  Shape shape = c.shape();
  if (!bounds_.contains(shape)) throw InputError("clustering shape violates the size bounds");
  TransportVertex v;
  v.y.assign(static_cast<std::size_t>(n_) * k_, 0);
  for (int j = 0; j < n_; ++j) v.y[yvar(c.assignment[j], j)] = 1;
  v.lower_slack.resize(k_);
  v.upper_slack.resize(k_);
  for (int i = 0; i < k_; ++i) {
    v.lower_slack[i] = shape.sizes[i] - bounds_.lower[i];
    v.upper_slack[i] = bounds_.upper[i] - shape.sizes[i];
  }
  return v;
}

Clustering TransportModel::clustering_from_vertex(const TransportVertex& v) const {
  Clustering c;
  c.k = k_;
  c.assignment.assign(n_, -1);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < k_; ++i)
      if (v.y[yvar(i, j)] == 1) {
        if (c.assignment[j] >= 0) throw InternalError("vertex assigns an item twice");
        c.assignment[j] = i;
      }
    if (c.assignment[j] < 0) throw InternalError("vertex leaves an item unassigned");
  }
  return c;
}

BasisState TransportModel::basis_for_vertex(const TransportVertex& v, Tolerances tol) const {
  const int m = lp_.rows;
  // Candidate order: positive columns first (they must all enter), then
  // degenerate slacks, then the remaining y columns.
  std::vector<int> candidates;
  int positive = 0;
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < n_; ++j)
      if (v.y[yvar(i, j)] == 1) candidates.push_back(yvar(i, j));
  for (int i = 0; i < k_; ++i)
    if (v.lower_slack[i] > 0) candidates.push_back(lower_var(i));
  for (int i = 0; i < k_; ++i)
    if (v.upper_slack[i] > 0) candidates.push_back(upper_var(i));
  positive = static_cast<int>(candidates.size());
  for (int i = 0; i < k_; ++i)
    if (v.lower_slack[i] == 0) candidates.push_back(lower_var(i));
  for (int i = 0; i < k_; ++i)
    if (v.upper_slack[i] == 0) candidates.push_back(upper_var(i));
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < n_; ++j)
      if (v.y[yvar(i, j)] == 0) candidates.push_back(yvar(i, j));

  // Greedy rank augmentation by incremental elimination.
  std::vector<int> basis;
  std::vector<std::vector<double>> pivots;  // normalized eliminated columns
  std::vector<int> pivot_row;
  std::vector<bool> row_used(m, false);
  for (std::size_t ci = 0; ci < candidates.size() && static_cast<int>(basis.size()) < m; ++ci) {
    int var = candidates[ci];
    auto col = lp_.column(var);
    std::vector<double> w(col.begin(), col.end());
    for (std::size_t p = 0; p < pivots.size(); ++p) {
      double f = w[pivot_row[p]];
      if (f == 0.0) continue;
      for (int r = 0; r < m; ++r) w[r] -= f * pivots[p][r];
    }
    int best_row = -1;
    double best = 1e-7;
    for (int r = 0; r < m; ++r) {
      if (row_used[r]) continue;
      if (std::abs(w[r]) > best) {
        best = std::abs(w[r]);
        best_row = r;
      }
    }
    if (best_row < 0) {
      if (static_cast<int>(ci) < positive)
        throw InternalError("positive vertex columns are linearly dependent");
      continue;
    }
    double p = w[best_row];
    for (int r = 0; r < m; ++r) w[r] /= p;
    pivots.push_back(std::move(w));
    pivot_row.push_back(best_row);
    row_used[best_row] = true;
    basis.push_back(var);
  }
  if (static_cast<int>(basis.size()) != m) throw InternalError("could not complete a basis for the vertex");
  std::sort(basis.begin(), basis.end());
  return BasisState(&lp_, tol, std::move(basis));
}

TransportVertex TransportModel::vertex_from_state(const BasisState& state) const {
  std::vector<double> x = state.full_solution();
  TransportVertex v;
  v.y.assign(static_cast<std::size_t>(n_) * k_, 0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < n_; ++j) {
      double val = x[yvar(i, j)];
      long r = std::lround(val);
      if (std::abs(val - r) > 1e-7 || (r != 0 && r != 1))
        throw InternalError("fractional assignment value in a basic solution");
      v.y[yvar(i, j)] = static_cast<int>(r);
    }
  // Exact integer recheck of every constraint row.
  std::vector<int> sizes(k_, 0);
  for (int j = 0; j < n_; ++j) {
    int assigned = 0;
    for (int i = 0; i < k_; ++i) assigned += v.y[yvar(i, j)];
    if (assigned != 1) throw InternalError("partition row violated after rounding");
  }
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < n_; ++j) sizes[i] += v.y[yvar(i, j)];
  v.lower_slack.resize(k_);
  v.upper_slack.resize(k_);
  for (int i = 0; i < k_; ++i) {
    v.lower_slack[i] = sizes[i] - bounds_.lower[i];
    v.upper_slack[i] = bounds_.upper[i] - sizes[i];
    if (v.lower_slack[i] < 0 || v.upper_slack[i] < 0)
      throw InternalError("cluster size bound violated after rounding");
    if (std::abs(x[lower_var(i)] - v.lower_slack[i]) > 1e-6 ||
        std::abs(x[upper_var(i)] - v.upper_slack[i]) > 1e-6)
      throw InternalError("slack values inconsistent with the rounded assignment");
  }
  return v;
}

SolveControls controls_from(const Config& cfg) {
  SolveControls ctl;
  ctl.rule = cfg.pivot;
  return ctl;
}

namespace {

Clustering greedy_feasible(int n, int k, const SizeBounds& bounds) {
  Clustering c;
  c.k = k;
  c.assignment.reserve(n);
  for (int i = 0; i < k; ++i)
    for (int cnt = 0; cnt < bounds.lower[i]; ++cnt) c.assignment.push_back(i);
  int i = 0;
  while (static_cast<int>(c.assignment.size()) < n) {
    Shape s;
    s.sizes.assign(k, 0);
    for (int a : c.assignment) ++s.sizes[a];
    while (i < k && s.sizes[i] >= bounds.upper[i]) ++i;
    if (i >= k) throw InputError("size bounds admit no clustering");
    c.assignment.push_back(i);
  }
  return c;
}

}  // namespace

OptimizeResult optimize(const TransportModel& model, const ObjectiveMatrix& c, const Config& cfg,
                        const Clustering* warm_start) {
  Clustering start =
      warm_start ? *warm_start : greedy_feasible(model.n(), model.k(), model.bounds());
  TransportVertex v0 = model.vertex_from_clustering(start);
  BasisState state = model.basis_for_vertex(v0, cfg.tol);
  std::vector<double> obj = model.objective_vector(c);
  SolveOutcome out = primal_solve(state, obj, controls_from(cfg), cfg.tol);
  if (out.status != LpStatus::Optimal)
    throw InternalError("maximization over a bounded polytope reported unbounded");
  TransportVertex v = model.vertex_from_state(state);
  return {std::move(v), std::move(state), out.pivots};
}

StepResult simplex_step(const TransportModel& model, BasisState& state, const ObjectiveMatrix& c,
                        const Config& cfg) {
  std::vector<double> obj = model.objective_vector(c);
  const int bland_after = 2 * model.lp().rows;
  bool forced_bland = false;
  int degen_run = 0;
  long guard = 0;
  while (true) {
    std::vector<double> z = state.reduced_costs(obj);
    bool bland = forced_bland || cfg.pivot == PivotRule::Bland;
    int q = -1;
    double best = -cfg.tol.opt;
    for (std::size_t jj = 0; jj < state.nonbasic().size(); ++jj) {
      if (z[jj] >= -cfg.tol.opt) continue;
      if (bland) {
        q = state.nonbasic()[jj];
        break;
      }
      if (z[jj] < best) {
        best = z[jj];
        q = state.nonbasic()[jj];
      }
    }
    if (q < 0) return {StepOutcome::AlreadyOptimal, {}};
    std::vector<double> dir = state.ftran(q);
    BasisState::Ratio rt = state.ratio_test(dir);
    if (rt.unbounded) throw InternalError("unbounded direction on a bounded polytope");
    state.pivot(q, rt.leaving_pos, dir);
    if (rt.step > cfg.tol.feas) return {StepOutcome::Stepped, model.vertex_from_state(state)};
    if (++degen_run >= bland_after) forced_bland = true;
    if (++guard > 4000L * model.lp().cols) throw InternalError("simplex step exceeded its pivot cap");
  }
}

bool is_optimal(const BasisState& state, const TransportModel& model, const ObjectiveMatrix& c,
                Tolerances tol) {
  std::vector<double> obj = model.objective_vector(c);
  std::vector<double> z = state.reduced_costs(obj);
  return std::all_of(z.begin(), z.end(), [&](double v) { return v >= -tol.opt; });
}

std::vector<double> delta_z(const BasisState& state, const TransportModel& model,
                            const ObjectiveMatrix& dc) {
  std::vector<double> obj = model.objective_vector(dc);
  return state.reduced_costs(obj);
}

double ranging_breakpoint(const BasisState& state, const TransportModel& model,
                          const ObjectiveMatrix& c, const ObjectiveMatrix& dc, Tolerances tol) {
  if (!is_optimal(state, model, c, tol))
    throw InputError("ranging requires a basis that is optimal for the current objective");
  std::vector<double> z = state.reduced_costs(model.objective_vector(c));
  std::vector<double> dz = delta_z(state, model, dc);
  double step = infinity();
  for (std::size_t jj = 0; jj < z.size(); ++jj) {
    if (dz[jj] >= -tol.opt) continue;
    double zj = std::abs(z[jj]) <= tol.opt ? 0.0 : std::max(z[jj], 0.0);
    step = std::min(step, zj / (-dz[jj]));
  }
  return step;
}

}  // namespace clustrans
