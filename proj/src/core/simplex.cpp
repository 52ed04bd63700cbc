#include "core/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace clustrans {

namespace {
constexpr double kPivotTol = 1e-9;  // minimum magnitude of a pivot element
}

BasisState::BasisState(const LpProblem* prob, Tolerances tol, std::vector<int> basic)
    : prob_(prob), tol_(tol), basic_(std::move(basic)) {
  const int m = prob_->rows;
  if (static_cast<int>(basic_.size()) != m) throw InternalError("basis size differs from row count");
  pos_.assign(prob_->cols, -1);
  for (int i = 0; i < m; ++i) {
    int v = basic_[i];
    if (v < 0 || v >= prob_->cols || pos_[v] >= 0) throw InternalError("invalid basis column set");
    pos_[v] = i;
  }
  nonbasic_.reserve(prob_->cols - m);
  for (int v = 0; v < prob_->cols; ++v)
    if (pos_[v] < 0) nonbasic_.push_back(v);
  refactorize();
}

void BasisState::refactorize() {
  const int m = prob_->rows;
  std::vector<double> work(static_cast<std::size_t>(m) * m);
  std::vector<double> inv(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    inv[static_cast<std::size_t>(i) * m + i] = 1.0;
    for (int j = 0; j < m; ++j) work[static_cast<std::size_t>(i) * m + j] = prob_->at(i, basic_[j]);
  }
  auto row = [m](std::vector<double>& mat, int r) { return mat.data() + static_cast<std::size_t>(r) * m; };
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    double best = kPivotTol;
    for (int r = col; r < m; ++r) {
      double v = std::abs(row(work, r)[col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (piv < 0) throw InternalError("singular basis");
    if (piv != col) {
      std::swap_ranges(row(work, piv), row(work, piv) + m, row(work, col));
      std::swap_ranges(row(inv, piv), row(inv, piv) + m, row(inv, col));
    }
    double p = row(work, col)[col];
    for (int j = 0; j < m; ++j) {
      row(work, col)[j] /= p;
      row(inv, col)[j] /= p;
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      double f = row(work, r)[col];
      if (f == 0.0) continue;
      for (int j = 0; j < m; ++j) {
        row(work, r)[j] -= f * row(work, col)[j];
        row(inv, r)[j] -= f * row(inv, col)[j];
      }
    }
  }
  binv_ = std::move(inv);
  since_refactor_ = 0;
  recompute_xb();
}

void BasisState::recompute_xb() {
  const int m = prob_->rows;
  xb_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    const double* bi = binv_.data() + static_cast<std::size_t>(i) * m;
    for (int r = 0; r < m; ++r) s += bi[r] * prob_->b[r];
    xb_[i] = s;
  }
}

std::vector<double> BasisState::full_solution() const {
  std::vector<double> x(prob_->cols, 0.0);
  for (std::size_t i = 0; i < basic_.size(); ++i) x[basic_[i]] = xb_[i];
  return x;
}

double BasisState::objective(std::span<const double> c) const {
  double s = 0.0;
  for (std::size_t i = 0; i < basic_.size(); ++i) s += c[basic_[i]] * xb_[i];
  return s;
}

std::vector<double> BasisState::duals(std::span<const double> c) const {
  const int m = prob_->rows;
  std::vector<double> pi(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double cb = c[basic_[i]];
    if (cb == 0.0) continue;
    const double* bi = binv_.data() + static_cast<std::size_t>(i) * m;
    for (int r = 0; r < m; ++r) pi[r] += cb * bi[r];
  }
  return pi;
}

std::vector<double> BasisState::reduced_costs(std::span<const double> c) const {
  std::vector<double> pi = duals(c);
  std::vector<double> z(nonbasic_.size());
  for (std::size_t jj = 0; jj < nonbasic_.size(); ++jj) {
    int j = nonbasic_[jj];
    auto col = prob_->column(j);
    double s = 0.0;
    for (int r = 0; r < prob_->rows; ++r) s += pi[r] * col[r];
    z[jj] = s - c[j];
  }
  return z;
}

std::vector<double> BasisState::ftran(int var) const {
  const int m = prob_->rows;
  auto col = prob_->column(var);
  std::vector<double> y(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    const double* bi = binv_.data() + static_cast<std::size_t>(i) * m;
    for (int r = 0; r < m; ++r) s += bi[r] * col[r];
    y[i] = s;
  }
  return y;
}

std::vector<double> BasisState::btran_row(int r) const {
  const int m = prob_->rows;
  const double* br = binv_.data() + static_cast<std::size_t>(r) * m;
  std::vector<double> alpha(nonbasic_.size());
  for (std::size_t jj = 0; jj < nonbasic_.size(); ++jj) {
    auto col = prob_->column(nonbasic_[jj]);
    double s = 0.0;
    for (int t = 0; t < m; ++t) s += br[t] * col[t];
    alpha[jj] = s;
  }
  return alpha;
}

BasisState::Ratio BasisState::ratio_test(const std::vector<double>& dir) const {
  const int m = prob_->rows;
  double best = infinity();
  for (int i = 0; i < m; ++i) {
    if (dir[i] <= kPivotTol) continue;
    double r = std::max(xb_[i], 0.0) / dir[i];
    if (r < best) best = r;
  }
  if (best == infinity()) return {-1, 0.0, true};
  // Among near-ties, leave the lowest variable id (Bland-compatible).
  int pick = -1;
  double tie = best + 1e-9 * (1.0 + best);
  for (int i = 0; i < m; ++i) {
    if (dir[i] <= kPivotTol) continue;
    double r = std::max(xb_[i], 0.0) / dir[i];
    if (r <= tie && (pick < 0 || basic_[i] < basic_[pick])) pick = i;
  }
  return {pick, best, false};
}

void BasisState::pivot(int entering_var, int leaving_pos, const std::vector<double>& dir) {
  const int m = prob_->rows;
  double piv = dir[leaving_pos];
  if (std::abs(piv) <= kPivotTol) throw InternalError("numerically singular pivot");
  int leaving_var = basic_[leaving_pos];
  basic_[leaving_pos] = entering_var;
  pos_[entering_var] = leaving_pos;
  pos_[leaving_var] = -1;
  auto it = std::lower_bound(nonbasic_.begin(), nonbasic_.end(), entering_var);
  nonbasic_.erase(it);
  nonbasic_.insert(std::lower_bound(nonbasic_.begin(), nonbasic_.end(), leaving_var), leaving_var);

  double* rrow = binv_.data() + static_cast<std::size_t>(leaving_pos) * m;
  for (int i = 0; i < m; ++i) {
    if (i == leaving_pos) continue;
    double f = dir[i] / piv;
    if (f == 0.0) continue;
    double* irow = binv_.data() + static_cast<std::size_t>(i) * m;
    for (int j = 0; j < m; ++j) irow[j] -= f * rrow[j];
  }
  for (int j = 0; j < m; ++j) rrow[j] /= piv;

  ++pivots_;
  if (++since_refactor_ >= kRefactorInterval)
    refactorize();
  else
    recompute_xb();
}

namespace {

int pick_entering(const std::vector<int>& nonbasic, const std::vector<double>& z, double tol_opt,
                  bool bland) {
  int pick = -1;
  double best = -tol_opt;
  for (std::size_t jj = 0; jj < nonbasic.size(); ++jj) {
    if (z[jj] >= -tol_opt) continue;
    if (bland) return nonbasic[jj];  // nonbasic is sorted ascending
    if (z[jj] < best) {
      best = z[jj];
      pick = nonbasic[jj];
    }
  }
  return pick;
}

long default_cap(const LpProblem& p) { return 4000L * (p.rows + p.cols) + 10000; }

}  // namespace

SolveOutcome primal_solve(BasisState& state, std::span<const double> c, const SolveControls& ctl,
                          Tolerances tol) {
  const LpProblem& prob = state.problem();
  const int bland_after = ctl.bland_after > 0 ? ctl.bland_after : 2 * prob.rows;
  const long cap = ctl.max_pivots > 0 ? ctl.max_pivots : default_cap(prob);
  bool forced_bland = false;
  int degen_run = 0;
  int pivots = 0;
  while (true) {
    std::vector<double> z = state.reduced_costs(c);
    bool bland = forced_bland || ctl.rule == PivotRule::Bland;
    int q = pick_entering(state.nonbasic(), z, tol.opt, bland);
    if (q < 0) return {LpStatus::Optimal, pivots};
    std::vector<double> dir = state.ftran(q);
    BasisState::Ratio rt = state.ratio_test(dir);
    if (rt.unbounded) return {LpStatus::Unbounded, pivots};
    state.pivot(q, rt.leaving_pos, dir);
    ++pivots;
    if (rt.step <= tol.feas) {
      if (++degen_run >= bland_after) forced_bland = true;
    } else {
      degen_run = 0;
      forced_bland = false;
    }
    if (pivots > cap) throw InternalError("primal simplex exceeded its pivot cap");
  }
}

SolveOutcome dual_solve(BasisState& state, std::span<const double> c, Tolerances tol) {
  const LpProblem& prob = state.problem();
  const long cap = default_cap(prob);
  int pivots = 0;
  while (true) {
    const std::vector<double>& xb = state.x_basic();
    bool bland = pivots > 3 * prob.rows;
    int leave = -1;
    double worst = -tol.feas;
    for (int i = 0; i < prob.rows; ++i) {
      if (xb[i] >= -tol.feas) continue;
      if (bland) {
        if (leave < 0 || state.basic()[i] < state.basic()[leave]) leave = i;
      } else if (xb[i] < worst) {
        worst = xb[i];
        leave = i;
      }
    }
    if (leave < 0) return {LpStatus::Optimal, pivots};
    std::vector<double> alpha = state.btran_row(leave);
    std::vector<double> z = state.reduced_costs(c);
    int enter = -1;
    double best_ratio = infinity();
    for (std::size_t jj = 0; jj < state.nonbasic().size(); ++jj) {
      if (alpha[jj] >= -kPivotTol) continue;
      double ratio = std::max(z[jj], 0.0) / (-alpha[jj]);
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 &&
           (enter < 0 || state.nonbasic()[jj] < enter))) {
        best_ratio = std::min(ratio, best_ratio);
        enter = state.nonbasic()[jj];
      }
    }
    if (enter < 0) return {LpStatus::Infeasible, pivots};
    std::vector<double> dir = state.ftran(enter);
    state.pivot(enter, leave, dir);
    ++pivots;
    if (pivots > cap) throw InternalError("dual simplex exceeded its pivot cap");
  }
}

ColdSolve cold_solve(const LpProblem& prob, std::span<const double> c, const SolveControls& ctl,
                     Tolerances tol) {
  const int m = prob.rows;
  // Phase 1: flip rows so b >= 0, add one artificial per row.
  LpProblem ext;
  ext.rows = m;
  ext.cols = prob.cols + m;
  ext.a.assign(static_cast<std::size_t>(ext.cols) * m, 0.0);
  ext.b.resize(m);
  std::vector<double> sign(m, 1.0);
  double bscale = 1.0;
  for (int r = 0; r < m; ++r) {
    if (prob.b[r] < 0.0) sign[r] = -1.0;
    ext.b[r] = sign[r] * prob.b[r];
    bscale = std::max(bscale, std::abs(prob.b[r]));
  }
  for (int col = 0; col < prob.cols; ++col)
    for (int r = 0; r < m; ++r) ext.at(r, col) = sign[r] * prob.at(r, col);
  for (int r = 0; r < m; ++r) ext.at(r, prob.cols + r) = 1.0;

  std::vector<double> phase1_c(ext.cols, 0.0);
  for (int r = 0; r < m; ++r) phase1_c[prob.cols + r] = -1.0;
  std::vector<int> art(m);
  for (int r = 0; r < m; ++r) art[r] = prob.cols + r;

  BasisState st(&ext, tol, art);
  SolveOutcome p1 = primal_solve(st, phase1_c, ctl, tol);
  if (p1.status == LpStatus::Unbounded) throw InternalError("phase-1 objective cannot be unbounded");
  int pivots = p1.pivots;
  if (st.objective(phase1_c) < -1e-7 * bscale) return {LpStatus::Infeasible, std::nullopt, pivots};

  // Drive zero-level artificials out of the basis.
  for (int slot = 0; slot < m; ++slot) {
    if (st.basic()[slot] < prob.cols) continue;
    std::vector<double> alpha = st.btran_row(slot);
    int enter = -1;
    for (std::size_t jj = 0; jj < st.nonbasic().size(); ++jj) {
      int v = st.nonbasic()[jj];
      if (v >= prob.cols) continue;
      if (std::abs(alpha[jj]) > 1e-7) {
        enter = v;
        break;
      }
    }
    if (enter < 0) throw InternalError("cannot eliminate artificial variable: dependent rows");
    std::vector<double> dir = st.ftran(enter);
    st.pivot(enter, slot, dir);
    ++pivots;
  }

  // Rebuild on the caller's problem (row sign flips do not change the basis).
  BasisState real_state(&prob, tol, st.basic());
  SolveOutcome p2 = primal_solve(real_state, c, ctl, tol);
  pivots += p2.pivots;
  return {p2.status, std::move(real_state), pivots};
}

}  // namespace clustrans
