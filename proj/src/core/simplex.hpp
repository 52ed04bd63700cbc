#pragma once

#include <optional>
#include <span>
#include <vector>

#include "core/common.hpp"

namespace clustrans {

// max c^T x  s.t.  A x = b, x >= 0, with A stored column-major.
struct LpProblem {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  // column-major rows x cols
  std::vector<double> b;

  double at(int r, int c) const { return a[static_cast<std::size_t>(c) * rows + r]; }
  double& at(int r, int c) { return a[static_cast<std::size_t>(c) * rows + r]; }
  std::span<const double> column(int c) const {
    return {a.data() + static_cast<std::size_t>(c) * rows, static_cast<std::size_t>(rows)};
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// A basis of the standard form together with an explicitly maintained
// inverse. Pivots update the inverse in place (product form); the inverse is
// rebuilt from scratch every `kRefactorInterval` pivots.
class BasisState {
 public:
  static constexpr int kRefactorInterval = 50;

  BasisState(const LpProblem* prob, Tolerances tol, std::vector<int> basic);

  int rows() const { return prob_->rows; }
  const LpProblem& problem() const { return *prob_; }
  const std::vector<int>& basic() const { return basic_; }
  const std::vector<int>& nonbasic() const { return nonbasic_; }
  const std::vector<double>& x_basic() const { return xb_; }
  bool is_basic(int var) const { return pos_[var] >= 0; }

  std::vector<double> full_solution() const;
  double objective(std::span<const double> c) const;
  /// pi = B^{-T} c_B
  std::vector<double> duals(std::span<const double> c) const;
  /// z_j = pi^T A_j - c_j for every nonbasic j, aligned with nonbasic().
  std::vector<double> reduced_costs(std::span<const double> c) const;

  /// Direction B^{-1} A_var for a candidate entering variable.
  std::vector<double> ftran(int var) const;
  /// Row r of B^{-1} N, aligned with nonbasic() (dual simplex pricing).
  std::vector<double> btran_row(int r) const;

  struct Ratio {
    int leaving_pos = -1;  // index into basic()
    double step = 0.0;
    bool unbounded = false;
  };
  /// Primal ratio test over {i : dir_i > tol}; ties resolved toward the
  /// lowest basic variable id.
  Ratio ratio_test(const std::vector<double>& dir) const;

  void pivot(int entering_var, int leaving_pos, const std::vector<double>& dir);
  void refactorize();
  int pivot_count() const { return pivots_; }

 private:
  const LpProblem* prob_;
  Tolerances tol_;
  std::vector<int> basic_;     // m variable ids
  std::vector<int> nonbasic_;  // sorted ascending
  std::vector<int> pos_;       // var -> basic slot, or -1
  std::vector<double> binv_;   // row-major m x m
  std::vector<double> xb_;
  int pivots_ = 0;
  int since_refactor_ = 0;

  void recompute_xb();
};

struct SolveControls {
  PivotRule rule = PivotRule::Dantzig;
  // Consecutive degenerate pivots before falling back to Bland's rule.
  int bland_after = 0;  // 0 = derive from problem size
  long max_pivots = 0;  // 0 = derive from problem size
};

struct SolveOutcome {
  LpStatus status = LpStatus::Optimal;
  int pivots = 0;
};

/// Primal simplex from a primal-feasible basis.
SolveOutcome primal_solve(BasisState& state, std::span<const double> c, const SolveControls& ctl,
                          Tolerances tol);

/// Dual simplex from a dual-feasible basis (used for warm starts where only
/// the right-hand side changed). Infeasible means the primal is infeasible.
SolveOutcome dual_solve(BasisState& state, std::span<const double> c, Tolerances tol);

struct ColdSolve {
  LpStatus status = LpStatus::Infeasible;
  std::optional<BasisState> state;  // present when status != Infeasible
  int pivots = 0;
};

/// Two-phase solve with no starting basis.
ColdSolve cold_solve(const LpProblem& prob, std::span<const double> c, const SolveControls& ctl,
                     Tolerances tol);

}  // namespace clustrans
