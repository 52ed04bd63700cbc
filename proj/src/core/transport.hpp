#pragma once

#include <vector>

#include "core/simplex.hpp"
#include "core/types.hpp"

namespace clustrans {

// 0/1 vertex of the bounded-shape transportation polytope plus its slack
// values (all integral).
struct TransportVertex {
  std::vector<int> y;  // flattened k x n, cluster-major
  std::vector<int> lower_slack;
  std::vector<int> upper_slack;

  bool operator==(const TransportVertex&) const = default;
};

// Standard form of the assignment polytope for one set of size bounds:
// n partition rows, k lower-bound rows (surplus column -1), k upper-bound
// rows (slack column +1). Every basic solution is integral.
class TransportModel {
 public:
  TransportModel(int n, int k, SizeBounds bounds);

  int n() const { return n_; }
  int k() const { return k_; }
  const SizeBounds& bounds() const { return bounds_; }
  const LpProblem& lp() const { return lp_; }

  int yvar(int cluster, int item) const { return cluster * n_ + item; }
  int lower_var(int cluster) const { return n_ * k_ + cluster; }
  int upper_var(int cluster) const { return n_ * k_ + k_ + cluster; }

  std::vector<double> objective_vector(const ObjectiveMatrix& c) const;

  TransportVertex vertex_from_clustering(const Clustering& c) const;
  Clustering clustering_from_vertex(const TransportVertex& v) const;
  /// Basis containing every positive variable of the vertex, completed
  /// deterministically with degenerate columns.
  BasisState basis_for_vertex(const TransportVertex& v, Tolerances tol) const;
  /// Rounds the basic solution and re-verifies all constraints in exact
  /// integer arithmetic; throws InternalError on any fractional value.
  TransportVertex vertex_from_state(const BasisState& state) const;

 private:
  int n_ = 0;
  int k_ = 0;
  SizeBounds bounds_;
  LpProblem lp_;
};

struct OptimizeResult {
  TransportVertex vertex;
  BasisState state;
  int pivots = 0;
};

/// Maximizes c over the polytope, warm-started from the given clustering
/// when provided (a feasible vertex always exists, so no phase 1).
OptimizeResult optimize(const TransportModel& model, const ObjectiveMatrix& c, const Config& cfg,
                        const Clustering* warm_start = nullptr);

enum class StepOutcome { Stepped, AlreadyOptimal };

struct StepResult {
  StepOutcome outcome = StepOutcome::AlreadyOptimal;
  TransportVertex vertex;  // the adjacent vertex when outcome == Stepped
};

/// One strictly improving move to an adjacent vertex, performing as many
/// degenerate pivots as needed to actually leave the current vertex.
StepResult simplex_step(const TransportModel& model, BasisState& state, const ObjectiveMatrix& c,
                        const Config& cfg);

bool is_optimal(const BasisState& state, const TransportModel& model, const ObjectiveMatrix& c,
                Tolerances tol);

/// Delta of the nonbasic reduced costs under an objective change, aligned
/// with state.nonbasic().
std::vector<double> delta_z(const BasisState& state, const TransportModel& model,
                            const ObjectiveMatrix& dc);

/// Largest step lambda such that the basis stays dual-feasible for
/// c + lambda * dc; +infinity when no nonbasic column ever blocks.
double ranging_breakpoint(const BasisState& state, const TransportModel& model,
                          const ObjectiveMatrix& c, const ObjectiveMatrix& dc, Tolerances tol);

SolveControls controls_from(const Config& cfg);

}  // namespace clustrans
