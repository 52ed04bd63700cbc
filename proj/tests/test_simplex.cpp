#include <cmath>

#include "core/simplex.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace clustrans;
using ct_test::TestRng;

namespace {

// max 3x + 2y  s.t.  x + y <= 4, x <= 2  ->  x = 2, y = 2, value 10.
LpProblem small_lp() {
  LpProblem p;
  p.rows = 2;
  p.cols = 4;  // x, y, s1, s2
  p.a.assign(8, 0.0);
  p.at(0, 0) = 1;
  p.at(0, 1) = 1;
  p.at(0, 2) = 1;
  p.at(1, 0) = 1;
  p.at(1, 3) = 1;
  p.b = {4, 2};
  return p;
}

double residual(const LpProblem& p, const std::vector<double>& x) {
  double worst = 0.0;
  for (int r = 0; r < p.rows; ++r) {
    double lhs = 0.0;
    for (int c = 0; c < p.cols; ++c) lhs += p.at(r, c) * x[c];
    worst = std::max(worst, std::abs(lhs - p.b[r]));
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("simplex");

TEST_CASE("two-phase solve of a small LP") {
  LpProblem p = small_lp();
  std::vector<double> c{3, 2, 0, 0};
  ColdSolve out = cold_solve(p, c, {}, Tolerances{});
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.state->objective(c) == doctest::Approx(10.0));
  std::vector<double> x = out.state->full_solution();
  CHECK(x[0] == doctest::Approx(2.0));
  CHECK(x[1] == doctest::Approx(2.0));
  CHECK(residual(p, x) < 1e-9);
}

TEST_CASE("infeasible system is detected") {
  LpProblem p;
  p.rows = 1;
  p.cols = 2;  // x + s = -1 with x, s >= 0
  p.a = {1, 1};
  p.b = {-1};
  std::vector<double> c{1, 0};
  ColdSolve out = cold_solve(p, c, {}, Tolerances{});
  CHECK(out.status == LpStatus::Infeasible);
}

TEST_CASE("unbounded ray is detected") {
  LpProblem p;
  p.rows = 1;
  p.cols = 2;  // x - y = 0, maximize x
  p.a = {1, -1};
  p.b = {0};
  std::vector<double> c{1, 0};
  ColdSolve out = cold_solve(p, c, {}, Tolerances{});
  CHECK(out.status == LpStatus::Unbounded);
}

TEST_CASE("basis state exposes a consistent dictionary") {
  LpProblem p = small_lp();
  std::vector<double> c{3, 2, 0, 0};
  ColdSolve out = cold_solve(p, c, {}, Tolerances{});
  REQUIRE(out.status == LpStatus::Optimal);
  const BasisState& st = *out.state;
  // objective equals c_B^T B^{-1} b and the reduced costs are nonnegative
  double zeta = 0.0;
  std::vector<double> x = st.full_solution();
  for (int v = 0; v < p.cols; ++v) zeta += c[v] * x[v];
  CHECK(st.objective(c) == doctest::Approx(zeta));
  for (double z : st.reduced_costs(c)) CHECK(z >= -1e-7);
  for (double xb : st.x_basic()) CHECK(xb >= -1e-9);
}

TEST_CASE("dual simplex reoptimizes after a right-hand-side change") {
  LpProblem p = small_lp();
  std::vector<double> c{3, 2, 0, 0};
  ColdSolve out = cold_solve(p, c, {}, Tolerances{});
  REQUIRE(out.status == LpStatus::Optimal);

  LpProblem tightened = p;
  tightened.b = {4, 1};  // x <= 1 now; old basis turns primal-infeasible
  BasisState warm(&tightened, Tolerances{}, out.state->basic());
  SolveOutcome res = dual_solve(warm, c, Tolerances{});
  REQUIRE(res.status == LpStatus::Optimal);
  ColdSolve fresh = cold_solve(tightened, c, {}, Tolerances{});
  REQUIRE(fresh.status == LpStatus::Optimal);
  CHECK(warm.objective(c) == doctest::Approx(fresh.state->objective(c)));
  for (double z : warm.reduced_costs(c)) CHECK(z >= -1e-7);
}

TEST_CASE("both pivot rules agree on random feasible problems") {
  TestRng rng(211);
  int solved = 0;
  for (int trial = 0; trial < 30; ++trial) {
    int rows = rng.uniform_int(2, 4);
    int cols = rows + rng.uniform_int(2, 5);
    LpProblem p;
    p.rows = rows;
    p.cols = cols;
    p.a.resize(static_cast<std::size_t>(rows) * cols);
    for (int cidx = 0; cidx < cols; ++cidx)
      for (int r = 0; r < rows; ++r) p.at(r, cidx) = rng.uniform(-1, 1);
    // make it feasible by construction: b = A x0 with x0 >= 0
    std::vector<double> x0(cols);
    for (double& v : x0) v = rng.uniform(0, 1);
    p.b.assign(rows, 0.0);
    for (int r = 0; r < rows; ++r)
      for (int cidx = 0; cidx < cols; ++cidx) p.b[r] += p.at(r, cidx) * x0[cidx];
    std::vector<double> c(cols);
    for (double& v : c) v = rng.uniform(-1, 1);

    SolveControls dantzig;
    SolveControls bland;
    bland.rule = PivotRule::Bland;
    ColdSolve a = cold_solve(p, c, dantzig, Tolerances{});
    ColdSolve b = cold_solve(p, c, bland, Tolerances{});
    CHECK(a.status == b.status);
    if (a.status == LpStatus::Optimal) {
      ++solved;
      CHECK(rel_close(a.state->objective(c), b.state->objective(c), 1e-7));
      CHECK(residual(p, a.state->full_solution()) < 1e-7);
    }
  }
  CHECK(solved > 5);
}

TEST_CASE("refactorization keeps long pivot sequences stable") {
  // many reoptimizations on one state push past the refactor interval
  TestRng rng(223);
  LpProblem p;
  p.rows = 4;
  p.cols = 40;
  p.a.assign(static_cast<std::size_t>(p.rows) * p.cols, 0.0);
  for (int cidx = 0; cidx < p.cols; ++cidx) {
    for (int r = 0; r + 1 < p.rows; ++r) p.at(r, cidx) = rng.uniform(-1, 1);
    p.at(p.rows - 1, cidx) = 1.0;  // bounded: the solution mass is fixed
  }
  std::vector<double> x0(p.cols);
  for (double& v : x0) v = rng.uniform(0, 1);
  p.b.assign(p.rows, 0.0);
  for (int r = 0; r < p.rows; ++r)
    for (int cidx = 0; cidx < p.cols; ++cidx) p.b[r] += p.at(r, cidx) * x0[cidx];

  ColdSolve seed = cold_solve(p, std::vector<double>(p.cols, 0.0), {}, Tolerances{});
  REQUIRE(seed.status == LpStatus::Optimal);
  BasisState st = *seed.state;
  int reopt = 0;
  for (int round = 0; round < 60; ++round) {
    std::vector<double> c(p.cols);
    for (double& v : c) v = rng.uniform(-1, 1);
    SolveOutcome out = primal_solve(st, c, {}, Tolerances{});
    REQUIRE(out.status == LpStatus::Optimal);
    ++reopt;
    CHECK(residual(p, st.full_solution()) < 1e-6);
  }
  CHECK(st.pivot_count() > BasisState::kRefactorInterval);
  CHECK(reopt == 60);
}

TEST_SUITE_END();
