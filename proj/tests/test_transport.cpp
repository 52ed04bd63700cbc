#include <cmath>

#include "core/cdg.hpp"
#include "core/oracle.hpp"
#include "core/transport.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace clustrans;
using ct_test::TestRng;

namespace {

double max_residual(const TransportModel& model, const TransportVertex& v) {
  std::vector<double> x(model.lp().cols, 0.0);
  for (int i = 0; i < model.k(); ++i)
    for (int j = 0; j < model.n(); ++j) x[model.yvar(i, j)] = v.y[model.yvar(i, j)];
  for (int i = 0; i < model.k(); ++i) {
    x[model.lower_var(i)] = v.lower_slack[i];
    x[model.upper_var(i)] = v.upper_slack[i];
  }
  double worst = 0.0;
  for (int r = 0; r < model.lp().rows; ++r) {
    double lhs = 0.0;
    for (int c = 0; c < model.lp().cols; ++c) lhs += model.lp().at(r, c) * x[c];
    worst = std::max(worst, std::abs(lhs - model.lp().b[r]));
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("transport");

TEST_CASE("vertex encoding round trip") {
  TransportModel model(4, 2, SizeBounds{{0, 0}, {4, 4}});
  Clustering all_first{{0, 0, 0, 0}, 2};
  TransportVertex v = model.vertex_from_clustering(all_first);
  for (int j = 0; j < 4; ++j) CHECK(v.y[model.yvar(0, j)] == 1);
  CHECK(model.clustering_from_vertex(v) == all_first);

  TestRng rng(401);
  for (int trial = 0; trial < 10; ++trial) {
    Clustering c = ct_test::random_clustering(rng, 4, 2);
    TransportVertex vr = model.vertex_from_clustering(c);
    CHECK(model.clustering_from_vertex(vr) == c);
    CHECK(max_residual(model, vr) == 0.0);  // exact in integers
  }
}

TEST_CASE("bounds violations are rejected") {
  TransportModel model(4, 2, SizeBounds{{2, 1}, {3, 2}});
  Clustering c{{0, 0, 0, 0}, 2};  // shape (4,0) outside the bounds
  CHECK_THROWS_AS(model.vertex_from_clustering(c), InputError);
}

TEST_CASE("zero objective accepts any feasible vertex") {
  TransportModel model(5, 2, SizeBounds{{1, 1}, {4, 4}});
  ObjectiveMatrix zero{std::vector<double>(10, 0.0), 2, 5};
  Config cfg;
  OptimizeResult out = optimize(model, zero, cfg);
  CHECK(clustering_objective(zero, model.clustering_from_vertex(out.vertex)) == 0.0);
  CHECK(max_residual(model, out.vertex) == 0.0);
}

TEST_CASE("fixed-shape optimum matches exhaustive enumeration") {
  TestRng rng(409);
  Config cfg;
  for (int trial = 0; trial < 15; ++trial) {
    DataSet ds = ct_test::random_dataset(rng, 6, 2);
    SiteVector s = ct_test::random_sites(rng, 2, 2);
    SizeBounds bounds{{3, 3}, {3, 3}};
    TransportModel model(6, 2, bounds);
    ObjectiveMatrix obj = objective_from_sites(ds, s);
    OptimizeResult solved = optimize(model, obj, cfg);
    BruteForceResult oracle = brute_force_best(ds, s, bounds, cfg.enum_budget);
    CHECK(rel_close(clustering_objective(obj, model.clustering_from_vertex(solved.vertex)),
                    oracle.objective, 1e-6));
  }
}

TEST_CASE("all-shape optimum assigns every item to its best site") {
  TestRng rng(419);
  Config cfg;
  for (int trial = 0; trial < 10; ++trial) {
    int n = 7, k = 3, d = 2;
    DataSet ds = ct_test::random_dataset(rng, n, d);
    SiteVector s = ct_test::random_sites(rng, k, d);
    TransportModel model(n, k, ct_test::all_shapes(n, k));
    ObjectiveMatrix obj = objective_from_sites(ds, s);
    OptimizeResult solved = optimize(model, obj, cfg);
    double expect = 0.0;
    for (int j = 0; j < n; ++j) {
      double best = obj.at(0, j);
      for (int i = 1; i < k; ++i) best = std::max(best, obj.at(i, j));
      expect += best;
    }
    CHECK(rel_close(clustering_objective(obj, model.clustering_from_vertex(solved.vertex)), expect,
                    1e-9));
  }
}

TEST_CASE("optimal vertices beat every feasible clustering") {
  // enumeration over all assignments, not only the optimum
  TestRng rng(421);
  Config cfg;
  DataSet ds = ct_test::random_dataset(rng, 6, 2);
  SiteVector s = ct_test::random_sites(rng, 3, 2);
  SizeBounds bounds{{0, 1, 0}, {4, 5, 6}};
  TransportModel model(6, 3, bounds);
  ObjectiveMatrix obj = objective_from_sites(ds, s);
  OptimizeResult solved = optimize(model, obj, cfg);
  double mine = clustering_objective(obj, model.clustering_from_vertex(solved.vertex));
  long feasible = 0;
  for (int mask = 0; mask < 729; ++mask) {  // 3^6 assignments
    int code = mask;
    Clustering c;
    c.k = 3;
    for (int j = 0; j < 6; ++j) {
      c.assignment.push_back(code % 3);
      code /= 3;
    }
    if (!bounds.contains(c.shape())) continue;
    ++feasible;
    CHECK(clustering_objective(obj, c) <= mine + 1e-7 * (1.0 + std::abs(mine)));
  }
  CHECK(feasible > 0);
}

TEST_CASE("warm and cold starts reach the same value") {
  TestRng rng(431);
  Config cfg;
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(5, 8), k = rng.uniform_int(2, 3);
    DataSet ds = ct_test::random_dataset(rng, n, 2);
    SiteVector s = ct_test::random_sites(rng, k, 2);
    SizeBounds bounds = ct_test::all_shapes(n, k);
    TransportModel model(n, k, bounds);
    ObjectiveMatrix obj = objective_from_sites(ds, s);
    Clustering warm = ct_test::random_clustering(rng, n, k);
    OptimizeResult a = optimize(model, obj, cfg, &warm);
    OptimizeResult b = optimize(model, obj, cfg);
    CHECK(rel_close(clustering_objective(obj, model.clustering_from_vertex(a.vertex)),
                    clustering_objective(obj, model.clustering_from_vertex(b.vertex)), 1e-9));
  }
}

TEST_CASE("dantzig and bland pricing agree") {
  TestRng rng(433);
  Config dantzig;
  Config bland;
  bland.pivot = PivotRule::Bland;
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(5, 8), k = rng.uniform_int(2, 3);
    DataSet ds = ct_test::random_dataset(rng, n, 2);
    SiteVector s = ct_test::random_sites(rng, k, 2);
    TransportModel model(n, k, ct_test::all_shapes(n, k));
    ObjectiveMatrix obj = objective_from_sites(ds, s);
    OptimizeResult a = optimize(model, obj, dantzig);
    OptimizeResult b = optimize(model, obj, bland);
    CHECK(rel_close(clustering_objective(obj, model.clustering_from_vertex(a.vertex)),
                    clustering_objective(obj, model.clustering_from_vertex(b.vertex)), 1e-9));
  }
}

TEST_CASE("single simplex steps") {
  TestRng rng(439);
  Config cfg;
  DataSet ds = ct_test::random_dataset(rng, 6, 2);
  SiteVector s = ct_test::random_sites(rng, 2, 2);
  TransportModel model(6, 2, ct_test::all_shapes(6, 2));
  ObjectiveMatrix obj = objective_from_sites(ds, s);

  SUBCASE("at the optimum the step reports rather than moves") {
    OptimizeResult solved = optimize(model, obj, cfg);
    StepResult step = simplex_step(model, solved.state, obj, cfg);
    CHECK(step.outcome == StepOutcome::AlreadyOptimal);
  }

  SUBCASE("from a non-optimal vertex the step strictly improves") {
    int improved = 0;
    for (int trial = 0; trial < 10; ++trial) {
      Clustering start = ct_test::random_clustering(rng, 6, 2);
      TransportVertex v = model.vertex_from_clustering(start);
      BasisState state = model.basis_for_vertex(v, cfg.tol);
      double before = clustering_objective(obj, start);
      StepResult step = simplex_step(model, state, obj, cfg);
      if (step.outcome == StepOutcome::AlreadyOptimal) continue;
      ++improved;
      Clustering next = model.clustering_from_vertex(step.vertex);
      CHECK(clustering_objective(obj, next) > before);
      CHECK(is_single_exchange(start, next));  // adjacency: one path or cycle
    }
    CHECK(improved > 3);
  }
}

TEST_CASE("optimality test across bases") {
  Config cfg;
  TestRng rng(443);
  DataSet ds = ct_test::random_dataset(rng, 6, 2);
  SiteVector s = ct_test::random_sites(rng, 2, 2);
  SizeBounds bounds{{2, 2}, {4, 4}};
  TransportModel model(6, 2, bounds);
  ObjectiveMatrix obj = objective_from_sites(ds, s);

  OptimizeResult solved = optimize(model, obj, cfg);
  CHECK(is_optimal(solved.state, model, obj, cfg.tol));

  // a vertex that enumeration says is strictly dominated cannot carry a
  // dual-feasible basis
  BruteForceResult oracle = brute_force_best(ds, s, bounds, cfg.enum_budget);
  Clustering bad = ct_test::random_clustering(rng, 6, 2);
  while (!bounds.contains(bad.shape()) ||
         rel_close(clustering_objective(obj, bad), oracle.objective, 1e-9))
    bad = ct_test::random_clustering(rng, 6, 2);
  BasisState state = model.basis_for_vertex(model.vertex_from_clustering(bad), cfg.tol);
  CHECK_FALSE(is_optimal(state, model, obj, cfg.tol));

  // with one cluster there is a single clustering, trivially optimal
  TransportModel solo(4, 1, SizeBounds{{4}, {4}});
  DataSet tiny({0.0, 1.0, 2.0, 3.0}, 1);
  SiteVector site1{{1.0}, 1, 1};
  ObjectiveMatrix obj1 = objective_from_sites(tiny, site1);
  OptimizeResult only = optimize(solo, obj1, cfg);
  CHECK(is_optimal(only.state, solo, obj1, cfg.tol));
}

TEST_CASE("delta of the reduced costs") {
  Config cfg;
  TestRng rng(449);
  DataSet ds = ct_test::random_dataset(rng, 6, 2);
  SiteVector s = ct_test::random_sites(rng, 2, 2);
  TransportModel model(6, 2, SizeBounds{{1, 1}, {5, 5}});
  ObjectiveMatrix obj = objective_from_sites(ds, s);
  OptimizeResult solved = optimize(model, obj, cfg);

  SUBCASE("zero change gives a zero delta") {
    ObjectiveMatrix zero{std::vector<double>(12, 0.0), 2, 6};
    for (double v : delta_z(solved.state, model, zero)) CHECK(v == 0.0);
  }

  SUBCASE("the formula is linear: delta under c equals z itself") {
    std::vector<double> z = solved.state.reduced_costs(model.objective_vector(obj));
    std::vector<double> dz = delta_z(solved.state, model, obj);
    REQUIRE(z.size() == dz.size());
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(dz[i] == doctest::Approx(z[i]).epsilon(1e-9));
  }

  SUBCASE("finite differences confirm random directions") {
    SiteVector t = ct_test::random_sites(rng, 2, 2);
    ObjectiveMatrix dc = objective_from_sites(ds, t);
    const double h = 1e-4;
    ObjectiveMatrix bumped = obj;
    for (std::size_t i = 0; i < bumped.c.size(); ++i) bumped.c[i] += h * dc.c[i];
    std::vector<double> z0 = solved.state.reduced_costs(model.objective_vector(obj));
    std::vector<double> z1 = solved.state.reduced_costs(model.objective_vector(bumped));
    std::vector<double> dz = delta_z(solved.state, model, dc);
    for (std::size_t i = 0; i < dz.size(); ++i) {
      double fd = (z1[i] - z0[i]) / h;
      CHECK(std::abs(fd - dz[i]) <= 1e-5 * (1.0 + std::abs(dz[i])));
    }
  }
}

TEST_CASE("ranging breakpoints") {
  Config cfg;
  TestRng rng(457);

  SUBCASE("no drift or a parallel drift never ends the basis") {
    DataSet ds = ct_test::random_dataset(rng, 6, 2);
    SiteVector s = ct_test::random_sites(rng, 2, 2);
    TransportModel model(6, 2, SizeBounds{{1, 1}, {5, 5}});
    ObjectiveMatrix obj = objective_from_sites(ds, s);
    OptimizeResult solved = optimize(model, obj, cfg);
    ObjectiveMatrix zero{std::vector<double>(12, 0.0), 2, 6};
    CHECK(ranging_breakpoint(solved.state, model, obj, zero, cfg.tol) == infinity());
    CHECK(ranging_breakpoint(solved.state, model, obj, obj, cfg.tol) == infinity());
  }

  SUBCASE("a non-optimal basis is refused") {
    DataSet ds = ct_test::random_dataset(rng, 6, 2);
    SiteVector s = ct_test::random_sites(rng, 2, 2);
    TransportModel model(6, 2, ct_test::all_shapes(6, 2));
    ObjectiveMatrix obj = objective_from_sites(ds, s);
    BruteForceResult oracle = brute_force_best(ds, s, ct_test::all_shapes(6, 2), cfg.enum_budget);
    Clustering bad = ct_test::random_clustering(rng, 6, 2);
    while (rel_close(clustering_objective(obj, bad), oracle.objective, 1e-9))
      bad = ct_test::random_clustering(rng, 6, 2);
    BasisState state = model.basis_for_vertex(model.vertex_from_clustering(bad), cfg.tol);
    CHECK_THROWS_AS(ranging_breakpoint(state, model, obj, obj, cfg.tol), InputError);
  }

  SUBCASE("a constructed two-point crossing is hit exactly") {
    DataSet ds({-1.0, 0.0, 1.0, 0.0}, 2);
    SiteVector s{{-1.0, 0.0, 1.0, 0.0}, 2, 2};
    SiteVector t{{1.0, 0.0, -1.0, 0.0}, 2, 2};
    // loose bounds keep the optimal vertex nondegenerate
    SizeBounds bounds = ct_test::all_shapes(2, 2);
    TransportModel model(2, 2, bounds);
    ObjectiveMatrix cs = objective_from_sites(ds, s);
    ObjectiveMatrix ct = objective_from_sites(ds, t);
    ObjectiveMatrix dc = ct;
    for (std::size_t i = 0; i < dc.c.size(); ++i) dc.c[i] -= cs.c[i];
    OptimizeResult solved = optimize(model, cs, cfg);
    // identity split worth 2 at lambda=0, swapped split worth 2 at lambda=1;
    // they tie at lambda = 1/2
    double step = ranging_breakpoint(solved.state, model, cs, dc, cfg.tol);
    CHECK(step == doctest::Approx(0.5).epsilon(1e-9));
  }

  SUBCASE("random instances: the basis never outlives the vertex") {
    for (int trial = 0; trial < 12; ++trial) {
      DataSet ds = ct_test::random_dataset(rng, 6, 2);
      SiteVector s = ct_test::random_sites(rng, 2, 2);
      SiteVector t = ct_test::random_sites(rng, 2, 2);
      SizeBounds bounds{{1, 1}, {5, 5}};
      TransportModel model(6, 2, bounds);
      ObjectiveMatrix cs = objective_from_sites(ds, s);
      ObjectiveMatrix ct = objective_from_sites(ds, t);
      ObjectiveMatrix dc = ct;
      for (std::size_t i = 0; i < dc.c.size(); ++i) dc.c[i] -= cs.c[i];
      OptimizeResult solved = optimize(model, cs, cfg);
      Clustering mine = model.clustering_from_vertex(solved.vertex);
      double step = ranging_breakpoint(solved.state, model, cs, dc, cfg.tol);
      if (step == infinity() || step > 1.0) continue;

      // dual feasibility holds on [0, step): check just below the breakpoint
      double probe = std::max(step - 1e-6, 0.0);
      ObjectiveMatrix blend = cs;
      for (std::size_t i = 0; i < blend.c.size(); ++i) blend.c[i] += probe * dc.c[i];
      std::vector<double> z = solved.state.reduced_costs(model.objective_vector(blend));
      for (double v : z) CHECK(v >= -1e-6);

      // and the vertex is still an enumeration argmax there
      SiteVector sites_probe = interpolate(s, t, probe);
      BruteForceResult oracle = brute_force_best(ds, sites_probe, bounds, cfg.enum_budget);
      ObjectiveMatrix obj_probe = objective_from_sites(ds, sites_probe);
      CHECK(rel_close(clustering_objective(obj_probe, mine), oracle.objective, 1e-6));
    }
  }
}

TEST_SUITE_END();
