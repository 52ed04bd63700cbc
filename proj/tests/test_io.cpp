#include <cmath>

#include "core/io.hpp"
#include "core/render.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace clustrans;
using ct_test::TestRng;

namespace {

const char* kSmallInstance = R"({
  "format": "clustrans-instance",
  "version": 1,
  "points": [[-1.0, 0.0], [-0.5, 0.25], [0.5, -0.25], [1.0, 0.0]],
  "k": 2,
  "bounds": {"lower": [1, 1], "upper": [3, 3]},
  "sites": [[-1.0, 0.0], [1.0, 0.0]],
  "clustering": [1, 1, 2, 2]
})";

TransitionSequence small_transition(DataSet& ds_out, const Config& cfg) {
  TestRng rng(901);
  DataSet ds = ct_test::random_dataset(rng, 8, 2);
  SiteVector s = ct_test::random_sites(rng, 2, 2);
  SiteVector t = ct_test::random_sites(rng, 2, 2);
  Clustering c_s = ct_test::lsa_for_shape(ds, s, Shape{{5, 3}}, cfg);
  Clustering c_t = ct_test::lsa_for_shape(ds, t, Shape{{3, 5}}, cfg);
  TransitionSequence seq = full_transition(ds, c_s, c_t, s, t, cfg);
  ds_out = ds;
  return seq;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("instance files canonicalize to a fixpoint") {
  Instance inst = parse_instance(kSmallInstance);
  CHECK(inst.ds.size() == 4);
  CHECK(inst.k == 2);
  REQUIRE(inst.clustering.has_value());
  CHECK(inst.clustering->assignment == std::vector<int>{0, 0, 1, 1});  // 1-based on disk only
  std::string once = write_instance(inst);
  std::string twice = write_instance(parse_instance(once));
  CHECK(once == twice);
}

TEST_CASE("parse errors carry line numbers") {
  std::string broken = "{\n  \"format\": \"clustrans-instance\",\n  \"version\": 1,\n  oops\n}";
  try {
    parse_instance(broken);
    FAIL("expected a parse error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("semantic validation of instances") {
  Instance inst = parse_instance(kSmallInstance);
  SUBCASE("wrong format tag") {
    CHECK_THROWS_AS(parse_instance("{\"format\": \"something-else\", \"version\": 1}"), InputError);
  }
  SUBCASE("cluster index out of range") {
    std::string text = kSmallInstance;
    text.replace(text.find("[1, 1, 2, 2]"), 12, "[1, 1, 2, 7]");
    CHECK_THROWS_AS(parse_instance(text), InputError);
  }
  SUBCASE("duplicate points are refused") {
    std::string text = kSmallInstance;
    text.replace(text.find("[-0.5, 0.25]"), 12, "[-1.0, 0.00]");
    CHECK_THROWS_AS(parse_instance(text), InputError);
  }
  (void)inst;
}

TEST_CASE("config round trip and validation") {
  Config cfg;
  cfg.tol.feas = 1e-10;
  cfg.pivot = PivotRule::Bland;
  cfg.seed = 42;
  Config back = parse_config(write_config(cfg));
  CHECK(back.tol.feas == cfg.tol.feas);
  CHECK(back.pivot == cfg.pivot);
  CHECK(back.seed == cfg.seed);
  CHECK_THROWS_AS(parse_config("{\"pivot\": \"steepest\"}"), InputError);
  CHECK_THROWS_AS(parse_config("{\"tol_feas\": -1.0}"), InputError);
}

TEST_CASE("transition files round trip through text") {
  Config cfg;
  DataSet ds{std::vector<double>{0.0}, 1};
  TransitionSequence seq = small_transition(ds, cfg);
  std::string text = write_transition(ds, seq);
  ParsedTransition back = parse_transition(text);
  CHECK(back.ds.size() == ds.size());
  CHECK(back.seq.clusterings == seq.clusterings);
  CHECK(back.seq.lambdas.size() == seq.lambdas.size());
  CHECK(write_transition(back.ds, back.seq) == text);  // canonical fixpoint

  // verification reads the same report off the parsed copy
  VerifyReport original = verify_sequence(ds, seq, cfg);
  VerifyReport reread = verify_sequence(back.ds, back.seq, cfg);
  CHECK(original.all_pass());
  CHECK(reread.all_pass());
  CHECK(write_report(original) == write_report(reread));
}

TEST_CASE("reports serialize failures") {
  VerifyReport report;
  report.properties.push_back({4, "consecutive clusterings differ by a single exchange", false,
                               std::vector<std::string>{"pair 3 is not a single exchange"}});
  std::string text = write_report(report);
  CHECK(text.find("\"pass\": false") != std::string::npos);
  CHECK(text.find("pair 3") != std::string::npos);
}

TEST_CASE("rendering is deterministic and geometrically consistent") {
  Config cfg;
  DataSet ds{std::vector<double>{0.0}, 1};
  TransitionSequence seq = small_transition(ds, cfg);
  std::string svg1 = render_step_svg(ds, seq, 0);
  std::string svg2 = render_step_svg(ds, seq, 0);
  CHECK(svg1 == svg2);
  CHECK(svg1.find("<svg") != std::string::npos);

  // after a text round trip the drawing is still byte-identical
  ParsedTransition back = parse_transition(write_transition(ds, seq));
  CHECK(render_step_svg(back.ds, back.seq, 0) == svg1);

  // every item sits inside the polygon drawn for its cluster
  const PowerDiagram* pd = nullptr;
  for (const DiagramEntry& d : seq.diagrams)
    if (d.kind == DiagramEntry::Kind::Inducing && d.index == 0) pd = &d.diagram;
  REQUIRE(pd);
  RenderPoint lo{-1e9, -1e9}, hi{1e9, 1e9};
  // recompute the box the renderer uses: pad around points and sites
  double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
  for (int j = 0; j < ds.size(); ++j) {
    minx = std::min(minx, ds.point(j)[0]);
    maxx = std::max(maxx, ds.point(j)[0]);
    miny = std::min(miny, ds.point(j)[1]);
    maxy = std::max(maxy, ds.point(j)[1]);
  }
  for (int i = 0; i < pd->sites.k; ++i) {
    minx = std::min(minx, pd->sites.site(i)[0]);
    maxx = std::max(maxx, pd->sites.site(i)[0]);
    miny = std::min(miny, pd->sites.site(i)[1]);
    maxy = std::max(maxy, pd->sites.site(i)[1]);
  }
  double padding = 0.08 * std::max({maxx - minx, maxy - miny, 1e-9});
  lo = {minx - padding, miny - padding};
  hi = {maxx + padding, maxy + padding};
  const Clustering& c0 = seq.clusterings[0];
  for (int j = 0; j < ds.size(); ++j) {
    std::vector<RenderPoint> poly = cell_polygon(*pd, c0.assignment[j], lo, hi);
    REQUIRE(poly.size() >= 3);
    // convex polygon: the point is on the inner side of every edge
    double px = ds.point(j)[0], py = ds.point(j)[1];
    for (std::size_t e = 0; e < poly.size(); ++e) {
      const RenderPoint& a = poly[e];
      const RenderPoint& b = poly[(e + 1) % poly.size()];
      double cross = (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
      CHECK(cross >= -1e-6);  // counterclockwise polygons keep items left of edges
    }
  }
}

TEST_CASE("five-cluster drawings keep every point inside its polygon") {
  TestRng rng(911);
  Config cfg;
  DataSet ds = ct_test::random_dataset(rng, 20, 2);
  SiteVector s = ct_test::random_sites(rng, 5, 2);
  Clustering c = ct_test::lsa_for_shape(ds, s, Shape{{4, 4, 4, 4, 4}}, cfg);
  TransitionSequence seq = full_transition(ds, c, c, s, s, cfg);
  std::string svg = render_step_svg(ds, seq, 0);
  CHECK(svg.find("<polygon") != std::string::npos);

  const PowerDiagram& pd = seq.diagrams.front().diagram;
  double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
  for (int j = 0; j < ds.size(); ++j) {
    minx = std::min(minx, ds.point(j)[0]);
    maxx = std::max(maxx, ds.point(j)[0]);
    miny = std::min(miny, ds.point(j)[1]);
    maxy = std::max(maxy, ds.point(j)[1]);
  }
  for (int i = 0; i < 5; ++i) {
    minx = std::min(minx, pd.sites.site(i)[0]);
    maxx = std::max(maxx, pd.sites.site(i)[0]);
    miny = std::min(miny, pd.sites.site(i)[1]);
    maxy = std::max(maxy, pd.sites.site(i)[1]);
  }
  double padding = 0.08 * std::max({maxx - minx, maxy - miny, 1e-9});
  RenderPoint lo{minx - padding, miny - padding};
  RenderPoint hi{maxx + padding, maxy + padding};
  for (int j = 0; j < ds.size(); ++j) {
    std::vector<RenderPoint> poly = cell_polygon(pd, c.assignment[j], lo, hi);
    REQUIRE(poly.size() >= 3);
    double px = ds.point(j)[0], py = ds.point(j)[1];
    for (std::size_t e = 0; e < poly.size(); ++e) {
      const RenderPoint& a = poly[e];
      const RenderPoint& b = poly[(e + 1) % poly.size()];
      CHECK((b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x) >= -1e-6);
    }
  }
}

TEST_CASE("rendering refuses non-planar data and bad steps") {
  Config cfg;
  TestRng rng(907);
  DataSet ds3 = ct_test::random_dataset(rng, 6, 3);
  SiteVector s3 = ct_test::random_sites(rng, 2, 3);
  Clustering cs = ct_test::lsa_for_shape(ds3, s3, Shape{{3, 3}}, cfg);
  TransitionSequence seq = full_transition(ds3, cs, cs, s3, s3, cfg);
  CHECK_THROWS_AS(render_step_svg(ds3, seq, 0), InputError);

  DataSet ds{std::vector<double>{0.0}, 1};
  TransitionSequence small = small_transition(ds, cfg);
  CHECK_THROWS_AS(render_step_svg(ds, small, -1), InputError);
  CHECK_THROWS_AS(render_step_svg(ds, small, 10000), InputError);
}

TEST_SUITE_END();
