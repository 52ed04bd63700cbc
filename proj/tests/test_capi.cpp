#include <cstring>
#include <string>

#include "clustrans.h"
#include "doctest.h"

namespace {

// A 2-D instance with hand-checked endpoint assignments: four points on a
// line, sites mirrored between initial and target.
const char* kInstance = R"({
  "format": "clustrans-instance",
  "version": 1,
  "points": [[-2.0, 0.1], [-1.0, -0.1], [1.0, 0.1], [2.0, -0.1]],
  "k": 2,
  "sites": [[-1.0, 0.0], [1.0, 0.0]],
  "initial": {
    "sites": [[-1.0, 0.0], [1.0, 0.0]],
    "clustering": [1, 1, 2, 2]
  },
  "target": {
    "sites": [[1.0, 0.3], [-1.0, -0.3]],
    "clustering": [2, 2, 1, 1]
  }
})";

struct Text {
  char* ptr = nullptr;
  ~Text() { ct_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

}  // namespace

TEST_CASE("capi: version and error strings exist") {
  CHECK(ct_version() != nullptr);
  CHECK(ct_last_error() != nullptr);
}

TEST_CASE("capi: parse failures return input errors with messages") {
  ct_instance* inst = nullptr;
  CHECK(ct_instance_parse("{not json", &inst) == CT_ERROR_INPUT);
  CHECK(std::strlen(ct_last_error()) > 0);
  CHECK(ct_instance_parse("{\"format\": \"wrong\", \"version\": 1}", &inst) == CT_ERROR_INPUT);
}

TEST_CASE("capi: config knobs validate their arguments") {
  ct_config* cfg = ct_config_new();
  CHECK(ct_config_set_pivot_rule(cfg, "bland") == CT_OK);
  CHECK(ct_config_set_pivot_rule(cfg, "newton") == CT_ERROR_INPUT);
  CHECK(ct_config_set_tol_feas(cfg, -1.0) == CT_ERROR_INPUT);
  CHECK(ct_config_set_tol_feas(cfg, 1e-9) == CT_OK);
  CHECK(ct_config_set_seed(cfg, 7) == CT_OK);
  ct_config_free(cfg);
}

TEST_CASE("capi: lsa, radial and the oracle agree on a tiny instance") {
  ct_instance* inst = nullptr;
  REQUIRE(ct_instance_parse(kInstance, &inst) == CT_OK);
  CHECK(ct_instance_rank_deficient(inst) == 0);

  int shape[2] = {2, 2};
  Text lsa;
  REQUIRE(ct_lsa(inst, nullptr, shape, 2, &lsa.ptr) == CT_OK);
  CHECK(lsa.str().find("\"clustering\": [") != std::string::npos);
  // nearest split: the two left points with the left site
  CHECK(lsa.str().find("[\n    1,\n    1,\n    2,\n    2\n  ]") != std::string::npos);

  Text radial;
  REQUIRE(ct_radial(inst, nullptr, &radial.ptr) == CT_OK);

  Text report;
  int agree = 0;
  REQUIRE(ct_oracle_check(inst, nullptr, &report.ptr, &agree) == CT_OK);
  CHECK(agree == 1);
  CHECK(report.str().find("\"agree\": true") != std::string::npos);

  int bad_shape[2] = {3, 2};
  Text broken;
  CHECK(ct_lsa(inst, nullptr, bad_shape, 2, &broken.ptr) == CT_ERROR_INPUT);

  ct_instance_free(inst);
}

TEST_CASE("capi: transit, verify, serialize, re-parse, render") {
  ct_instance* inst = nullptr;
  REQUIRE(ct_instance_parse(kInstance, &inst) == CT_OK);

  ct_transition* tr = nullptr;
  REQUIRE(ct_transit(inst, nullptr, &tr) == CT_OK);
  CHECK(ct_transition_length(tr) >= 2);

  Text report;
  int passed = 0;
  REQUIRE(ct_verify(tr, nullptr, &report.ptr, &passed) == CT_OK);
  CHECK(passed == 1);
  CHECK(report.str().find("\"pass\": true") != std::string::npos);

  Text text;
  REQUIRE(ct_transition_to_text(tr, &text.ptr) == CT_OK);
  ct_transition* back = nullptr;
  REQUIRE(ct_transition_parse(text.ptr, &back) == CT_OK);
  CHECK(ct_transition_length(back) == ct_transition_length(tr));
  Text text2;
  REQUIRE(ct_transition_to_text(back, &text2.ptr) == CT_OK);
  CHECK(text.str() == text2.str());

  Text svg;
  REQUIRE(ct_render_svg(tr, 0, &svg.ptr) == CT_OK);
  CHECK(svg.str().find("<svg") == 0);
  Text svg_again;
  REQUIRE(ct_render_svg(back, 0, &svg_again.ptr) == CT_OK);
  CHECK(svg.str() == svg_again.str());
  CHECK(ct_render_svg(tr, 9999, &svg_again.ptr) == CT_ERROR_INPUT);

  ct_transition_free(back);
  ct_transition_free(tr);
  ct_instance_free(inst);
}

TEST_CASE("capi: transit refuses incomplete instances") {
  const char* incomplete = R"({
    "format": "clustrans-instance",
    "version": 1,
    "points": [[0.0, 0.0], [1.0, 1.0]],
    "k": 2
  })";
  ct_instance* inst = nullptr;
  REQUIRE(ct_instance_parse(incomplete, &inst) == CT_OK);
  ct_transition* tr = nullptr;
  CHECK(ct_transit(inst, nullptr, &tr) == CT_ERROR_INPUT);
  ct_instance_free(inst);
}
