#include "clustrans.h"

#include <cstring>
#include <string>

#include "core/io.hpp"
#include "core/oracle.hpp"
#include "core/render.hpp"
#include "json.hpp"

using namespace clustrans;

struct ct_config {
  Config cfg;
};

struct ct_instance {
  Instance inst;
};

struct ct_transition {
  DataSet ds{std::vector<double>{0.0}, 1};
  TransitionSequence seq;
};

namespace {

thread_local std::string g_last_error;

char* to_cstr(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Config effective(const ct_config* cfg) { return cfg ? cfg->cfg : Config{}; }

template <typename F>
ct_status guarded(F&& body) {
  try {
    body();
    return CT_OK;
  } catch (const InputError& e) {
    g_last_error = e.what();
    return CT_ERROR_INPUT;
  } catch (const InternalError& e) {
    g_last_error = e.what();
    return CT_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CT_ERROR_INTERNAL;
  }
}

const SiteVector& require_sites(const Instance& inst) {
  if (!inst.sites) throw InputError("instance lacks a 'sites' entry");
  return *inst.sites;
}

SizeBounds bounds_or_all_shapes(const Instance& inst) {
  if (inst.bounds) return *inst.bounds;
  SizeBounds all;
  all.lower.assign(inst.k, 0);
  all.upper.assign(inst.k, inst.ds.size());
  return all;
}

}  // namespace

extern "C" {

const char* ct_version(void) { return "1.0.0"; }

const char* ct_last_error(void) { return g_last_error.c_str(); }

void ct_string_free(char* s) { delete[] s; }

ct_config* ct_config_new(void) { return new ct_config{}; }

void ct_config_free(ct_config* cfg) { delete cfg; }

ct_status ct_config_load_file(ct_config* cfg, const char* path) {
  return guarded([&] { cfg->cfg = load_config(path); });
}

ct_status ct_config_set_tol_feas(ct_config* cfg, double tol) {
  return guarded([&] {
    if (tol <= 0) throw InputError("feasibility tolerance must be positive");
    cfg->cfg.tol.feas = tol;
  });
}

ct_status ct_config_set_tol_opt(ct_config* cfg, double tol) {
  return guarded([&] {
    if (tol <= 0) throw InputError("optimality tolerance must be positive");
    cfg->cfg.tol.opt = tol;
  });
}

ct_status ct_config_set_pivot_rule(ct_config* cfg, const char* rule) {
  return guarded([&] {
    std::string name = rule ? rule : "";
    if (name == "dantzig")
      cfg->cfg.pivot = PivotRule::Dantzig;
    else if (name == "bland")
      cfg->cfg.pivot = PivotRule::Bland;
    else
      throw InputError("unknown pivot rule '" + name + "' (expected dantzig or bland)");
  });
}

ct_status ct_config_set_enum_budget(ct_config* cfg, uint64_t budget) {
  return guarded([&] { cfg->cfg.enum_budget = budget; });
}

ct_status ct_config_set_seed(ct_config* cfg, uint64_t seed) {
  return guarded([&] { cfg->cfg.seed = seed; });
}

ct_status ct_instance_parse(const char* text, ct_instance** out) {
  return guarded([&] { *out = new ct_instance{parse_instance(text)}; });
}

ct_status ct_instance_load_file(const char* path, ct_instance** out) {
  return guarded([&] { *out = new ct_instance{load_instance(path)}; });
}

void ct_instance_free(ct_instance* inst) { delete inst; }

int ct_instance_rank_deficient(const ct_instance* inst) {
  return inst->inst.ds.rank_deficient() ? 1 : 0;
}

ct_status ct_lsa(const ct_instance* inst, const ct_config* cfg, const int* shape, size_t shape_len,
                 char** out_text) {
  return guarded([&] {
    const Instance& in = inst->inst;
    const SiteVector& sites = require_sites(in);
    if (!shape || static_cast<int>(shape_len) != in.k)
      throw InputError("shape must list one size per cluster");
    Shape target;
    target.sizes.assign(shape, shape + shape_len);
    if (target.sum() != in.ds.size())
      throw InputError("shape sizes must sum to the number of items");
    SizeBounds fixed{target.sizes, target.sizes};
    TransportModel model(in.ds.size(), in.k, fixed);
    Config conf = effective(cfg);
    OptimizeResult best = optimize(model, objective_from_sites(in.ds, sites), conf);
    Instance annotated = in;
    annotated.clustering = model.clustering_from_vertex(best.vertex);
    *out_text = to_cstr(write_instance(annotated));
  });
}

ct_status ct_radial(const ct_instance* inst, const ct_config* cfg, char** out_text) {
  return guarded([&] {
    const Instance& in = inst->inst;
    const SiteVector& sites = require_sites(in);
    SizeBounds bounds = bounds_or_all_shapes(in);
    TransportModel model(in.ds.size(), in.k, bounds);
    Config conf = effective(cfg);
    OptimizeResult best = optimize(model, objective_from_sites(in.ds, sites), conf);
    Instance annotated = in;
    annotated.clustering = model.clustering_from_vertex(best.vertex);
    *out_text = to_cstr(write_instance(annotated));
  });
}

ct_status ct_transit(const ct_instance* inst, const ct_config* cfg, ct_transition** out) {
  return guarded([&] {
    const Instance& in = inst->inst;
    if (!in.initial_sites || !in.initial_clustering || !in.target_sites || !in.target_clustering)
      throw InputError(
          "transit needs 'initial' and 'target' entries with both sites and clustering");
    Config conf = effective(cfg);
    TransitionSequence seq = full_transition(in.ds, *in.initial_clustering, *in.target_clustering,
                                             *in.initial_sites, *in.target_sites, conf);
    *out = new ct_transition{in.ds, std::move(seq)};
  });
}

ct_status ct_oracle_check(const ct_instance* inst, const ct_config* cfg, char** out_report,
                          int* agree) {
  return guarded([&] {
    const Instance& in = inst->inst;
    const SiteVector& sites = require_sites(in);
    SizeBounds bounds = bounds_or_all_shapes(in);
    Config conf = effective(cfg);
    BruteForceResult oracle = brute_force_best(in.ds, sites, bounds, conf.enum_budget);
    TransportModel model(in.ds.size(), in.k, bounds);
    ObjectiveMatrix obj = objective_from_sites(in.ds, sites);
    OptimizeResult solved = optimize(model, obj, conf);
    double solver_obj = clustering_objective(obj, model.clustering_from_vertex(solved.vertex));
    bool ok = rel_close(solver_obj, oracle.objective, 1e-6);
    if (agree) *agree = ok ? 1 : 0;
    nlohmann::ordered_json report{{"solver_objective", solver_obj},
                                  {"oracle_objective", oracle.objective},
                                  {"agree", ok}};
    *out_report = to_cstr(report.dump(2) + "\n");
  });
}

ct_status ct_transition_parse(const char* text, ct_transition** out) {
  return guarded([&] {
    ParsedTransition parsed = parse_transition(text);
    *out = new ct_transition{std::move(parsed.ds), std::move(parsed.seq)};
  });
}

ct_status ct_transition_load_file(const char* path, ct_transition** out) {
  return guarded([&] {
    ParsedTransition parsed = load_transition(path);
    *out = new ct_transition{std::move(parsed.ds), std::move(parsed.seq)};
  });
}

ct_status ct_transition_to_text(const ct_transition* tr, char** out_text) {
  return guarded([&] { *out_text = to_cstr(write_transition(tr->ds, tr->seq)); });
}

void ct_transition_free(ct_transition* tr) { delete tr; }

size_t ct_transition_length(const ct_transition* tr) { return tr->seq.clusterings.size(); }

ct_status ct_verify(const ct_transition* tr, const ct_config* cfg, char** out_report,
                    int* all_passed) {
  return guarded([&] {
    VerifyReport report = verify_sequence(tr->ds, tr->seq, effective(cfg));
    if (all_passed) *all_passed = report.all_pass() ? 1 : 0;
    if (out_report) *out_report = to_cstr(write_report(report));
  });
}

ct_status ct_render_svg(const ct_transition* tr, int step, char** out_svg) {
  return guarded([&] { *out_svg = to_cstr(render_step_svg(tr->ds, tr->seq, step)); });
}

}  // extern "C"
