// Command-line front end. Talks to the library exclusively through the C
// API in clustrans.h; all formats and algorithms live behind it.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clustrans.h"

namespace {

struct StringOut {
  char* ptr = nullptr;
  ~StringOut() { ct_string_free(ptr); }
};

int fail(ct_status status) {
  std::fprintf(stderr, "error: %s\n", ct_last_error());
  return static_cast<int>(status);
}

bool write_text_file(const std::string& path, const char* text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n", path.c_str());
    return false;
  }
  std::fputs(text, f);
  std::fclose(f);
  return true;
}

using InstancePtr = std::unique_ptr<ct_instance, decltype(&ct_instance_free)>;
using TransitionPtr = std::unique_ptr<ct_transition, decltype(&ct_transition_free)>;

int load_instance_checked(const std::string& path, InstancePtr& out) {
  ct_instance* raw = nullptr;
  ct_status st = ct_instance_load_file(path.c_str(), &raw);
  if (st != CT_OK) return fail(st);
  out.reset(raw);
  if (ct_instance_rank_deficient(raw))
    std::fprintf(stderr,
                 "warning: the points span a proper subspace of their ambient dimension\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stepwise separability-preserving transitions between clusterings"};
  app.require_subcommand(1);

  std::string config_path;
  double tol_feas = -1.0, tol_opt = -1.0;
  std::string pivot;
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--config", config_path, "configuration file (JSON)");
  app.add_option("--tol-feas", tol_feas, "feasibility tolerance override");
  app.add_option("--tol-opt", tol_opt, "optimality tolerance override");
  app.add_option("--pivot", pivot, "pivot rule: dantzig or bland")
      ->check(CLI::IsMember({"dantzig", "bland"}));
  app.add_option("--seed", seed, "seed recorded in output headers")->each([&](const std::string&) {
    seed_set = true;
  });

  std::string in_path, out_path, shape_arg;
  std::vector<int> shape;
  int step = 0;

  CLI::App* cmd_transit = app.add_subcommand("transit", "compute and verify a full transition");
  cmd_transit->add_option("instance", in_path)->required();
  cmd_transit->add_option("-o,--output", out_path, "transition file to write")->required();

  CLI::App* cmd_lsa = app.add_subcommand("lsa", "best clustering of a fixed shape for the sites");
  cmd_lsa->add_option("instance", in_path)->required();
  cmd_lsa->add_option("--shape", shape, "cluster sizes, e.g. 3,3,2")->required()->delimiter(',');
  cmd_lsa->add_option("-o,--output", out_path)->required();

  CLI::App* cmd_radial = app.add_subcommand("radial", "best clustering over all feasible shapes");
  cmd_radial->add_option("instance", in_path)->required();
  cmd_radial->add_option("-o,--output", out_path)->required();

  CLI::App* cmd_verify = app.add_subcommand("verify", "re-check a transition file");
  cmd_verify->add_option("transition", in_path)->required();

  CLI::App* cmd_render = app.add_subcommand("render", "draw one step of a transition as SVG");
  cmd_render->add_option("transition", in_path)->required();
  cmd_render->add_option("--step", step, "clustering index to draw")->required();
  cmd_render->add_option("-o,--output", out_path)->required();

  CLI::App* cmd_oracle = app.add_subcommand("oracle", "brute-force cross-check of the solver");
  cmd_oracle->add_option("instance", in_path)->required();

  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<ct_config, decltype(&ct_config_free)> cfg(ct_config_new(), ct_config_free);
  if (!config_path.empty()) {
    ct_status st = ct_config_load_file(cfg.get(), config_path.c_str());
    if (st != CT_OK) return fail(st);
  }
  if (tol_feas > 0 && ct_config_set_tol_feas(cfg.get(), tol_feas) != CT_OK)
    return fail(CT_ERROR_INPUT);
  if (tol_opt > 0 && ct_config_set_tol_opt(cfg.get(), tol_opt) != CT_OK) return fail(CT_ERROR_INPUT);
  if (!pivot.empty() && ct_config_set_pivot_rule(cfg.get(), pivot.c_str()) != CT_OK)
    return fail(CT_ERROR_INPUT);
  if (seed_set) ct_config_set_seed(cfg.get(), seed);

  if (*cmd_transit) {
    InstancePtr inst(nullptr, ct_instance_free);
    if (int rc = load_instance_checked(in_path, inst)) return rc;
    ct_transition* raw = nullptr;
    ct_status st = ct_transit(inst.get(), cfg.get(), &raw);
    if (st != CT_OK) return fail(st);
    TransitionPtr tr(raw, ct_transition_free);

    StringOut report;
    int passed = 0;
    st = ct_verify(tr.get(), cfg.get(), &report.ptr, &passed);
    if (st != CT_OK) return fail(st);
    if (!passed) {
      std::fputs(report.ptr, stdout);
      std::fprintf(stderr, "verification failed; no file written\n");
      return CT_VERIFICATION_FAILED;
    }
    StringOut text;
    st = ct_transition_to_text(tr.get(), &text.ptr);
    if (st != CT_OK) return fail(st);
    if (!write_text_file(out_path, text.ptr)) return CT_ERROR_INPUT;
    std::printf("transition with %zu clusterings written to %s\n", ct_transition_length(tr.get()),
                out_path.c_str());
    return 0;
  }

  if (*cmd_lsa || *cmd_radial) {
    InstancePtr inst(nullptr, ct_instance_free);
    if (int rc = load_instance_checked(in_path, inst)) return rc;
    StringOut text;
    ct_status st = *cmd_lsa ? ct_lsa(inst.get(), cfg.get(), shape.data(), shape.size(), &text.ptr)
                            : ct_radial(inst.get(), cfg.get(), &text.ptr);
    if (st != CT_OK) return fail(st);
    if (!write_text_file(out_path, text.ptr)) return CT_ERROR_INPUT;
    return 0;
  }

  if (*cmd_verify) {
    ct_transition* raw = nullptr;
    ct_status st = ct_transition_load_file(in_path.c_str(), &raw);
    if (st != CT_OK) return fail(st);
    TransitionPtr tr(raw, ct_transition_free);
    StringOut report;
    int passed = 0;
    st = ct_verify(tr.get(), cfg.get(), &report.ptr, &passed);
    if (st != CT_OK) return fail(st);
    std::fputs(report.ptr, stdout);
    return passed ? 0 : CT_VERIFICATION_FAILED;
  }

  if (*cmd_render) {
    ct_transition* raw = nullptr;
    ct_status st = ct_transition_load_file(in_path.c_str(), &raw);
    if (st != CT_OK) return fail(st);
    TransitionPtr tr(raw, ct_transition_free);
    StringOut svg;
    st = ct_render_svg(tr.get(), step, &svg.ptr);
    if (st != CT_OK) return fail(st);
    if (!write_text_file(out_path, svg.ptr)) return CT_ERROR_INPUT;
    return 0;
  }

  if (*cmd_oracle) {
    InstancePtr inst(nullptr, ct_instance_free);
    if (int rc = load_instance_checked(in_path, inst)) return rc;
    StringOut report;
    int agree = 0;
    ct_status st = ct_oracle_check(inst.get(), cfg.get(), &report.ptr, &agree);
    if (st != CT_OK) return fail(st);
    std::fputs(report.ptr, stdout);
    return agree ? 0 : CT_VERIFICATION_FAILED;
  }

  return 0;
}
