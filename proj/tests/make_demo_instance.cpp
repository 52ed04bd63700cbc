// Writes a small, valid 2-D instance with solver-produced endpoint
// clusterings, for exercising the command-line tool end to end.

#include <cstdio>

#include "core/io.hpp"
#include "test_support.hpp"

using namespace clustrans;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: make_demo_instance <output.json>\n");
    return 2;
  }
  ct_test::TestRng rng(20240817);
  Config cfg;
  DataSet ds = ct_test::random_dataset(rng, 12, 2);
  SiteVector s = ct_test::random_sites(rng, 3, 2);
  SiteVector t = s;
  for (double& v : t.coords) v += rng.uniform(-1.0, 1.0);

  Instance inst;
  inst.ds = ds;
  inst.k = 3;
  inst.sites = s;
  inst.initial_sites = s;
  inst.initial_clustering = ct_test::lsa_for_shape(ds, s, Shape{{5, 4, 3}}, cfg);
  inst.target_sites = t;
  inst.target_clustering = ct_test::lsa_for_shape(ds, t, Shape{{4, 4, 4}}, cfg);
  write_file(argv[1], write_instance(inst));
  return 0;
}
