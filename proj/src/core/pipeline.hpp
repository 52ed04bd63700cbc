#pragma once

#include <string>
#include <vector>

#include "core/fixed_site.hpp"
#include "core/parametric.hpp"

namespace clustrans {

struct DiagramEntry {
  enum class Kind { Inducing, Shared };
  Kind kind = Kind::Inducing;
  // Inducing diagrams point at a clustering index, shared diagrams at the
  // pair (index, index + 1).
  int index = 0;
  PowerDiagram diagram;
};

// The assembled walk: fixed-site leg for the initial sites, parametric leg
// between the two radial clusterings, reversed fixed-site leg for the
// target sites. Boundary clusterings appear once.
struct TransitionSequence {
  SiteVector sites_initial;
  SiteVector sites_target;
  SizeBounds bounds;
  int p = 0;  // steps in the initial fixed-site leg
  int m = 0;  // breakpoints in the parametric leg
  int q = 0;  // steps in the target fixed-site leg
  std::vector<double> lambdas;          // size m
  std::vector<Clustering> clusterings;  // size p + m + q + 1
  std::vector<Exchange> exchanges;      // one per consecutive pair
  std::vector<DiagramEntry> diagrams;
  Clustering declared_initial;
  Clustering declared_target;
  Config config_used;

  int total_steps() const { return p + m + q; }
};

/// Runs both fixed-site legs (concurrently) and the parametric leg, then
/// concatenates them with the target leg reversed. Endpoint clusterings
/// must be optimal for their own shapes under their sites.
TransitionSequence full_transition(const DataSet& ds, const Clustering& c_s, const Clustering& c_t,
                                   const SiteVector& s, const SiteVector& t, const Config& cfg);

struct PropertyResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::vector<std::string> failures;
};

struct VerifyReport {
  std::vector<PropertyResult> properties;

  bool all_pass() const;
  std::string summary() const;
};

/// Re-checks the walk property by property: endpoints, per-shape
/// optimality, size bounds, single exchanges, diagram induction, radial
/// middle leg, per-leg site optimality, and distinct shapes per leg.
/// Failures become report entries, never exceptions.
VerifyReport verify_sequence(const DataSet& ds, const TransitionSequence& seq, const Config& cfg);

/// Number of integer shape vectors between the bounds that sum to n.
long count_feasible_shapes(const SizeBounds& bounds, int n);

}  // namespace clustrans
