#pragma once

#include <vector>

#include "core/cdg.hpp"
#include "core/power_diagram.hpp"
#include "core/transport.hpp"

namespace clustrans {

// Walk from a size-constrained least-squares assignment to a radial
// clustering for the same sites: every step changes the shape by one
// sequential exchange and lands on the best clustering of its new shape.
struct FixedSiteResult {
  std::vector<Clustering> clusterings;    // C^0 .. C^r
  std::vector<double> objectives;         // c(sites)^T y per clustering
  std::vector<Exchange> exchanges;        // per step, size r
  std::vector<PowerDiagram> inducing;     // P^0 .. P^r, one per clustering
  std::vector<PowerDiagram> shared;       // one per consecutive pair, size r

  int steps() const { return static_cast<int>(exchanges.size()); }
  const Clustering& radial() const { return clusterings.back(); }
};

/// Requires `c` to be optimal among clusterings of its own shape for
/// `sites` (verified by re-optimization, not assumed) and within bounds.
FixedSiteResult init_to_rad(const DataSet& ds, const Clustering& c, const SiteVector& sites,
                            const SizeBounds& bounds, const Config& cfg);

/// One transition step: improving move over the bounded-shape polytope,
/// re-optimization within the new shape, and path-only repair so the result
/// differs from `c_prev` by a single sequential exchange.
Clustering step_to_next_shape(const TransportModel& model, const Clustering& c_prev,
                              const TransportVertex& adjacent, const ObjectiveMatrix& obj,
                              const Config& cfg);

}  // namespace clustrans
