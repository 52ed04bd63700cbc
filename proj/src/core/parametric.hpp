#pragma once

#include <optional>
#include <vector>

#include "core/cdg.hpp"
#include "core/power_diagram.hpp"
#include "core/transport.hpp"

namespace clustrans {

// One breakpoint of the walk: the clustering that becomes optimal there,
// the exchange that produced it, a diagram shared with its predecessor at
// the interpolated sites, and (for interior steps) a diagram inducing it at
// the midpoint between its arrival and departure sites.
struct TransitionStep {
  double lambda = 0.0;
  Clustering clustering;
  Exchange exchange;
  PowerDiagram shared;
  std::optional<PowerDiagram> inducing;
};

struct RadToRadResult {
  Clustering start;
  std::vector<TransitionStep> steps;

  int breakpoints() const { return static_cast<int>(steps.size()); }
  const Clustering& last() const { return steps.empty() ? start : steps.back().clustering; }
};

/// Edge walk following (1-lambda)c(s) + lambda c(t) for increasing lambda.
/// Both inputs must already maximize their own objective over the bounded
/// polytope (verified at entry).
RadToRadResult rad_to_rad(const DataSet& ds, const Clustering& c_s_rad, const Clustering& c_t_rad,
                          const SiteVector& s, const SiteVector& t, const SizeBounds& bounds,
                          const Config& cfg);

struct AdvanceResult {
  bool moved = false;     // false: optimal for every remaining lambda <= 1
  double lambda = 0.0;    // breakpoint where the vertex changed
  TransportVertex vertex;
};

/// Raises lambda from `lambda_cur` to the next breakpoint at which the
/// optimal vertex actually changes, executing the required basis changes
/// and filtering out the purely degenerate ones.
AdvanceResult advance_to_breakpoint(const TransportModel& model, BasisState& state,
                                    const ObjectiveMatrix& c_s, const ObjectiveMatrix& c_t,
                                    double lambda_cur, const Config& cfg);

}  // namespace clustrans
