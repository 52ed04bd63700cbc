#pragma once

#include <string>
#include <vector>

#include "core/pipeline.hpp"

namespace clustrans {

// 2-D drawing of one step of a transition: cell polygons (half-planes
// clipped against a padded bounding box of the data), items as dots colored
// by cluster, sites as crosses. Output is deterministic byte for byte.

struct RenderPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Convex polygon for cell `cell` of the diagram, clipped to the box.
std::vector<RenderPoint> cell_polygon(const PowerDiagram& pd, int cell, RenderPoint box_min,
                                      RenderPoint box_max);

/// SVG for clustering index `step` of the sequence, drawn with its inducing
/// diagram. Only d == 2 datasets can be rendered.
std::string render_step_svg(const DataSet& ds, const TransitionSequence& seq, int step);

}  // namespace clustrans
