#include "core/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace clustrans {

namespace {

const char* kPalette[] = {"#3366cc", "#dc3912", "#ff9900", "#109618", "#990099",
                          "#0099c6", "#dd4477", "#66aa00", "#b82e2e", "#316395"};
constexpr int kPaletteSize = 10;

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Keep the part of `poly` with a*x + b*y <= c.
std::vector<RenderPoint> clip_halfplane(const std::vector<RenderPoint>& poly, double a, double b,
                                        double c) {
  std::vector<RenderPoint> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RenderPoint& cur = poly[i];
    const RenderPoint& nxt = poly[(i + 1) % n];
    double fc = a * cur.x + b * cur.y - c;
    double fn = a * nxt.x + b * nxt.y - c;
    if (fc <= 0) out.push_back(cur);
    if ((fc < 0 && fn > 0) || (fc > 0 && fn < 0)) {
      double t = fc / (fc - fn);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

}  // namespace

std::vector<RenderPoint> cell_polygon(const PowerDiagram& pd, int cell, RenderPoint box_min,
                                      RenderPoint box_max) {
  std::vector<RenderPoint> poly{{box_min.x, box_min.y},
                                {box_max.x, box_min.y},
                                {box_max.x, box_max.y},
                                {box_min.x, box_max.y}};
  for (int l = 0; l < pd.sites.k && !poly.empty(); ++l) {
    if (l == cell) continue;
    double a = pd.sites.site(l)[0] - pd.sites.site(cell)[0];
    double b = pd.sites.site(l)[1] - pd.sites.site(cell)[1];
    if (std::abs(a) + std::abs(b) < 1e-12) continue;  // coincident sites constrain nothing here
    poly = clip_halfplane(poly, a, b, pd.gammas[l] - pd.gammas[cell]);
  }
  return poly;
}

std::string render_step_svg(const DataSet& ds, const TransitionSequence& seq, int step) {
  if (ds.dim() != 2) throw InputError("rendering is only supported for 2-D datasets");
  if (step < 0 || step >= static_cast<int>(seq.clusterings.size()))
    throw InputError("step index out of range");
  const PowerDiagram* pd = nullptr;
  for (const DiagramEntry& d : seq.diagrams)
    if (d.kind == DiagramEntry::Kind::Inducing && d.index == step) {
      pd = &d.diagram;
      break;
    }
  if (!pd) throw InputError("no inducing diagram recorded for this step");
  const Clustering& clustering = seq.clusterings[step];

  double minx = infinity(), miny = infinity(), maxx = -infinity(), maxy = -infinity();
  auto grow = [&](double x, double y) {
    minx = std::min(minx, x);
    miny = std::min(miny, y);
    maxx = std::max(maxx, x);
    maxy = std::max(maxy, y);
  };
  for (int j = 0; j < ds.size(); ++j) grow(ds.point(j)[0], ds.point(j)[1]);
  for (int i = 0; i < pd->sites.k; ++i) grow(pd->sites.site(i)[0], pd->sites.site(i)[1]);
  double range = std::max({maxx - minx, maxy - miny, 1e-9});
  double pad = 0.08 * range;
  RenderPoint box_min{minx - pad, miny - pad};
  RenderPoint box_max{maxx + pad, maxy + pad};

  const double canvas = 800.0;
  double scale = canvas / std::max(box_max.x - box_min.x, box_max.y - box_min.y);
  double width = (box_max.x - box_min.x) * scale;
  double height = (box_max.y - box_min.y) * scale;
  auto sx = [&](double x) { return (x - box_min.x) * scale; };
  auto sy = [&](double y) { return (box_max.y - y) * scale; };  // SVG y points down

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
         fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
         "\" fill=\"#ffffff\"/>\n";

  for (int cell = 0; cell < pd->sites.k; ++cell) {
    std::vector<RenderPoint> poly = cell_polygon(*pd, cell, box_min, box_max);
    if (poly.empty()) continue;
    const char* color = kPalette[cell % kPaletteSize];
    std::string pts;
    for (const RenderPoint& p : poly) {
      if (!pts.empty()) pts += " ";
      pts += fmt(sx(p.x)) + "," + fmt(sy(p.y));
    }
    svg += "<polygon points=\"" + pts + "\" fill=\"" + color +
           "\" fill-opacity=\"0.12\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  }

  double dot = 0.006 * canvas;
  for (int j = 0; j < ds.size(); ++j) {
    const char* color = kPalette[clustering.assignment[j] % kPaletteSize];
    svg += "<circle cx=\"" + fmt(sx(ds.point(j)[0])) + "\" cy=\"" + fmt(sy(ds.point(j)[1])) +
           "\" r=\"" + fmt(dot) + "\" fill=\"" + color + "\"/>\n";
  }

  double cross = 0.012 * canvas;
  for (int i = 0; i < pd->sites.k; ++i) {
    double cx = sx(pd->sites.site(i)[0]);
    double cy = sy(pd->sites.site(i)[1]);
    const char* color = kPalette[i % kPaletteSize];
    svg += "<path d=\"M " + fmt(cx - cross) + " " + fmt(cy) + " L " + fmt(cx + cross) + " " +
           fmt(cy) + " M " + fmt(cx) + " " + fmt(cy - cross) + " L " + fmt(cx) + " " +
           fmt(cy + cross) + "\" stroke=\"" + color + "\" stroke-width=\"3\" fill=\"none\"/>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace clustrans
