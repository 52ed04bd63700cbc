#include "core/cdg.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace clustrans {

Cdg build_cdg(const Clustering& c, const Clustering& c2) {
  if (c.n() != c2.n() || c.k != c2.k)
    throw InputError("clusterings must share the same items and cluster count");
  Cdg g;
  g.k = c.k;
  for (int j = 0; j < c.n(); ++j)
    if (c.assignment[j] != c2.assignment[j]) g.arcs.push_back({c.assignment[j], c2.assignment[j], j});
  return g;
}

namespace {

struct ArcPool {
  // out[v] holds arc ids sorted by (to, item); cursor skips used arcs.
  std::map<int, std::vector<int>> out;
  std::vector<bool> used;
  const std::vector<CdgArc>* arcs = nullptr;

  explicit ArcPool(const Cdg& g) : used(g.arcs.size(), false), arcs(&g.arcs) {
    for (int id = 0; id < static_cast<int>(g.arcs.size()); ++id) out[g.arcs[id].from].push_back(id);
    for (auto& [v, ids] : out)
      std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        const CdgArc &x = g.arcs[a], &y = g.arcs[b];
        return std::tie(x.to, x.item) < std::tie(y.to, y.item);
      });
  }

  int take_lowest(int v) {
    auto it = out.find(v);
    if (it == out.end()) return -1;
    for (int id : it->second)
      if (!used[id]) {
        used[id] = true;
        return id;
      }
    return -1;
  }

  bool exhausted(int v) const {
    auto it = out.find(v);
    if (it == out.end()) return true;
    for (int id : it->second)
      if (!used[id]) return false;
    return true;
  }
};

// Greedy trail from v0; whenever the trail returns to a node already on it,
// the enclosed loop is cut out as a cycle. What remains is node-simple.
std::vector<CdgArc> walk(ArcPool& pool, int v0, std::vector<Exchange>& cycles) {
  std::vector<CdgArc> trail;
  std::vector<int> nodes{v0};
  int cur = v0;
  while (true) {
    int id = pool.take_lowest(cur);
    if (id < 0) break;
    const CdgArc& a = (*pool.arcs)[id];
    trail.push_back(a);
    cur = a.to;
    auto pos = std::find(nodes.begin(), nodes.end(), cur);
    if (pos != nodes.end()) {
      std::size_t at = static_cast<std::size_t>(pos - nodes.begin());
      Exchange cyc;
      cyc.kind = ExchangeKind::Cycle;
      cyc.arcs.assign(trail.begin() + at, trail.end());
      cycles.push_back(std::move(cyc));
      trail.resize(at);
      nodes.resize(at + 1);
    } else {
      nodes.push_back(cur);
    }
  }
  return trail;
}

}  // namespace

CdgDecomposition decompose(const Cdg& g) {
  std::map<int, int> imbalance;  // out-degree minus in-degree
  for (const CdgArc& a : g.arcs) {
    ++imbalance[a.from];
    --imbalance[a.to];
  }
  int surplus = -1, deficit = -1;
  for (auto [v, b] : imbalance) {
    if (b == 0) continue;
    if (b == 1 && surplus < 0)
      surplus = v;
    else if (b == -1 && deficit < 0)
      deficit = v;
    else
      throw InputError("clustering difference graph has more than two odd-degree nodes");
  }
  if ((surplus < 0) != (deficit < 0))
    throw InputError("clustering difference graph has more than two odd-degree nodes");

  CdgDecomposition dec;
  ArcPool pool(g);
  if (surplus >= 0) {
    Exchange path;
    path.kind = ExchangeKind::Path;
    path.arcs = walk(pool, surplus, dec.cycles);
    if (path.arcs.empty() || path.arcs.back().to != deficit)
      throw InternalError("path extraction did not reach the deficit node");
    dec.path = std::move(path);
  }
  // Peel remaining cycles, lowest start node first.
  while (true) {
    int start = -1;
    for (auto& [v, ids] : pool.out)
      if (!pool.exhausted(v)) {
        start = v;
        break;
      }
    if (start < 0) break;
    std::vector<CdgArc> rest = walk(pool, start, dec.cycles);
    if (!rest.empty()) throw InternalError("leftover arcs do not close into cycles");
  }
  return dec;
}

Clustering apply_exchange(const Clustering& c, const Exchange& e) {
  Clustering out = c;
  std::vector<bool> moved(c.n(), false);
  for (const CdgArc& a : e.arcs) {
    if (a.item < 0 || a.item >= c.n()) throw InputError("exchange references an unknown item");
    if (moved[a.item]) throw InputError("exchange moves the same item twice");
    if (c.assignment[a.item] != a.from)
      throw InputError("exchange arc expects item " + std::to_string(a.item + 1) + " in cluster " +
                       std::to_string(a.from + 1));
    if (a.to < 0 || a.to >= c.k) throw InputError("exchange targets an unknown cluster");
    moved[a.item] = true;
    out.assignment[a.item] = a.to;
  }
  return out;
}

bool is_single_exchange(const Clustering& c, const Clustering& c2) {
  Cdg g = build_cdg(c, c2);
  if (g.empty()) return false;
  CdgDecomposition dec;
  try {
    dec = decompose(g);
  } catch (const InputError&) {
    return false;
  }
  if (dec.path) return dec.cycles.empty();
  return dec.cycles.size() == 1;
}

}  // namespace clustrans
