#pragma once

#include <optional>
#include <vector>

#include "core/types.hpp"

namespace clustrans {

// Arc (from, to, item): the item sits in cluster `from` of the first
// clustering and in cluster `to` of the second.
struct CdgArc {
  int from = 0;
  int to = 0;
  int item = 0;

  bool operator==(const CdgArc&) const = default;
};

struct Cdg {
  int k = 0;
  std::vector<CdgArc> arcs;

  bool empty() const { return arcs.empty(); }
};

enum class ExchangeKind { Path, Cycle };

// An ordered arc walk: consecutive arcs chain head to tail; a cycle closes.
struct Exchange {
  ExchangeKind kind = ExchangeKind::Path;
  std::vector<CdgArc> arcs;

  bool operator==(const Exchange&) const = default;
};

struct CdgDecomposition {
  std::optional<Exchange> path;
  std::vector<Exchange> cycles;
};

Cdg build_cdg(const Clustering& c, const Clustering& c2);

/// Splits the arc set into one path (present iff two nodes have odd
/// degree) plus arc-disjoint cycles. Walks start at the lowest eligible
/// node and always follow the lowest unused out-arc, so the result is
/// deterministic. Throws InputError if more than two nodes have odd degree.
CdgDecomposition decompose(const Cdg& g);

Clustering apply_exchange(const Clustering& c, const Exchange& e);

/// True iff the two clusterings differ by exactly one path or one cycle.
bool is_single_exchange(const Clustering& c, const Clustering& c2);

}  // namespace clustrans
