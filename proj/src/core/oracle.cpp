#include "core/oracle.hpp"

#include <cmath>

namespace clustrans {

namespace {

void check_budget(int n, int k, std::uint64_t budget) {
  double combos = std::pow(static_cast<double>(k), n);
  if (combos > static_cast<double>(budget))
    throw InputError("enumeration budget exceeded: k^n = " + std::to_string(combos) + " > " +
                     std::to_string(budget));
}

// Visits every assignment within the bounds in lexicographic order
// (item 0 most significant), pruning partial assignments that cannot
// reach a feasible shape.
template <typename Fn>
void enumerate(int n, int k, const SizeBounds& bounds, Fn&& visit) {
  std::vector<int> assignment(n, 0);
  std::vector<int> counts(k, 0);
  auto can_extend = [&](int depth) {
    int missing = 0, room = 0;
    for (int i = 0; i < k; ++i) {
      if (counts[i] > bounds.upper[i]) return false;
      missing += std::max(0, bounds.lower[i] - counts[i]);
      room += bounds.upper[i] - counts[i];
    }
    int rest = n - depth;
    return missing <= rest && rest <= room;
  };
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == n) {
      visit(assignment);
      return;
    }
    for (int i = 0; i < k; ++i) {
      assignment[depth] = i;
      ++counts[i];
      if (can_extend(depth + 1)) self(self, depth + 1);
      --counts[i];
    }
  };
  rec(rec, 0);
}

}  // namespace

BruteForceResult brute_force_best(const DataSet& ds, const SiteVector& s, const SizeBounds& bounds,
                                  std::uint64_t budget) {
  const int n = ds.size(), k = s.k;
  bounds.validate(n);
  check_budget(n, k, budget);
  ObjectiveMatrix c = objective_from_sites(ds, s);
  BruteForceResult result;
  bool found = false;
  enumerate(n, k, bounds, [&](const std::vector<int>& assignment) {
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += c.at(assignment[j], j);
    if (!found || obj > result.objective) {
      found = true;
      result.objective = obj;
      result.best.assignment = assignment;
      result.best.k = k;
    }
  });
  if (!found) throw InputError("no assignment satisfies the size bounds");
  return result;
}

std::vector<std::pair<double, Clustering>> brute_force_breakpoints(const DataSet& ds,
                                                                   const SiteVector& s,
                                                                   const SiteVector& t,
                                                                   const SizeBounds& bounds, int grid,
                                                                   std::uint64_t budget) {
  const int n = ds.size(), k = s.k;
  bounds.validate(n);
  check_budget(n, k, budget);
  ObjectiveMatrix cs = objective_from_sites(ds, s);
  ObjectiveMatrix ct = objective_from_sites(ds, t);

  // One scan collects (value at s, value at t) per feasible assignment;
  // each grid point is then an argmax over the cached pairs.
  std::vector<std::vector<int>> assignments;
  std::vector<std::pair<double, double>> values;
  enumerate(n, k, bounds, [&](const std::vector<int>& assignment) {
    double a = 0.0, b = 0.0;
    for (int j = 0; j < n; ++j) {
      a += cs.at(assignment[j], j);
      b += ct.at(assignment[j], j);
    }
    assignments.push_back(assignment);
    values.emplace_back(a, b);
  });
  if (assignments.empty()) throw InputError("no assignment satisfies the size bounds");

  std::vector<std::pair<double, Clustering>> out;
  int prev = -1;
  for (int g = 0; g <= grid; ++g) {
    double lambda = static_cast<double>(g) / grid;
    int best = 0;
    double best_val = (1.0 - lambda) * values[0].first + lambda * values[0].second;
    for (std::size_t i = 1; i < values.size(); ++i) {
      double v = (1.0 - lambda) * values[i].first + lambda * values[i].second;
      if (v > best_val) {
        best_val = v;
        best = static_cast<int>(i);
      }
    }
    if (best != prev) {
      Clustering c;
      c.k = k;
      c.assignment = assignments[best];
      out.emplace_back(lambda, std::move(c));
      prev = best;
    }
  }
  return out;
}

bool exhaustive_separability_check(const DataSet& ds, const Clustering& c, const SiteVector& s,
                                   std::uint64_t budget) {
  c.validate(ds.size());
  Shape shape = c.shape();
  SizeBounds fixed{shape.sizes, shape.sizes};
  BruteForceResult best = brute_force_best(ds, s, fixed, budget);
  ObjectiveMatrix obj = objective_from_sites(ds, s);
  double mine = 0.0;
  for (int j = 0; j < ds.size(); ++j) mine += obj.at(c.assignment[j], j);
  return mine >= best.objective - 1e-9 * (1.0 + std::abs(best.objective));
}

}  // namespace clustrans
