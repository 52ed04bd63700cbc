#include "core/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>

namespace clustrans {

namespace {

bool same_sites(const SiteVector& a, const SiteVector& b, double tol) {
  if (a.k != b.k || a.d != b.d) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    if (std::abs(a.coords[i] - b.coords[i]) > tol) return false;
  return true;
}

Exchange single_exchange_between(const Clustering& prev, const Clustering& next) {
  CdgDecomposition dec = decompose(build_cdg(prev, next));
  if (dec.path && dec.cycles.empty()) return *dec.path;
  if (!dec.path && dec.cycles.size() == 1) return dec.cycles.front();
  throw InternalError("consecutive clusterings do not differ by a single exchange");
}

}  // namespace

TransitionSequence full_transition(const DataSet& ds, const Clustering& c_s, const Clustering& c_t,
                                   const SiteVector& s, const SiteVector& t, const Config& cfg) {
  c_s.validate(ds.size());
  c_t.validate(ds.size());
  if (c_s.k != c_t.k) throw InputError("endpoint clusterings disagree on cluster count");
  if (s.k != c_s.k || t.k != c_t.k || s.d != ds.dim() || t.d != ds.dim())
    throw InputError("site vectors do not match the instance");

  SizeBounds bounds = bounds_from_endpoints(c_s, c_t);

  // The two fixed-site legs are independent; run them concurrently. The
  // parametric leg needs both radial endpoints.
  std::future<FixedSiteResult> leg_s_future =
      std::async(std::launch::async, [&] { return init_to_rad(ds, c_s, s, bounds, cfg); });
  FixedSiteResult leg_t = init_to_rad(ds, c_t, t, bounds, cfg);
  FixedSiteResult leg_s = leg_s_future.get();
  RadToRadResult mid = rad_to_rad(ds, leg_s.radial(), leg_t.radial(), s, t, bounds, cfg);
  if (!(mid.last() == leg_t.radial()))
    throw InternalError("parametric leg did not end at the target radial clustering");

  TransitionSequence seq;
  seq.sites_initial = s;
  seq.sites_target = t;
  seq.bounds = bounds;
  seq.config_used = cfg;
  seq.declared_initial = c_s;
  seq.declared_target = c_t;
  seq.p = leg_s.steps();
  seq.m = mid.breakpoints();
  seq.q = leg_t.steps();

  seq.clusterings = leg_s.clusterings;
  for (const TransitionStep& step : mid.steps) {
    seq.clusterings.push_back(step.clustering);
    seq.lambdas.push_back(step.lambda);
  }
  for (int i = seq.q - 1; i >= 0; --i) seq.clusterings.push_back(leg_t.clusterings[i]);

  for (std::size_t i = 0; i + 1 < seq.clusterings.size(); ++i)
    seq.exchanges.push_back(single_exchange_between(seq.clusterings[i], seq.clusterings[i + 1]));

  // Diagram list in walk order. When the parametric leg is empty the radial
  // clustering keeps both endpoint diagrams (sites s and sites t), except in
  // the fully trivial case where they coincide.
  using Kind = DiagramEntry::Kind;
  auto add = [&](Kind kind, int index, const PowerDiagram& pd) {
    seq.diagrams.push_back({kind, index, pd});
  };
  for (int i = 0; i <= seq.p; ++i) {
    add(Kind::Inducing, i, leg_s.inducing[i]);
    if (i < seq.p) add(Kind::Shared, i, leg_s.shared[i]);
  }
  for (int r = 1; r <= seq.m; ++r) {
    add(Kind::Shared, seq.p + r - 1, mid.steps[r - 1].shared);
    if (r < seq.m) {
      if (!mid.steps[r - 1].inducing)
        throw InternalError("interior parametric step lacks its inducing diagram");
      add(Kind::Inducing, seq.p + r, *mid.steps[r - 1].inducing);
    }
  }
  bool trivial = seq.total_steps() == 0 && same_sites(s, t, 0.0);
  if (!trivial) {
    add(Kind::Inducing, seq.p + seq.m, leg_t.inducing[seq.q]);
    for (int j = 0; j < seq.q; ++j) {
      add(Kind::Shared, seq.p + seq.m + j, leg_t.shared[seq.q - j - 1]);
      add(Kind::Inducing, seq.p + seq.m + j + 1, leg_t.inducing[seq.q - j - 1]);
    }
  }
  return seq;
}

long count_feasible_shapes(const SizeBounds& bounds, int n) {
  std::vector<long> ways(n + 1, 0);
  ways[0] = 1;
  for (int i = 0; i < bounds.k(); ++i) {
    std::vector<long> next(n + 1, 0);
    for (int total = 0; total <= n; ++total) {
      if (ways[total] == 0) continue;
      for (int size = bounds.lower[i]; size <= bounds.upper[i] && total + size <= n; ++size)
        next[total + size] += ways[total];
    }
    ways = std::move(next);
  }
  return ways[n];
}

bool VerifyReport::all_pass() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.pass; });
}

std::string VerifyReport::summary() const {
  std::string out;
  for (const PropertyResult& p : properties) {
    out += (p.pass ? "PASS" : "FAIL");
    out += "  property " + std::to_string(p.id) + ": " + p.name + "\n";
    for (const std::string& f : p.failures) out += "      " + f + "\n";
  }
  return out;
}

namespace {

struct Checker {
  VerifyReport report;

  Checker() { report.properties.reserve(16); }  // references into it stay valid

  PropertyResult& property(int id, const std::string& name) {
    report.properties.push_back({id, name, true, {}});
    return report.properties.back();
  }

  static void fail(PropertyResult& p, const std::string& msg) {
    p.pass = false;
    p.failures.push_back(msg);
  }
};

}  // namespace

VerifyReport verify_sequence(const DataSet& ds, const TransitionSequence& seq, const Config& cfg) {
  Checker ck;
  const int total = static_cast<int>(seq.clusterings.size());
  const double rel = 1e-6;

  // Property 0: structure.
  {
    PropertyResult& p = ck.property(0, "sequence structure");
    if (seq.clusterings.empty()) Checker::fail(p, "sequence holds no clusterings");
    if (total != seq.p + seq.m + seq.q + 1)
      Checker::fail(p, "clustering count does not match the leg sizes");
    if (static_cast<int>(seq.exchanges.size()) != std::max(0, total - 1))
      Checker::fail(p, "exchange count does not match the clustering count");
    if (static_cast<int>(seq.lambdas.size()) != seq.m)
      Checker::fail(p, "breakpoint count does not match the parametric leg");
    try {
      seq.bounds.validate(ds.size());
      for (const Clustering& c : seq.clusterings) c.validate(ds.size());
    } catch (const InputError& e) {
      Checker::fail(p, e.what());
    }
    double prev = 0.0;
    for (double lam : seq.lambdas) {
      if (lam <= 0.0 || lam > 1.0 + 1e-12) Checker::fail(p, "breakpoint outside (0, 1]");
      if (lam < prev - 1e-10) Checker::fail(p, "breakpoints are not increasing");
      prev = lam;
    }
    for (const DiagramEntry& d : seq.diagrams) {
      int limit = d.kind == DiagramEntry::Kind::Inducing ? total : total - 1;
      if (d.index < 0 || d.index >= limit) Checker::fail(p, "diagram index out of range");
    }
    if (!p.pass) return ck.report;  // structure is broken; nothing else is meaningful
  }

  ObjectiveMatrix obj_s = objective_from_sites(ds, seq.sites_initial);
  ObjectiveMatrix obj_t = objective_from_sites(ds, seq.sites_target);
  auto lambda_of = [&](int idx) { return seq.lambdas[idx - seq.p - 1]; };
  auto sites_for = [&](int idx) -> SiteVector {
    if (idx <= seq.p) return seq.sites_initial;
    if (idx <= seq.p + seq.m) return interpolate(seq.sites_initial, seq.sites_target, lambda_of(idx));
    return seq.sites_target;
  };

  // Property 1: endpoints.
  {
    PropertyResult& p = ck.property(1, "endpoints match the declared clusterings");
    if (!(seq.clusterings.front() == seq.declared_initial))
      Checker::fail(p, "first clustering differs from the declared initial one");
    if (!(seq.clusterings.back() == seq.declared_target))
      Checker::fail(p, "last clustering differs from the declared target one");
  }

  // Property 2: every clustering is best for its own shape (hence separable).
  std::vector<bool> lsa_ok(total, true);
  {
    PropertyResult& p = ck.property(2, "every clustering is optimal for its own shape");
    for (int idx = 0; idx < total; ++idx) {
      const Clustering& c = seq.clusterings[idx];
      ObjectiveMatrix obj = objective_from_sites(ds, sites_for(idx));
      Shape shape = c.shape();
      TransportModel eq(ds.size(), c.k, SizeBounds{shape.sizes, shape.sizes});
      OptimizeResult best = optimize(eq, obj, cfg, &c);
      double mine = clustering_objective(obj, c);
      double opt = clustering_objective(obj, eq.clustering_from_vertex(best.vertex));
      if (opt > mine + rel * (1.0 + std::abs(mine))) {
        lsa_ok[idx] = false;
        Checker::fail(p, "clustering " + std::to_string(idx) + " is beaten within its shape by " +
                             std::to_string(opt - mine));
      }
    }
  }

  // Property 3: cluster sizes stay inside the endpoint-induced bounds.
  {
    PropertyResult& p = ck.property(3, "cluster sizes stay within the endpoint bounds");
    SizeBounds expect = bounds_from_endpoints(seq.declared_initial, seq.declared_target);
    if (!(expect == seq.bounds)) Checker::fail(p, "stored bounds differ from the endpoint bounds");
    for (int idx = 0; idx < total; ++idx)
      if (!seq.bounds.contains(seq.clusterings[idx].shape()))
        Checker::fail(p, "clustering " + std::to_string(idx) + " violates the size bounds");
  }

  // Property 4: consecutive clusterings differ by one recorded exchange.
  {
    PropertyResult& p = ck.property(4, "consecutive clusterings differ by a single exchange");
    for (int i = 0; i + 1 < total; ++i) {
      if (!is_single_exchange(seq.clusterings[i], seq.clusterings[i + 1]))
        Checker::fail(p, "pair " + std::to_string(i) + " is not a single exchange");
      else {
        try {
          Clustering replayed = apply_exchange(seq.clusterings[i], seq.exchanges[i]);
          if (!(replayed == seq.clusterings[i + 1]))
            Checker::fail(p, "recorded exchange " + std::to_string(i) + " does not replay");
        } catch (const InputError& e) {
          Checker::fail(p, "recorded exchange " + std::to_string(i) + ": " + e.what());
        }
      }
    }
  }

  // Properties 5 and 6: inducing and shared diagrams at the stated sites.
  {
    PropertyResult& p5 = ck.property(5, "inducing diagrams induce their clusterings");
    PropertyResult& p6 = ck.property(6, "shared diagrams induce both neighbours");
    std::vector<int> inducing_seen(total, 0), shared_seen(std::max(0, total - 1), 0);
    for (const DiagramEntry& d : seq.diagrams) {
      if (d.kind == DiagramEntry::Kind::Inducing) {
        ++inducing_seen[d.index];
        bool interior_mid = d.index > seq.p && d.index < seq.p + seq.m;
        SiteVector expect;
        if (interior_mid)
          expect = interpolate(seq.sites_initial, seq.sites_target,
                               0.5 * (lambda_of(d.index) + lambda_of(d.index + 1)));
        else if (d.index == seq.p + seq.m && seq.m > 0)
          expect = seq.sites_target;  // the radial seam diagram comes from the target leg
        else
          expect = sites_for(d.index);
        bool site_ok = same_sites(d.diagram.sites, expect, 1e-9);
        if (!site_ok && seq.m == 0 && d.index == seq.p)
          site_ok = same_sites(d.diagram.sites, seq.sites_target, 1e-9) ||
                    same_sites(d.diagram.sites, seq.sites_initial, 1e-9);
        if (!site_ok)
          Checker::fail(p5, "inducing diagram for clustering " + std::to_string(d.index) +
                                " uses unexpected sites");
        if (!induces(ds, d.diagram, seq.clusterings[d.index], false))
          Checker::fail(p5,
                        "diagram does not induce clustering " + std::to_string(d.index));
        else if (d.diagram.margin && std::isfinite(*d.diagram.margin) && *d.diagram.margin > 1e-5 &&
                 !induces(ds, d.diagram, seq.clusterings[d.index], true))
          Checker::fail(p5, "positive-margin diagram is not strict for clustering " +
                                std::to_string(d.index));
      } else {
        ++shared_seen[d.index];
        SiteVector expect = d.index < seq.p ? seq.sites_initial
                            : d.index < seq.p + seq.m
                                ? interpolate(seq.sites_initial, seq.sites_target,
                                              lambda_of(d.index + 1))
                                : seq.sites_target;
        if (!same_sites(d.diagram.sites, expect, 1e-9))
          Checker::fail(p6, "shared diagram for pair " + std::to_string(d.index) +
                                " uses unexpected sites");
        const Clustering& a = seq.clusterings[d.index];
        const Clustering& b = seq.clusterings[d.index + 1];
        if (!induces(ds, d.diagram, a, false) || !induces(ds, d.diagram, b, false))
          Checker::fail(p6, "shared diagram for pair " + std::to_string(d.index) +
                                " does not induce both clusterings");
        if (!moved_items_on_boundary(ds, d.diagram, a, b))
          Checker::fail(p6, "moved items of pair " + std::to_string(d.index) +
                                " are off the cell boundaries");
      }
    }
    for (int idx = 0; idx < total; ++idx)
      if (inducing_seen[idx] == 0)
        Checker::fail(p5, "clustering " + std::to_string(idx) + " has no inducing diagram");
    for (int i = 0; i + 1 < total; ++i)
      if (shared_seen[i] != 1)
        Checker::fail(p6, "pair " + std::to_string(i) + " has " + std::to_string(shared_seen[i]) +
                              " shared diagrams");
  }

  // Property 7: the middle leg is radial at the interpolated sites.
  {
    PropertyResult& p = ck.property(7, "parametric clusterings maximize over the bounded polytope");
    TransportModel model(ds.size(), seq.clusterings.front().k, seq.bounds);
    auto radial_check = [&](int idx, const SiteVector& sites) {
      const Clustering& c = seq.clusterings[idx];
      ObjectiveMatrix obj = objective_from_sites(ds, sites);
      OptimizeResult best = optimize(model, obj, cfg, &c);
      double mine = clustering_objective(obj, c);
      double opt = clustering_objective(obj, model.clustering_from_vertex(best.vertex));
      if (opt > mine + rel * (1.0 + std::abs(mine)))
        Checker::fail(p, "clustering " + std::to_string(idx) +
                             " is not radial for its interpolated sites (gap " +
                             std::to_string(opt - mine) + ")");
    };
    for (int idx = seq.p; idx <= seq.p + seq.m; ++idx) radial_check(idx, sites_for(idx));
    if (seq.m == 0) radial_check(seq.p, seq.sites_target);
  }

  // Properties 8 and 9: the fixed-site legs are LSAs for their own sites.
  {
    PropertyResult& p8 = ck.property(8, "initial leg clusterings are LSAs for the initial sites");
    for (int idx = 0; idx <= seq.p; ++idx)
      if (!lsa_ok[idx])
        Checker::fail(p8, "clustering " + std::to_string(idx) + " fails for the initial sites");
    PropertyResult& p9 = ck.property(9, "target leg clusterings are LSAs for the target sites");
    for (int idx = seq.p + seq.m; idx < total; ++idx)
      if (!lsa_ok[idx])
        Checker::fail(p9, "clustering " + std::to_string(idx) + " fails for the target sites");
  }

  // Properties 10 and 11: distinct shapes per fixed-site leg, with the leg
  // length bounded by the number of feasible shapes.
  {
    long shape_count = count_feasible_shapes(seq.bounds, ds.size());
    auto check_leg = [&](PropertyResult& p, int lo, int hi) {
      std::set<std::vector<int>> seen;
      for (int idx = lo; idx <= hi; ++idx)
        if (!seen.insert(seq.clusterings[idx].shape().sizes).second)
          Checker::fail(p, "repeated shape at clustering " + std::to_string(idx));
      if (hi - lo + 1 > shape_count)
        Checker::fail(p, "leg visits more clusterings than there are feasible shapes");
    };
    PropertyResult& p10 = ck.property(10, "initial leg shapes are pairwise distinct");
    check_leg(p10, 0, seq.p);
    PropertyResult& p11 = ck.property(11, "target leg shapes are pairwise distinct");
    check_leg(p11, seq.p + seq.m, total - 1);
  }

  return ck.report;
}

}  // namespace clustrans
