#include "core/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace clustrans {

using json = nlohmann::ordered_json;

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void parse_fail(const std::string& text, const nlohmann::json::exception& e,
                             std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  throw InputError("parse error at line " + std::to_string(line) + ": " + e.what());
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(text, e, e.byte);
  }
}

void expect_format(const json& j, const std::string& format) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  if (!j.contains("format") || j["format"] != format)
    throw InputError("file is not a " + format + " document");
  if (!j.contains("version") || j["version"].get<int>() != kFormatVersion)
    throw InputError("unsupported " + format + " version");
}

json points_to_json(const DataSet& ds) {
  json arr = json::array();
  for (int j = 0; j < ds.size(); ++j) {
    json row = json::array();
    for (double v : ds.point(j)) row.push_back(v);
    arr.push_back(std::move(row));
  }
  return arr;
}

DataSet points_from_json(const json& arr) {
  if (!arr.is_array() || arr.empty()) throw InputError("'points' must be a non-empty array");
  int d = -1;
  std::vector<double> coords;
  for (const json& row : arr) {
    if (!row.is_array() || row.empty()) throw InputError("each point must be a non-empty array");
    if (d < 0) d = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != d) throw InputError("points of mixed dimension");
    for (const json& v : row) coords.push_back(v.get<double>());
  }
  return DataSet(std::move(coords), d);
}

json sites_to_json(const SiteVector& s) {
  json arr = json::array();
  for (int i = 0; i < s.k; ++i) {
    json row = json::array();
    for (double v : s.site(i)) row.push_back(v);
    arr.push_back(std::move(row));
  }
  return arr;
}

SiteVector sites_from_json(const json& arr, int k, int d, const std::string& where) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != k)
    throw InputError("'" + where + "' must list exactly k sites");
  SiteVector s;
  s.k = k;
  s.d = d;
  for (const json& row : arr) {
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw InputError("'" + where + "' sites must have the dataset dimension");
    for (const json& v : row) s.coords.push_back(v.get<double>());
  }
  return s;
}

json clustering_to_json(const Clustering& c) {
  json arr = json::array();
  for (int a : c.assignment) arr.push_back(a + 1);  // 1-based on disk
  return arr;
}

Clustering clustering_from_json(const json& arr, int n, int k, const std::string& where) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != n)
    throw InputError("'" + where + "' must assign every item");
  Clustering c;
  c.k = k;
  for (const json& v : arr) {
    int idx = v.get<int>();
    if (idx < 1 || idx > k)
      throw InputError("'" + where + "' uses cluster index " + std::to_string(idx) +
                       " outside 1.." + std::to_string(k));
    c.assignment.push_back(idx - 1);
  }
  return c;
}

json bounds_to_json(const SizeBounds& b) {
  return json{{"lower", b.lower}, {"upper", b.upper}};
}

SizeBounds bounds_from_json(const json& j, int n, int k) {
  if (!j.is_object() || !j.contains("lower") || !j.contains("upper"))
    throw InputError("'bounds' requires 'lower' and 'upper'");
  SizeBounds b;
  b.lower = j["lower"].get<std::vector<int>>();
  b.upper = j["upper"].get<std::vector<int>>();
  if (b.k() != k) throw InputError("'bounds' must list one entry per cluster");
  b.validate(n);
  return b;
}

const char* pivot_name(PivotRule rule) {
  return rule == PivotRule::Dantzig ? "dantzig" : "bland";
}

PivotRule pivot_from_name(const std::string& name) {
  if (name == "dantzig") return PivotRule::Dantzig;
  if (name == "bland") return PivotRule::Bland;
  throw InputError("unknown pivot rule '" + name + "' (expected dantzig or bland)");
}

json config_to_json(const Config& cfg) {
  return json{{"tol_feas", cfg.tol.feas},
              {"tol_opt", cfg.tol.opt},
              {"pivot", pivot_name(cfg.pivot)},
              {"enum_budget", cfg.enum_budget},
              {"seed", cfg.seed}};
}

Config config_from_json(const json& j) {
  Config cfg;
  if (!j.is_object()) throw InputError("config must be a JSON object");
  if (j.contains("tol_feas")) cfg.tol.feas = j["tol_feas"].get<double>();
  if (j.contains("tol_opt")) cfg.tol.opt = j["tol_opt"].get<double>();
  if (j.contains("pivot")) cfg.pivot = pivot_from_name(j["pivot"].get<std::string>());
  if (j.contains("enum_budget")) cfg.enum_budget = j["enum_budget"].get<std::uint64_t>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (cfg.tol.feas <= 0 || cfg.tol.opt <= 0) throw InputError("tolerances must be positive");
  return cfg;
}

json diagram_to_json(const DiagramEntry& d) {
  json out;
  out["kind"] = d.kind == DiagramEntry::Kind::Inducing ? "inducing" : "shared";
  out[d.kind == DiagramEntry::Kind::Inducing ? "clustering" : "pair"] = d.index;
  out["sites"] = sites_to_json(d.diagram.sites);
  out["gamma"] = d.diagram.gammas;
  out["weights"] = d.diagram.weights;
  if (d.kind == DiagramEntry::Kind::Inducing) {
    if (d.diagram.margin && std::isfinite(*d.diagram.margin))
      out["epsilon"] = *d.diagram.margin;
    else
      out["epsilon"] = nullptr;  // unbounded margin
  }
  return out;
}

DiagramEntry diagram_from_json(const json& j, int k, int d) {
  DiagramEntry entry;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "inducing") {
    entry.kind = DiagramEntry::Kind::Inducing;
    entry.index = j.at("clustering").get<int>();
  } else if (kind == "shared") {
    entry.kind = DiagramEntry::Kind::Shared;
    entry.index = j.at("pair").get<int>();
  } else {
    throw InputError("diagram kind must be 'inducing' or 'shared'");
  }
  entry.diagram.sites = sites_from_json(j.at("sites"), k, d, "diagram sites");
  entry.diagram.gammas = j.at("gamma").get<std::vector<double>>();
  entry.diagram.weights = j.at("weights").get<std::vector<double>>();
  if (static_cast<int>(entry.diagram.gammas.size()) != k ||
      static_cast<int>(entry.diagram.weights.size()) != k)
    throw InputError("diagram offsets must list one value per cluster");
  if (entry.kind == DiagramEntry::Kind::Inducing) {
    const json& eps = j.at("epsilon");
    entry.diagram.margin = eps.is_null() ? infinity() : eps.get<double>();
  }
  return entry;
}

json exchange_to_json(const Exchange& e) {
  json arcs = json::array();
  for (const CdgArc& a : e.arcs)
    arcs.push_back(json{{"from", a.from + 1}, {"to", a.to + 1}, {"item", a.item + 1}});
  return json{{"kind", e.kind == ExchangeKind::Path ? "path" : "cycle"}, {"arcs", std::move(arcs)}};
}

Exchange exchange_from_json(const json& j, int n, int k) {
  Exchange e;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "path")
    e.kind = ExchangeKind::Path;
  else if (kind == "cycle")
    e.kind = ExchangeKind::Cycle;
  else
    throw InputError("exchange kind must be 'path' or 'cycle'");
  for (const json& arc : j.at("arcs")) {
    CdgArc a;
    a.from = arc.at("from").get<int>() - 1;
    a.to = arc.at("to").get<int>() - 1;
    a.item = arc.at("item").get<int>() - 1;
    if (a.from < 0 || a.from >= k || a.to < 0 || a.to >= k || a.item < 0 || a.item >= n)
      throw InputError("exchange arc references an unknown cluster or item");
    e.arcs.push_back(a);
  }
  return e;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j = parse_json(text);
  expect_format(j, "clustrans-instance");
  Instance inst;
  if (!j.contains("points")) throw InputError("instance lacks 'points'");
  inst.ds = points_from_json(j["points"]);
  if (!j.contains("k")) throw InputError("instance lacks 'k'");
  inst.k = j["k"].get<int>();
  if (inst.k < 1) throw InputError("'k' must be at least 1");
  const int n = inst.ds.size(), d = inst.ds.dim(), k = inst.k;
  if (j.contains("bounds")) inst.bounds = bounds_from_json(j["bounds"], n, k);
  if (j.contains("sites")) inst.sites = sites_from_json(j["sites"], k, d, "sites");
  if (j.contains("clustering"))
    inst.clustering = clustering_from_json(j["clustering"], n, k, "clustering");
  auto read_endpoint = [&](const char* key, std::optional<SiteVector>& sv,
                           std::optional<Clustering>& cl) {
    if (!j.contains(key)) return;
    const json& ep = j[key];
    if (ep.contains("sites")) sv = sites_from_json(ep["sites"], k, d, std::string(key) + ".sites");
    if (ep.contains("clustering"))
      cl = clustering_from_json(ep["clustering"], n, k, std::string(key) + ".clustering");
  };
  read_endpoint("initial", inst.initial_sites, inst.initial_clustering);
  read_endpoint("target", inst.target_sites, inst.target_clustering);
  return inst;
}

std::string write_instance(const Instance& inst) {
  json j;
  j["format"] = "clustrans-instance";
  j["version"] = kFormatVersion;
  j["points"] = points_to_json(inst.ds);
  j["k"] = inst.k;
  if (inst.bounds) j["bounds"] = bounds_to_json(*inst.bounds);
  if (inst.sites) j["sites"] = sites_to_json(*inst.sites);
  if (inst.clustering) j["clustering"] = clustering_to_json(*inst.clustering);
  auto write_endpoint = [&](const char* key, const std::optional<SiteVector>& sv,
                            const std::optional<Clustering>& cl) {
    if (!sv && !cl) return;
    json ep;
    if (sv) ep["sites"] = sites_to_json(*sv);
    if (cl) ep["clustering"] = clustering_to_json(*cl);
    j[key] = std::move(ep);
  };
  write_endpoint("initial", inst.initial_sites, inst.initial_clustering);
  write_endpoint("target", inst.target_sites, inst.target_clustering);
  return j.dump(2) + "\n";
}

std::string write_transition(const DataSet& ds, const TransitionSequence& seq) {
  json j;
  j["format"] = "clustrans-transition";
  j["version"] = kFormatVersion;
  j["config"] = config_to_json(seq.config_used);
  j["points"] = points_to_json(ds);
  j["k"] = seq.clusterings.front().k;
  j["sites_initial"] = sites_to_json(seq.sites_initial);
  j["sites_target"] = sites_to_json(seq.sites_target);
  j["bounds"] = bounds_to_json(seq.bounds);
  j["legs"] = json{{"p", seq.p}, {"m", seq.m}, {"q", seq.q}};
  j["lambdas"] = seq.lambdas;
  j["endpoints"] = json{{"initial", clustering_to_json(seq.declared_initial)},
                        {"target", clustering_to_json(seq.declared_target)}};
  json clusterings = json::array();
  for (const Clustering& c : seq.clusterings) clusterings.push_back(clustering_to_json(c));
  j["clusterings"] = std::move(clusterings);
  json exchanges = json::array();
  for (const Exchange& e : seq.exchanges) exchanges.push_back(exchange_to_json(e));
  j["exchanges"] = std::move(exchanges);
  json diagrams = json::array();
  for (const DiagramEntry& d : seq.diagrams) diagrams.push_back(diagram_to_json(d));
  j["diagrams"] = std::move(diagrams);
  return j.dump(2) + "\n";
}

ParsedTransition parse_transition(const std::string& text) {
  json j = parse_json(text);
  expect_format(j, "clustrans-transition");
  ParsedTransition out;
  out.ds = points_from_json(j.at("points"));
  const int n = out.ds.size(), d = out.ds.dim();
  const int k = j.at("k").get<int>();
  if (k < 1) throw InputError("'k' must be at least 1");
  TransitionSequence& seq = out.seq;
  seq.config_used = config_from_json(j.at("config"));
  seq.sites_initial = sites_from_json(j.at("sites_initial"), k, d, "sites_initial");
  seq.sites_target = sites_from_json(j.at("sites_target"), k, d, "sites_target");
  seq.bounds = bounds_from_json(j.at("bounds"), n, k);
  seq.p = j.at("legs").at("p").get<int>();
  seq.m = j.at("legs").at("m").get<int>();
  seq.q = j.at("legs").at("q").get<int>();
  seq.lambdas = j.at("lambdas").get<std::vector<double>>();
  seq.declared_initial = clustering_from_json(j.at("endpoints").at("initial"), n, k, "endpoints.initial");
  seq.declared_target = clustering_from_json(j.at("endpoints").at("target"), n, k, "endpoints.target");
  for (const json& c : j.at("clusterings"))
    seq.clusterings.push_back(clustering_from_json(c, n, k, "clusterings"));
  for (const json& e : j.at("exchanges")) seq.exchanges.push_back(exchange_from_json(e, n, k));
  for (const json& dgm : j.at("diagrams")) seq.diagrams.push_back(diagram_from_json(dgm, k, d));
  if (seq.clusterings.empty()) throw InputError("transition file lists no clusterings");
  return out;
}

std::string write_report(const VerifyReport& report) {
  json j;
  j["format"] = "clustrans-report";
  j["version"] = kFormatVersion;
  j["pass"] = report.all_pass();
  json props = json::array();
  for (const PropertyResult& p : report.properties) {
    props.push_back(
        json{{"id", p.id}, {"name", p.name}, {"pass", p.pass}, {"failures", p.failures}});
  }
  j["properties"] = std::move(props);
  return j.dump(2) + "\n";
}

Config parse_config(const std::string& text) { return config_from_json(parse_json(text)); }

std::string write_config(const Config& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InputError("failed while writing '" + path + "'");
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }
ParsedTransition load_transition(const std::string& path) { return parse_transition(read_file(path)); }
Config load_config(const std::string& path) { return parse_config(read_file(path)); }

}  // namespace clustrans
