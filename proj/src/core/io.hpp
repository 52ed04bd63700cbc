#pragma once

#include <optional>
#include <string>

#include "core/pipeline.hpp"

namespace clustrans {

// Parsed instance file. Cluster indices are 1-based on disk and 0-based in
// memory; the conversion happens here and nowhere else.
struct Instance {
  DataSet ds{std::vector<double>{0.0}, 1};  // replaced on parse
  int k = 0;
  std::optional<SizeBounds> bounds;
  std::optional<SiteVector> sites;
  std::optional<Clustering> clustering;
  std::optional<SiteVector> initial_sites;
  std::optional<Clustering> initial_clustering;
  std::optional<SiteVector> target_sites;
  std::optional<Clustering> target_clustering;
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
/// Canonical serialization: fixed key order, two-space indentation,
/// shortest round-trip decimals. Byte-identical for equal values.
std::string write_instance(const Instance& inst);

std::string write_transition(const DataSet& ds, const TransitionSequence& seq);
struct ParsedTransition {
  DataSet ds{std::vector<double>{0.0}, 1};
  TransitionSequence seq;
};
ParsedTransition parse_transition(const std::string& text);
ParsedTransition load_transition(const std::string& path);

std::string write_report(const VerifyReport& report);

Config parse_config(const std::string& text);
Config load_config(const std::string& path);
std::string write_config(const Config& cfg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace clustrans
