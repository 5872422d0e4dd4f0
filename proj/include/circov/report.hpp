#pragma once

#include <string>
#include <utility>
#include <vector>

#include "circov/config.hpp"

namespace circov {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  void add(std::vector<std::string> row);
};

/// Result of one CLI command. Everything except the wall clock and the
/// timestamp is a function of (command, config), so report bodies are
/// byte-identical across reruns.
struct RunReport {
  std::string command;
  std::string kind;  // "shepp", "tree", "dimension", ... used by emit_plotdata
  Config config;
  std::string version;
  Table records;
  std::vector<std::pair<std::string, std::string>> summary;  // insertion order kept
  double wall_clock_seconds = 0.0;

  void put(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;  // "" when absent
};

std::string library_version();

/// RFC-4180 style: comma separated, CRLF line ends, fields quoted when they
/// contain a comma, quote, CR or LF.
std::string to_csv(const Table& t);
/// Deterministic JSON body: command, version, config echo, summary, records.
std::string to_json(const RunReport& r);
/// Sidecar metadata: timestamp, wall clock, version.
std::string to_meta_json(const RunReport& r);

/// Writes the body (csv or json) to `path` and metadata next to it as
/// `path.meta.json`. An empty path writes the body to stdout and no sidecar.
void write_report(const RunReport& r, const std::string& path, const std::string& format);

struct PlotFiles {
  std::string csv;
  std::string svg;
};
/// CSV and SVG for the report: (log scale, log count) with the fitted line
/// for dimension runs, mean survivor curve with threshold overlay for tree
/// runs, term decay for Shepp runs. Raises InvalidInput on a kind mismatch.
PlotFiles emit_plotdata(const RunReport& r, const std::string& kind, const std::string& prefix);
/// The plot CSV body alone (header only for empty reports).
std::string plotdata_csv(const RunReport& r, const std::string& kind);

}  // namespace circov
