#include "circov/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "circov/errors.hpp"

namespace circov {

using json = nlohmann::ordered_json;

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw InvalidInput("table row width does not match the header");
  rows.push_back(std::move(row));
}

void RunReport::put(const std::string& key, const std::string& value) {
  for (auto& kv : summary)
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  summary.emplace_back(key, value);
}

std::string RunReport::get(const std::string& key) const {
  for (const auto& kv : summary)
    if (kv.first == key) return kv.second;
  return "";
}

std::string library_version() { return CIRCOV_VERSION; }

namespace {

std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

int column(const Table& t, const std::string& name) {
  auto it = std::find(t.columns.begin(), t.columns.end(), name);
  if (it == t.columns.end()) throw InvalidInput("report lacks column '" + name + "'");
  return static_cast<int>(it - t.columns.begin());
}

std::string svg_plot(const std::vector<std::pair<double, double>>& pts,
                     const std::vector<std::pair<double, double>>& line, const std::string& xlabel,
                     const std::string& ylabel) {
  const double W = 640, H = 420, m = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto* set : {&pts, &line})
    for (auto [x, y] : *set) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  if (!(x1 > x0)) x0 -= 1, x1 += 1;
  if (!(y1 > y0)) y0 -= 1, y1 += 1;
  auto X = [&](double x) { return m + (x - x0) / (x1 - x0) * (W - 2 * m); };
  auto Y = [&](double y) { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect x=\"" << m << "\" y=\"" << m << "\" width=\"" << W - 2 * m << "\" height=\"" << H - 2 * m
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  s << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2 << ")\" text-anchor=\"middle\">"
    << ylabel << "</text>\n";
  s << "<text x=\"" << m << "\" y=\"" << H - m + 15 << "\" font-size=\"10\">" << fmt(x0) << "</text>\n";
  s << "<text x=\"" << W - m << "\" y=\"" << H - m + 15 << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(x1)
    << "</text>\n";
  s << "<text x=\"" << m - 4 << "\" y=\"" << H - m << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(y0)
    << "</text>\n";
  s << "<text x=\"" << m - 4 << "\" y=\"" << m + 10 << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(y1)
    << "</text>\n";
  for (auto [x, y] : pts)
    if (std::isfinite(x) && std::isfinite(y))
      s << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  if (line.size() >= 2) {
    s << "<polyline fill=\"none\" stroke=\"firebrick\" points=\"";
    for (auto [x, y] : line)
      if (std::isfinite(x) && std::isfinite(y)) s << X(x) << "," << Y(y) << " ";
    s << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

struct PlotData {
  Table csv;
  std::vector<std::pair<double, double>> pts, line;
  std::string xlabel, ylabel;
};

PlotData build_plot(const RunReport& r, const std::string& kind) {
  if (r.kind != kind)
    throw InvalidInput("plot kind '" + kind + "' does not match report kind '" + r.kind + "'");
  PlotData p;
  const bool empty = r.records.rows.empty();
  if (kind == "dimension") {
    p.csv.columns = {"log_scale", "log_count", "fit"};
    p.xlabel = "depth * log b";
    p.ylabel = "log box count";
    if (empty) return p;
    const double logb = std::log(std::stod(r.get("base").empty() ? "2" : r.get("base")));
    const double slope = r.get("slope").empty() ? 0 : std::stod(r.get("slope"));
    const double icpt = r.get("intercept").empty() ? 0 : std::stod(r.get("intercept"));
    const int cj = column(r.records, "j"), cc = column(r.records, "count");
    for (const auto& row : r.records.rows) {
      const double c = std::stod(row[cc]);
      if (c <= 0) continue;
      const double x = std::stod(row[cj]) * logb, y = std::log(c);
      p.pts.push_back({x, y});
      p.csv.add({fmt(x), fmt(y), fmt(icpt + slope * x)});
    }
    std::vector<double> xs;
    for (auto [x, y] : p.pts) xs.push_back(x);
    if (!xs.empty()) {
      auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
      p.line = {{*lo, icpt + slope * *lo}, {*hi, icpt + slope * *hi}};
    }
  } else if (kind == "tree") {
    p.csv.columns = {"level", "mean_survivors", "threshold"};
    p.xlabel = "level";
    p.ylabel = "log2 survivors";
    if (empty) return p;
    const double base = r.get("threshold_base").empty() ? 1.2 : std::stod(r.get("threshold_base"));
    const int cl = column(r.records, "level"), cs = column(r.records, "survivors");
    std::map<long, std::pair<double, long>> acc;
    for (const auto& row : r.records.rows) {
      auto& a = acc[std::stol(row[cl])];
      a.first += std::stod(row[cs]);
      a.second += 1;
    }
    for (auto& [lvl, a] : acc) {
      const double mean = a.first / a.second, thr = std::pow(base, static_cast<double>(lvl));
      p.csv.add({std::to_string(lvl), fmt(mean), fmt(thr)});
      p.pts.push_back({static_cast<double>(lvl), std::log2(std::max(mean, 1e-300))});
      p.line.push_back({static_cast<double>(lvl), std::log2(thr)});
    }
  } else if (kind == "shepp") {
    p.csv.columns = {"log10_n", "log10_term"};
    p.xlabel = "log10 n";
    p.ylabel = "log10 t_n";
    if (empty) return p;
    const int cn = column(r.records, "n"), ct = column(r.records, "log10_term");
    for (const auto& row : r.records.rows) {
      const double x = std::log10(std::stod(row[cn])), y = std::stod(row[ct]);
      p.csv.add({fmt(x), fmt(y)});
      p.pts.push_back({x, y});
    }
  } else {
    throw InvalidInput("unknown plot kind '" + kind + "' (dimension, tree, shepp)");
  }
  return p;
}

}  // namespace

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\r\n";
  }
  return os.str();
}

std::string to_json(const RunReport& r) {
  json j;
  j["command"] = r.command;
  j["kind"] = r.kind;
  j["version"] = r.version.empty() ? library_version() : r.version;
  json cfg = json::object();
  for (const auto& [k, v] : r.config.values()) cfg[k] = v;
  j["config"] = cfg;
  json sum = json::object();
  for (const auto& [k, v] : r.summary) sum[k] = v;
  j["summary"] = sum;
  json rec = json::array();
  for (const auto& row : r.records.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[r.records.columns[i]] = row[i];
    rec.push_back(o);
  }
  j["records"] = rec;
  return j.dump(2) + "\n";
}

std::string to_meta_json(const RunReport& r) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  json j;
  j["command"] = r.command;
  j["version"] = r.version.empty() ? library_version() : r.version;
  j["timestamp_utc"] = ts.str();
  j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j.dump(2) + "\n";
}

void write_report(const RunReport& r, const std::string& path, const std::string& format) {
  std::string body;
  if (format == "json")
    body = to_json(r);
  else if (format == "csv")
    body = to_csv(r.records);
  else
    throw InvalidInput("unknown output format '" + format + "' (csv or json)");
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << body;
  std::ofstream m(path + ".meta.json", std::ios::binary);
  if (!m) throw InvalidInput("cannot write '" + path + ".meta.json'");
  m << to_meta_json(r);
}

std::string plotdata_csv(const RunReport& r, const std::string& kind) { return to_csv(build_plot(r, kind).csv); }

PlotFiles emit_plotdata(const RunReport& r, const std::string& kind, const std::string& prefix) {
  PlotData p = build_plot(r, kind);
  PlotFiles out{prefix + ".csv", prefix + ".svg"};
  std::ofstream c(out.csv, std::ios::binary);
  if (!c) throw InvalidInput("cannot write '" + out.csv + "'");
  c << to_csv(p.csv);
  std::ofstream s(out.svg, std::ios::binary);
  if (!s) throw InvalidInput("cannot write '" + out.svg + "'");
  s << svg_plot(p.pts, p.line, p.xlabel, p.ylabel);
  return out;
}

}  // namespace circov
