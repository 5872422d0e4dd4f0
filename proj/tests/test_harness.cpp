#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "circov/config.hpp"
#include "circov/errors.hpp"
#include "circov/parallel.hpp"
#include "circov/report.hpp"

using namespace circov;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("config parse and canonical round trip") {
    const std::string text =
        "# header\nseed = 7\n\n[tree]\nmode = plain\nL = 1013\nlabel = \"  padded \\\"q\\\" \"\n[dim]\nnu=2\n";
    Config c = Config::parse(text);
    CHECK(c.get("seed") == "7");
    CHECK(c.get("tree.L") == "1013");
    CHECK(c.get("tree.label") == "  padded \"q\" ");
    CHECK(c.get("dim.nu") == "2");
    CHECK_FALSE(c.get("missing").has_value());
    CHECK(c.get_or("missing", "x") == "x");
    const std::string once = c.serialize();
    CHECK(Config::parse(once) == c);
    CHECK(Config::parse(once).serialize() == once);
    c.set("note", "line1\nline2");
    CHECK(Config::parse(c.serialize()) == c);
    CHECK_THROWS_AS(Config::parse("[broken\n"), InvalidInput);
    CHECK_THROWS_AS(Config::parse("novalue\n"), InvalidInput);
  }

  TEST_CASE("config merge") {
    Config a = Config::parse("x = 1\ny = 2\n");
    a.merge(Config::parse("y = 3\nz = 4\n"));
    CHECK(a.get("x") == "1");
    CHECK(a.get("y") == "3");
    CHECK(a.get("z") == "4");
  }

  TEST_CASE("csv quoting") {
    Table t;
    t.columns = {"a", "b"};
    t.add({"plain", "has,comma"});
    t.add({"say \"hi\"", "two\nlines"});
    CHECK(to_csv(t) == "a,b\r\nplain,\"has,comma\"\r\n\"say \"\"hi\"\"\",\"two\nlines\"\r\n");
    CHECK_THROWS(t.add({"short"}));
  }

  TEST_CASE("report bodies are deterministic") {
    RunReport r;
    r.command = "shepp";
    r.kind = "shepp";
    r.config = Config::parse("family = harmonic:1\n");
    r.version = library_version();
    r.records.columns = {"n", "log10_term"};
    r.records.add({"1", "0"});
    r.put("verdict", "DIVERGES");
    r.wall_clock_seconds = 1.5;
    RunReport s = r;
    s.wall_clock_seconds = 99;
    CHECK(to_json(r) == to_json(s));
    CHECK(to_json(r).find("DIVERGES") != std::string::npos);
    CHECK(to_json(r).find("1.5") == std::string::npos);
    CHECK(to_meta_json(r).find("wall_clock") != std::string::npos);
    CHECK(r.get("verdict") == "DIVERGES");
    CHECK(r.get("absent").empty());

    const std::string path = "harness_report_test.csv";
    write_report(r, path, "csv");
    CHECK(slurp(path) == to_csv(r.records));
    CHECK_FALSE(slurp(path + ".meta.json").empty());
    std::remove(path.c_str());
    std::remove((path + ".meta.json").c_str());
    CHECK_THROWS_AS(write_report(r, path, "xml"), InvalidInput);
  }

  TEST_CASE("plot data") {
    RunReport empty;
    empty.kind = "dimension";
    empty.records.columns = {"j", "count"};
    const std::string csv = plotdata_csv(empty, "dimension");
    CHECK(csv.find("\r\n") == csv.size() - 2);

    RunReport dim = empty;
    dim.records.add({"8", "256"});
    dim.records.add({"9", "512"});
    dim.put("base", "2");
    dim.put("slope", "1");
    dim.put("intercept", "0");
    const std::string body = plotdata_csv(dim, "dimension");
    CHECK(std::count(body.begin(), body.end(), '\n') == 3);
    CHECK_THROWS_AS(plotdata_csv(dim, "tree"), InvalidInput);

    RunReport tree;
    tree.kind = "tree";
    tree.records.columns = {"level", "survivors"};
    tree.records.add({"4", "16"});
    tree.put("threshold_base", "1.2");
    auto files = emit_plotdata(tree, "tree", "harness_plot");
    CHECK(slurp(files.svg).find("<svg") != std::string::npos);
    CHECK(slurp(files.csv) == plotdata_csv(tree, "tree"));
    std::remove(files.csv.c_str());
    std::remove(files.svg.c_str());
  }

  TEST_CASE("parallel_map keeps index order and rethrows") {
    auto sq = parallel_map(200, 4, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < sq.size(); ++i) CHECK(sq[i] == i * i);
    CHECK(parallel_map(200, 1, [](std::size_t i) { return i * i; }) == sq);
    CHECK_THROWS_AS(parallel_map(50, 3,
                                 [](std::size_t i) -> int {
                                   if (i == 17) throw std::runtime_error("boom");
                                   return 0;
                                 }),
                    std::runtime_error);
  }
}
