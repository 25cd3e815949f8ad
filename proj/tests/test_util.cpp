#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fracheat/config.hpp"
#include "fracheat/csv.hpp"
#include "fracheat/parallel.hpp"

using namespace fracheat;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/fracheat_util_") + name;
}

}  // namespace

TEST_CASE("csv rendering is uniform and round-trip exact") {
  CHECK(CsvTable::render(1.0) == "1");
  CHECK(CsvTable::render(0.1) == "0.10000000000000001");
  CHECK(CsvTable::render(static_cast<long long>(42)) == "42");
  // %.17g preserves every double bit pattern
  const double v = 0.1 + 0.2;
  CHECK(std::stod(CsvTable::render(v)) == v);
}

TEST_CASE("csv table writes provenance, quoted cells, and a schema sidecar") {
  CsvTable t({{"label", "string"}, {"value", "number"}});
  t.add_provenance("experiment", "demo");
  t.add_provenance("p", 4.0);
  t.add_row({"plain", CsvTable::render(1.5)});
  t.add_row({"needs \"quotes\", commas", CsvTable::render(2.0)});
  CHECK(t.rows() == 2);
  CHECK_THROWS_AS(t.add_row({"only one cell"}), std::invalid_argument);

  const auto path = temp_path("table.csv");
  t.write(path);
  const auto body = slurp(path);
  CHECK(body.find("# experiment = demo\n") != std::string::npos);
  CHECK(body.find("# p = 4\n") != std::string::npos);
  CHECK(body.find("label,value\n") != std::string::npos);
  CHECK(body.find("\"needs \"\"quotes\"\", commas\",2\n") != std::string::npos);

  const auto schema = slurp(path + ".schema.json");
  CHECK(schema.find("\"label\"") != std::string::npos);
  CHECK(schema.find("\"string\"") != std::string::npos);
  CHECK(schema.find("\"provenance\"") != std::string::npos);

  // equal inputs rewrite byte-identically
  const auto path2 = temp_path("table2.csv");
  CsvTable u({{"label", "string"}, {"value", "number"}});
  u.add_provenance("experiment", "demo");
  u.add_provenance("p", 4.0);
  u.add_row({"plain", CsvTable::render(1.5)});
  u.add_row({"needs \"quotes\", commas", CsvTable::render(2.0)});
  u.write(path2);
  CHECK(slurp(path2) == body);
  std::remove(path.c_str());
  std::remove((path + ".schema.json").c_str());
  std::remove(path2.c_str());
  std::remove((path2 + ".schema.json").c_str());
}

TEST_CASE("csv table validates construction") {
  CHECK_THROWS_AS(CsvTable(std::vector<CsvColumn>{{"x", "float"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CsvTable(std::vector<CsvColumn>{}), std::invalid_argument);
}

TEST_CASE("config parses the flat grammar with overrides") {
  const auto cfg = Config::parse_string(
      "# comment line\n"
      "n_time = 256\n"
      "theta = 1.5  # trailing comment\n"
      "kind = delta\n"
      "note = \"two words, one # inside\"\n"
      "dealias = true\n"
      "thetas = [0.5, 1.0, 2.0]\n"
      "labels = [a, b]\n"
      "n_time = 128\n");
  CHECK(cfg.get_integer("n_time") == 128);  // later assignment wins
  CHECK(cfg.get_number("theta") == 1.5);
  CHECK(cfg.get_text("kind") == "delta");
  CHECK(cfg.get_text("note") == "two words, one # inside");
  CHECK(cfg.get_boolean_or("dealias", false));
  CHECK(cfg.get_numbers("thetas") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(cfg.get_texts_or("labels", {}) == std::vector<std::string>{"a", "b"});
  CHECK(cfg.has("kind"));
  CHECK_FALSE(cfg.has("missing"));
}

TEST_CASE("config typed getters enforce kinds and integrality") {
  auto cfg = Config::parse_string("x = 2.5\nname = delta\n");
  CHECK_THROWS_AS(cfg.get_integer("x"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.get_number("name"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.get_number("absent"), std::invalid_argument);
  CHECK(cfg.get_number_or("absent", 7.0) == 7.0);
  CHECK(cfg.get_integer_or("absent", 3) == 3);
  CHECK(cfg.get_text_or("absent", "d") == "d");
  // scalars promote to one-element lists
  CHECK(cfg.get_numbers("x") == std::vector<double>{2.5});
  CHECK(cfg.get_texts_or("name", {}) == std::vector<std::string>{"delta"});

  cfg.apply_override("x = 4");
  CHECK(cfg.get_integer("x") == 4);
  CHECK_THROWS_AS(cfg.apply_override("no_equals_sign"), std::invalid_argument);
}

TEST_CASE("config rejects malformed lines with line numbers") {
  CHECK_THROWS_WITH_AS(static_cast<void>(Config::parse_string("a = 1\nb =\n")),
                       doctest::Contains("line 2"), std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(Config::parse_string("bad key! = 1\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(Config::parse_string("x = [1, two]\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(Config::parse_string("x = \"unterminated\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(Config::parse_file("/nonexistent/path.cfg"),
                  std::invalid_argument);
}

TEST_CASE("config schema gate and render round-trip") {
  const auto cfg = Config::parse_string(
      "beta = 2\nalpha = [1, 2]\nname = \"a b\"\nflag = false\n");
  CHECK_NOTHROW(cfg.require_known_keys({"alpha", "beta", "name", "flag", "extra"}));
  CHECK_THROWS_WITH_AS(cfg.require_known_keys({"alpha", "beta"}),
                       doctest::Contains("flag"), std::invalid_argument);

  const auto text = cfg.render();
  // keys sorted, grammar-compatible
  CHECK(text.find("alpha") < text.find("beta"));
  const auto reparsed = Config::parse_string(text);
  CHECK(reparsed.render() == text);
  CHECK(reparsed.get_numbers("alpha") == std::vector<double>{1.0, 2.0});
  CHECK(reparsed.get_text("name") == "a b");
  CHECK_FALSE(reparsed.get_boolean_or("flag", true));
}

TEST_CASE("run_cells covers every index exactly once") {
  for (int jobs : {1, 4}) {
    std::vector<std::atomic<int>> hits(37);
    run_cells(jobs, 37, [&](int i) { hits[static_cast<std::size_t>(i)]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  CHECK_NOTHROW(run_cells(2, 0, [](int) { throw std::logic_error("unreached"); }));
  CHECK_THROWS_AS(run_cells(0, 3, [](int) {}), std::invalid_argument);
}

TEST_CASE("run_cells rethrows a worker exception") {
  CHECK_THROWS_WITH_AS(run_cells(3, 16,
                                 [](int i) {
                                   if (i == 7) throw std::runtime_error("cell 7 failed");
                                 }),
                       "cell 7 failed", std::runtime_error);
}
