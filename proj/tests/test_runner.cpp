#include "doctest.h"

#include <charconv>
#include <cstring>
#include <random>

#include "json.hpp"
#include "mesofluct/runner.hpp"

using namespace mesofluct;

namespace {

RunConfig base() {
  RunConfig cfg;
  apply_setting(cfg, "temp", "0.1");
  apply_setting(cfg, "points", "65");
  apply_setting(cfg, "tmax", "8");
  return cfg;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out(1);
  for (char ch : s) {
    if (ch == sep) out.emplace_back();
    else out.back() += ch;
  }
  return out;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> bits;
  int tested = 0;
  while (tested < 2000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    ++tested;
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("ranges") {
  const Range r = Range::parse("0:1:5");
  CHECK(r.values() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(Range::parse("2:3:1").values() == std::vector<double>{2.0});
  CHECK_THROWS_AS(Range::parse("1:2"), Error);
  CHECK_THROWS_AS(Range::parse("a:2:3"), Error);
}

TEST_CASE("settings are checked field by field") {
  RunConfig cfg;
  CHECK_THROWS_AS(apply_setting(cfg, "colour", "blue"), Error);
  CHECK_THROWS_AS(apply_setting(cfg, "gamma", "0.5x"), Error);
  CHECK_THROWS_AS(apply_setting(cfg, "format", "xml"), Error);
  CHECK_THROWS_AS(apply_setting(cfg, "points", "1"), Error);

  RunConfig both = base();
  apply_setting(both, "beta", "3");
  CHECK_THROWS_AS(validate(both), Error);

  RunConfig empty = base();
  apply_setting(empty, "r-range", "1:0:3");
  try {
    validate(empty);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parameter);
    CHECK(std::string(e.what()).find("r-range") != std::string::npos);
  }

  RunConfig bad_gamma = base();
  apply_setting(bad_gamma, "gamma", "0.9");
  CHECK_THROWS_AS(validate(bad_gamma), Error);
}

TEST_CASE("variants pick the second squeezing") {
  RunConfig cfg = base();
  apply_setting(cfg, "r1", "1.5");
  CHECK(effective_r3(cfg) == 1.5);
  apply_setting(cfg, "variant", "one-mode");
  CHECK(effective_r3(cfg) == 0.0);
  apply_setting(cfg, "variant", "custom");
  apply_setting(cfg, "r3", "0.2");
  CHECK(effective_r3(cfg) == 0.2);
  CHECK(effective_t_max(RunConfig{}) == 20.0);
}

TEST_CASE("evolve is deterministic and CSV and JSON carry the same values") {
  RunConfig cfg = base();
  apply_setting(cfg, "oracle", "true");
  validate(cfg);
  const Table a = cmd_evolve(cfg);
  const Table b = cmd_evolve(cfg);
  CHECK(to_csv(a) == to_csv(b));
  CHECK(a.meta.at("oracle_max_abs_diff") <= 1e-9);

  const std::string csv = to_csv(a);
  const auto lines = split(csv, '\n');
  CHECK(lines[0] == "# mesofluct v1");
  CHECK(lines[1] == "t,E,S,I1,I2,I3,I4,lambda_min,f_deficit,S_closed");

  const auto js = nlohmann::json::parse(to_json(a));
  CHECK(js["format"] == "mesofluct v1");
  REQUIRE(js["rows"].size() == a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto cells = split(lines[i + 2], ',');
    REQUIRE(cells.size() == a.columns.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double from_csv = 0.0;
      std::from_chars(cells[j].data(), cells[j].data() + cells[j].size(), from_csv);
      CHECK(js["rows"][i][j].get<double>() == from_csv);
    }
  }
}

TEST_CASE("evolve without squeezing stays separable") {
  RunConfig cfg = base();
  apply_setting(cfg, "r1", "0");
  validate(cfg);
  const Table t = cmd_evolve(cfg);
  const std::size_t e = t.column_index("E");
  for (const auto& row : t.rows) CHECK(*row[e] == 0.0);
}

TEST_CASE("evolve shows birth and death at low temperature") {
  RunConfig cfg = base();
  apply_setting(cfg, "tmax", "20");
  apply_setting(cfg, "points", "401");
  validate(cfg);
  const Table t = cmd_evolve(cfg);
  const std::size_t e = t.column_index("E");
  CHECK(*t.rows.front()[e] == 0.0);
  CHECK(*t.rows.back()[e] == 0.0);
  double peak = 0.0;
  for (const auto& row : t.rows) peak = std::max(peak, *row[e]);
  CHECK(peak > 0.05);
}

TEST_CASE("sweep grid and critical-temperature table") {
  RunConfig cfg = base();
  apply_setting(cfg, "r-range", "0:1:2");
  apply_setting(cfg, "temp-range", "0.05:0.6:2");
  validate(cfg);
  const SweepResult res = cmd_sweep(cfg, true);
  CHECK(res.grid.columns == std::vector<std::string>{"r", "T", "max_E", "t_birth", "t_death", "entangled"});
  REQUIRE(res.grid.rows.size() == 4);
  // r = 0 rows never entangle and leave the time cells empty
  CHECK(*res.grid.rows[0][5] == 0.0);
  CHECK_FALSE(res.grid.rows[0][3].has_value());
  CHECK(*res.grid.rows[2][5] == 1.0);
  REQUIRE(res.critical);
  CHECK(*res.critical->rows[0][res.critical->column_index("bracketed")] == 0.0);
  CHECK(*res.critical->rows[1][res.critical->column_index("bracketed")] == 1.0);

  // worker count does not change the answer
  setenv("MESOFLUCT_THREADS", "1", 1);
  const SweepResult serial = cmd_sweep(cfg, true);
  unsetenv("MESOFLUCT_THREADS");
  CHECK(to_csv(serial.grid) == to_csv(res.grid));
  CHECK(to_csv(*serial.critical) == to_csv(*res.critical));
}
