#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qmlab/doubleslit.hpp"
#include "qmlab/error.hpp"
#include "qmlab/export.hpp"
#include "qmlab/scenarios.hpp"

using namespace qmlab;
namespace fs = std::filesystem;
namespace sc = qmlab::scenarios;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("qmlab_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path write_config(const fs::path& dir, const json& doc) {
  const auto path = dir / "config.json";
  std::ofstream(path) << doc.dump();
  return path;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(QMLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("number formatting round-trips exactly") {
  for (double v : {0.0, -0.0, 1.0, 0.1, -2.5e-300, 6.02214076e23, 1.0 / 3.0, 125.66370614359172}) {
    CHECK(parse_number(format_number(v)) == v);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK(std::isnan(parse_number(format_number(std::numeric_limits<double>::quiet_NaN()))));
  CHECK(std::isinf(parse_number(format_number(std::numeric_limits<double>::infinity()))));
  CHECK_THROWS_AS(parse_number("1.0x"), Error);
}

TEST_CASE("grid export round-trips") {
  const auto dir = scratch("grid");
  const auto cfg = doubleslit::SlitConfig::from_wavelength(1.0, 0.05);
  const auto map = doubleslit::mass_map(cfg, {-1.0, 3.0, 17, -2.0, 2.0, 13});
  export_grid(map, dir / "a.csv");
  export_grid(map, dir / "b.csv");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

  const auto table = read_csv(dir / "a.csv");
  REQUIRE(table.header == std::vector<std::string>{"x", "y", "value"});
  REQUIRE(table.rows.size() == 17u * 13u);
  std::size_t r = 0;
  for (int j = 0; j < 13; ++j) {
    for (int i = 0; i < 17; ++i, ++r) {
      CHECK(table.rows[r][0] == map.grid.x(i));
      CHECK(table.rows[r][1] == map.grid.y(j));
      const double v = map.values(j, i);
      if (std::isnan(v)) {
        CHECK(std::isnan(table.rows[r][2]));
      } else {
        CHECK(table.rows[r][2] == v);
      }
    }
  }
  CHECK_THROWS_AS(read_csv(dir / "missing.csv"), Error);
}

TEST_CASE("config merging and validation") {
  const auto out = scratch("cfg");
  const auto cfg = sc::make_config("boost", json{{"beta", 0.3}}, {"omega0=2"}, out);
  CHECK(cfg.params.at("beta") == 0.3);
  CHECK(cfg.params.at("omega0") == 2);
  CHECK(cfg.params.at("samples_per_period") == 64);

  auto kind_of = [&](const std::string& scenario, const json& doc, std::vector<std::string> sets = {}) {
    try {
      sc::make_config(scenario, doc, sets, out);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  CHECK(kind_of("boost", json{{"bogus", 1}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("boost", json{{"beta", 1.0}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("boost", json{{"beta", "fast"}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("boost", json{{"samples_per_period", 8}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("boost", json{{"scenario", "box-beat"}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("boost", json::array()) == ErrorKind::InvalidConfig);
  CHECK(kind_of("boost", json::object(), {"beta"}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("doubleslit-traj", json{{"step", 0.02}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("doubleslit-fringes", json{{"screen", "dome"}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("doubleslit-map", json{{"wavelength", 50.0}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("box-beat", json{{"L", 0.5}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("box-beat", json{{"probe", 1.0}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("box-quantize", json{{"omega0", 5.0}}) == ErrorKind::InvalidConfig);
  CHECK(kind_of("nope", json::object()) == ErrorKind::InvalidConfig);

  // k_beat selects the cavity speed unless beta is given.
  const auto beat = sc::make_config("box-beat", json{{"k_beat", 3.0}}, {}, out);
  CHECK(beat.params.at("beta").is_null());
  const auto fixed = sc::make_config("box-beat", json{{"beta", 0.1}}, {}, out);
  CHECK(fixed.params.at("beta") == 0.1);
  CHECK(kind_of("box-beat", json{{"beta", 0.1}, {"k_beat", 3.0}}) == ErrorKind::InvalidConfig);
}

TEST_CASE("summary json round-trips") {
  const auto out = scratch("summary");
  const auto summary = sc::run(sc::make_config("boost", json::object(), {}, out));
  CHECK(summary.all_pass());
  const auto doc = sc::to_json(summary);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("pass") == true);
  CHECK(sc::summary_from_json(doc) == summary);
  sc::export_summary(summary, out / "summary.json");
  CHECK(sc::summary_from_json(json::parse(slurp(out / "summary.json"))) == summary);
  for (const auto& f : summary.files) CHECK(fs::exists(out / f));
}

TEST_CASE("standing wave scenario skips infinite metrics") {
  const auto out = scratch("rest");
  const auto summary = sc::run(sc::make_config("boost", json{{"beta", 0.0}}, {}, out));
  CHECK(summary.all_pass());
  CHECK(summary.metrics.count("superluminal_wavelength") == 0);
  CHECK(summary.metrics.at("group_speed").measured == 0.0);
  CHECK_FALSE(summary.warnings.empty());
  const auto doc = sc::to_json(summary);
  CHECK_FALSE(doc.at("metrics").at("group_speed").contains("rel_error"));
}

TEST_CASE("cli exit codes") {
  const auto dir = scratch("cli");
  const auto good = write_config(dir, json{{"beta", 0.3}});
  const std::string out = (dir / "out").string();

  CHECK(cli("boost --config " + good.string() + " --out " + out) == sc::kPass);
  CHECK(fs::exists(dir / "out" / "summary.json"));
  CHECK(fs::exists(dir / "out" / "envelope.csv"));

  CHECK(cli("boost") == sc::kUsage);
  CHECK(cli("warp --config " + good.string()) == sc::kUsage);
  CHECK(cli("boost --config " + (dir / "missing.json").string()) == sc::kUsage);

  // Invalid parameters are rejected before anything is written.
  const std::string bad_out = (dir / "bad").string();
  CHECK(cli("boost --config " + good.string() + " --out " + bad_out + " --set beta=1.5") == sc::kUsage);
  CHECK_FALSE(fs::exists(dir / "bad"));

  const auto beat = write_config(dir, json{{"beat_periods", 8}});
  CHECK(cli("box-beat --config " + beat.string() + " --out " + (dir / "beat").string()) == sc::kPass);

  // Runtime physics errors exit with 3.
  const auto cramped = write_config(dir, json{{"k_beat", 0.05}});
  CHECK(cli("box-states --config " + cramped.string() + " --out " + (dir / "cramped").string()) == sc::kRuntime);
}

TEST_CASE("metric failure exit code") {
  const auto dir = scratch("fail");
  // A screen only 2 slit separations away breaks the far-field spacing formula.
  const auto near = write_config(dir, json{{"D", 1.0}, {"wavelength", 0.01}, {"d", 0.5}});
  CHECK(cli("doubleslit-fringes --config " + near.string() + " --out " + (dir / "o").string()) ==
        sc::kMetricFailure);
  const auto doc = json::parse(slurp(dir / "o" / "summary.json"));
  CHECK(doc.at("pass") == false);
  CHECK_FALSE(doc.at("warnings").empty());
}

TEST_CASE("repeated runs are byte-identical") {
  const auto dir = scratch("det");
  const auto cfg = write_config(dir, json::object());
  for (const auto& name : sc::scenario_names()) {
    const auto a = dir / (name + "_a");
    const auto b = dir / (name + "_b");
    REQUIRE(cli(name + " --config " + cfg.string() + " --out " + a.string()) == sc::kPass);
    REQUIRE(cli(name + " --config " + cfg.string() + " --out " + b.string()) == sc::kPass);
    auto sa = json::parse(slurp(a / "summary.json"));
    auto sb = json::parse(slurp(b / "summary.json"));
    REQUIRE_FALSE(sa.at("files").empty());
    for (const auto& f : sa.at("files")) {
      const auto file = f.get<std::string>();
      INFO(name << "/" << file);
      CHECK(slurp(a / file) == slurp(b / file));
      CHECK_FALSE(slurp(a / file).empty());
    }
    sa.erase("wall_clock_seconds");
    sb.erase("wall_clock_seconds");
    CHECK(sa == sb);
  }
}
