#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "vorrt/scenarios.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = vorrt::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("vorrt_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("plan a builtin") {
  const auto dir = scratch("plan");
  const auto a = cli({"plan", "--scenario", "crossing", "--seed", "7", "--out", (dir / "a").string()});
  CHECK(a.code == 0);
  const auto b = cli({"plan", "--scenario", "crossing", "--seed", "7", "--out", (dir / "b").string()});
  CHECK(slurp(dir / "a" / "path.csv") == slurp(dir / "b" / "path.csv"));
  CHECK(slurp(dir / "a" / "plan.json") == slurp(dir / "b" / "plan.json"));
  CHECK(a.out == b.out);
  std::istringstream rows(slurp(dir / "a" / "path.csv"));
  std::string row;
  std::getline(rows, row);
  double last = -1;
  int n = 0;
  while (std::getline(rows, row)) {
    const double t = std::stod(row.substr(row.rfind(',') + 1));
    CHECK(t > last);
    last = t;
    ++n;
  }
  CHECK(n >= 2);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["found_goal"] == true);
  CHECK(j["seed"] == 7);
}

TEST_CASE("plan honours overrides") {
  const auto dir = scratch("overrides");
  auto spec = vorrt::make_head_on();
  spec.planner.smooth_path = false;
  std::ofstream(dir / "raw.json") << vorrt::save_scenario(spec);
  const auto r = cli({"plan", "--scenario", (dir / "raw.json").string(), "--dth", "300", "--mtd", "4000", "--step",
                      "120", "--iters", "150", "--out", dir.string()});
  CHECK(r.code == 0);
  std::istringstream rows(slurp(dir / "path.csv"));
  std::string header, first, second;
  std::getline(rows, header);
  std::getline(rows, first);
  std::getline(rows, second);
  CHECK(second.substr(second.rfind(',') + 1) == "12.000000");
}

TEST_CASE("plan through an impassable barrier exits 1") {
  const auto dir = scratch("barrier");
  vorrt::ScenarioSpec s;
  s.name = "barrier";
  s.ownship_id = "own";
  vorrt::VesselSpec own;
  own.id = "own";
  own.speed = 10;
  own.goal = vorrt::Vec2{0, 2000};
  s.vessels.push_back(own);
  for (int i = -40; i <= 40; ++i) {
    vorrt::VesselSpec w;
    w.id = "w" + std::to_string(i + 40);
    w.x = i * 50.0;
    w.y = 1000;
    w.heading = 0;
    w.length = 15;
    s.vessels.push_back(w);
  }
  s.planner.sampling_bounds = vorrt::Bounds{-1500, -500, 1500, 2500};
  std::ofstream(dir / "barrier.json") << vorrt::save_scenario(s);
  const auto r = cli({"plan", "--scenario", (dir / "barrier.json").string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(slurp(dir / "plan.json"))["found_goal"] == false);
}

TEST_CASE("bad input exits 2") {
  const auto dir = scratch("bad");
  std::ofstream(dir / "broken.json") << "{\"name\": ";
  CHECK(cli({"plan", "--scenario", (dir / "broken.json").string(), "--out", dir.string()}).code == 2);
  CHECK(cli({"plan", "--scenario", (dir / "missing.json").string()}).code == 2);
  CHECK(cli({"render", "--log", (dir / "missing.csv").string()}).code == 2);
  CHECK(cli({"plan"}).code == 2);
  CHECK(cli({"fly"}).code == 2);
  CHECK(cli({"simulate", "--scenario", "crossing", "--course-change", "ts1:5", "--out", dir.string()}).code == 2);
  CHECK(cli({"batch", "--scenario", "crossing", "--seeds", "5..2", "--out", dir.string()}).code == 2);
  CHECK(cli({"plan", "--scenario", "crossing", "--step", "-5", "--out", dir.string()}).code == 2);
}

TEST_CASE("simulate writes the tick table, summary and plot") {
  const auto dir = scratch("simulate");
  const auto a = cli({"simulate", "--scenario", "head_on", "--seed", "1", "--out", (dir / "a").string()});
  CHECK(a.code == 0);
  const auto b = cli({"simulate", "--scenario", "head_on", "--seed", "1", "--out", (dir / "b").string()});
  CHECK(b.code == 0);
  for (const char* f : {"ticks.csv", "paths.csv", "episode.svg"}) {
    CAPTURE(f);
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    CHECK_FALSE(slurp(dir / "a" / f).empty());
  }
  const auto j = nlohmann::json::parse(slurp(dir / "a" / "summary.json"));
  CHECK(j["min_separation_overall_m"].get<double>() >= 200.0);
  const auto r = cli({"render", "--log", (dir / "a" / "ticks.csv").string(), "--out", (dir / "r.svg").string()});
  CHECK(r.code == 0);
  CHECK(slurp(dir / "r.svg") == slurp(dir / "a" / "episode.svg"));
  const auto timed = cli({"simulate", "--scenario", "crossing", "--tick", "2", "--max-time", "20", "--no-svg", "--out",
                          (dir / "c").string()});
  CHECK(timed.code == 1);
  CHECK_FALSE(fs::exists(dir / "c" / "episode.svg"));
  CHECK(fs::exists(dir / "c" / "ticks.csv"));
}

TEST_CASE("batch reports a success rate") {
  const auto dir = scratch("batch");
  const auto r = cli({"batch", "--scenario", "overtaking", "--seeds", "0..3", "--parallelism", "2", "--out",
                      dir.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "batch.json"));
  CHECK(j["runs"] == 4);
  CHECK(j["success_rate"].get<double>() >= 0.0);
  CHECK(cli({"batch", "--scenario", "overtaking", "--seeds", "1,5", "--out", dir.string()}).code == 0);
}
