#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "vorrt/episode.hpp"
#include "vorrt/errors.hpp"
#include "vorrt/render.hpp"
#include "vorrt/scenarios.hpp"

namespace vorrt::cli {

namespace {

namespace fs = std::filesystem;
using OrderedJson = nlohmann::ordered_json;

// Reported with exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string scenario;
  std::uint64_t seed = 0;
  std::optional<double> dth, mtd, step;
  std::optional<int> iters;
  std::string out = ".";
};

void add_common(CLI::App& app, Common& c) {
  app.add_option("--scenario", c.scenario, "builtin name or scenario file")->required();
  app.add_option("--seed", c.seed, "planner seed (tss placement too)");
  app.add_option("--dth", c.dth, "minimum closest-approach distance, m");
  app.add_option("--mtd", c.mtd, "risk gate distance, m");
  app.add_option("--step", c.step, "tree edge length, m");
  app.add_option("--iters", c.iters, "insertions per phase");
  app.add_option("--out", c.out, "output directory");
}

PlannerOverrides overrides_of(const Common& c) {
  PlannerOverrides o;
  o.d_th = c.dth;
  o.mtd = c.mtd;
  o.step_distance = c.step;
  o.phase_iterations = c.iters;
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

bool is_builtin(const std::string& name) {
  const auto& names = builtin_names();
  return name == "crossing_port" || std::find(names.begin(), names.end(), name) != names.end();
}

ScenarioSpec resolve(const std::string& name, std::uint64_t seed) {
  if (is_builtin(name)) return builtin_scenario(name, seed);
  return load_scenario(read_file(name));
}

PlannerConfig config_of(const ScenarioSpec& spec, const Common& c) {
  PlannerConfig config = to_config(spec);
  overrides_of(c).apply_to(config);
  config.rng_seed = c.seed;
  validate_config(config);
  return config;
}

const char* outcome_name(GrowthOutcome o) {
  switch (o) {
    case GrowthOutcome::ReachedGoal: return "reached_goal";
    case GrowthOutcome::BudgetSpent: return "budget_spent";
    case GrowthOutcome::Exhausted: return "exhausted";
  }
  return "?";
}

OrderedJson growth_json(const GrowthResult& g) {
  return {{"inserted", g.inserted}, {"attempts", g.attempts}, {"outcome", outcome_name(g.outcome)}};
}

std::string plan_summary(const ScenarioSpec& spec, const PlannerConfig& config, const PlanResult& r) {
  OrderedJson j;
  j["scenario"] = spec.name;
  j["seed"] = config.rng_seed;
  j["found_goal"] = r.path.found_goal;
  j["waypoints"] = r.path.waypoints.size();
  double length = 0.0;
  for (std::size_t i = 1; i < r.path.waypoints.size(); ++i) {
    length += distance(r.path.waypoints[i - 1].position, r.path.waypoints[i].position);
  }
  j["path_length_m"] = std::stod(format_number(length));
  j["duration_s"] = std::stod(format_number(r.path.waypoints.back().time - r.path.waypoints.front().time));
  OrderedJson attempts = OrderedJson::array();
  for (const auto& a : r.attempts) {
    OrderedJson e{{"phases_run", a.phases_run}, {"phase1", growth_json(a.phase1)}};
    if (a.phase2) e["phase2"] = growth_json(*a.phase2);
    e["tree_size"] = a.tree_size;
    attempts.push_back(std::move(e));
  }
  j["attempts"] = attempts;
  return j.dump(2) + "\n";
}

// id@time:heading[:speed]
CourseChange parse_course_change(const std::string& text) {
  const auto at = text.find('@');
  if (at == std::string::npos || at == 0) throw InputError("course change '" + text + "': expected id@time:heading[:speed]");
  CourseChange c;
  c.vessel_id = text.substr(0, at);
  std::vector<double> nums;
  std::stringstream rest(text.substr(at + 1));
  std::string part;
  while (std::getline(rest, part, ':')) {
    try {
      std::size_t used = 0;
      nums.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InputError("course change '" + text + "': bad number '" + part + "'");
    }
  }
  if (nums.size() < 2 || nums.size() > 3) throw InputError("course change '" + text + "': expected id@time:heading[:speed]");
  c.time = nums[0];
  c.heading_deg = nums[1];
  if (nums.size() == 3) c.speed = nums[2];
  return c;
}

// "a..b" inclusive, or a comma list.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("seeds '" + text + "': expected a..b or a comma list");
    }
    return std::stoull(s);
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto a = number(text.substr(0, dots));
    const auto b = number(text.substr(dots + 2));
    if (b < a) throw InputError("seeds '" + text + "': empty range");
    for (auto s = a; s <= b; ++s) seeds.push_back(s);
  } else {
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) seeds.push_back(number(part));
  }
  if (seeds.empty()) throw InputError("seeds '" + text + "': empty");
  return seeds;
}

int cmd_plan(const Common& c, std::ostream& out) {
  const ScenarioSpec spec = resolve(c.scenario, c.seed);
  const PlannerConfig config = config_of(spec, c);
  const PlanResult r = plan_detailed(to_world(spec), config);
  const std::string summary = plan_summary(spec, config, r);
  write_file(fs::path(c.out) / "path.csv", path_csv(r.path));
  write_file(fs::path(c.out) / "plan.json", summary);
  out << summary;
  return r.path.found_goal ? kExitOk : kExitNoPath;
}

int cmd_simulate(const Common& c, const EpisodeOptions& options, bool render, std::ostream& out, std::ostream& err) {
  const ScenarioSpec spec = resolve(c.scenario, c.seed);
  const PlannerConfig config = config_of(spec, c);
  EpisodeLog log = run_episode(to_world(spec), config, options);
  log.scenario = spec.name;
  log.seed = c.seed;
  const std::string csv = episode_csv(log);
  const fs::path dir(c.out);
  write_file(dir / "ticks.csv", csv);
  std::string paths = "plan,index,x_m,y_m,time_s\n";
  for (std::size_t k = 0; k < log.paths.size(); ++k) {
    std::istringstream rows(path_csv(log.paths[k]));
    std::string row;
    std::getline(rows, row);
    while (std::getline(rows, row)) paths += std::to_string(k) + "," + row + "\n";
  }
  write_file(dir / "paths.csv", paths);
  const std::string summary = episode_summary_json(log);
  write_file(dir / "summary.json", summary);
  if (render) write_file(dir / "episode.svg", render_svg(csv));
  out << summary;
  if (!log.summary.goal_reached()) {
    err << "episode ended with status " << to_string(log.summary.status) << '\n';
    return kExitNoPath;
  }
  return kExitOk;
}

int cmd_batch(const Common& c, const std::string& seeds_text, int parallelism, std::ostream& out) {
  const auto seeds = parse_seeds(seeds_text);
  BatchReport report =
      is_builtin(c.scenario)
          ? run_batch(c.scenario, seeds, parallelism, overrides_of(c))
          : run_batch(load_scenario(read_file(c.scenario)), seeds, parallelism, overrides_of(c));
  const std::string text = batch_report_json(report);
  write_file(fs::path(c.out) / "batch.json", text);
  out << text;
  return kExitOk;
}

int cmd_render(const std::string& log_path, const std::string& out_path, std::ostream& out) {
  const std::string svg = render_svg(read_file(log_path));
  if (out_path.empty()) {
    out << svg;
  } else {
    write_file(out_path, svg);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Velocity-obstacle RRT planner for COLREGs encounters", "vorrt"};
  app.require_subcommand(1);

  Common plan_opts, sim_opts, batch_opts;
  auto* plan = app.add_subcommand("plan", "plan once and write path.csv and plan.json");
  add_common(*plan, plan_opts);

  auto* sim = app.add_subcommand("simulate", "closed-loop episode with replanning");
  add_common(*sim, sim_opts);
  EpisodeOptions options;
  std::vector<std::string> changes;
  bool no_svg = false;
  sim->add_option("--tick", options.tick, "simulation step, s");
  sim->add_option("--max-time", options.max_time, "episode time limit, s");
  sim->add_option("--course-change", changes, "scripted target manoeuvre id@time:heading[:speed]");
  sim->add_flag("--no-svg", no_svg, "skip episode.svg");

  auto* batch = app.add_subcommand("batch", "one episode per seed, aggregate report");
  add_common(*batch, batch_opts);
  std::string seeds = "0..49";
  int parallelism = 1;
  batch->add_option("--seeds", seeds, "a..b inclusive, or a comma list");
  batch->add_option("--parallelism", parallelism, "episodes run at once")->check(CLI::PositiveNumber);

  auto* render = app.add_subcommand("render", "SVG plot of a tick CSV");
  std::string log_path, svg_path;
  render->add_option("--log", log_path, "ticks.csv from simulate")->required();
  render->add_option("--out", svg_path, "SVG file (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*plan) return cmd_plan(plan_opts, out);
    if (*sim) {
      for (const auto& c : changes) options.course_changes.push_back(parse_course_change(c));
      return cmd_simulate(sim_opts, options, !no_svg, out, err);
    }
    if (*batch) return cmd_batch(batch_opts, seeds, parallelism, out);
    return cmd_render(log_path, svg_path, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ValidationError& e) {
    err << "invalid scenario: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoPath;
  }
}

}  // namespace vorrt::cli
