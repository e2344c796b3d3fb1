#include "vorrt/episode.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace vorrt {

std::string_view to_string(EpisodeStatus status) {
  switch (status) {
    case EpisodeStatus::GoalReached: return "goal_reached";
    case EpisodeStatus::NoPath: return "no_path";
    case EpisodeStatus::ReplanFailed: return "replan_failed";
    case EpisodeStatus::Timeout: return "timeout";
  }
  return "?";
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::pair<Vec2, double> pose_on_path(const Path& path, double t, double fallback_heading) {
  const auto& w = path.waypoints;
  if (w.empty()) throw std::invalid_argument("pose_on_path needs a non-empty path");
  if (w.size() == 1 || t <= w.front().time) {
    const double h = w.size() > 1 && w[1].position != w[0].position ? bearing_deg(w[0].position, w[1].position)
                                                                     : fallback_heading;
    return {w.front().position, h};
  }
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (t <= w[i].time) {
      const double f = (t - w[i - 1].time) / (w[i].time - w[i - 1].time);
      const Vec2 p = w[i - 1].position + (w[i].position - w[i - 1].position) * f;
      return {p, bearing_deg(w[i - 1].position, w[i].position)};
    }
  }
  const std::size_t n = w.size();
  return {w.back().position, bearing_deg(w[n - 2].position, w[n - 1].position)};
}

namespace {

TickRecord snapshot(const WorldState& world, const EncounterLatch& latch) {
  TickRecord r;
  r.time = world.time;
  r.vessels.push_back(world.ownship);
  for (const auto& t : world.targets) {
    r.vessels.push_back(t);
    r.distances.push_back(distance(world.ownship.position, t.position));
  }
  r.encounters = latch.active();
  return r;
}

}  // namespace

EpisodeLog run_episode(const WorldState& initial, const PlannerConfig& config, const EpisodeOptions& options) {
  if (!(options.tick > 0.0)) throw std::invalid_argument("tick must be positive");
  validate_world(initial);

  EpisodeLog log;
  log.seed = config.rng_seed;
  log.vessel_ids.push_back(initial.ownship.id);
  for (const auto& t : initial.targets) log.vessel_ids.push_back(t.id);

  const ColregsParams params = config.colregs();
  WorldState world = initial;
  EncounterLatch latch;
  latch.update(world.ownship, world.targets, params);
  log.ticks.push_back(snapshot(world, latch));

  double planning_time = 0.0;
  int plan_calls = 0;
  auto run_plan = [&](const WorldState& from) {
    PlannerConfig c = config;
    c.rng_seed = config.rng_seed + static_cast<std::uint64_t>(plan_calls++);
    const auto start = std::chrono::steady_clock::now();
    PlanResult r = plan_detailed(from, c, latch);
    planning_time += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log.summary.tree_sizes.push_back(r.attempts.empty() ? 0 : r.attempts.back().tree_size);
    return r;
  };

  Path path = run_plan(world).path;
  log.paths.push_back(path);
  EpisodeStatus status = EpisodeStatus::Timeout;
  std::vector<bool> applied(options.course_changes.size(), false);

  if (!path.found_goal) {
    status = EpisodeStatus::NoPath;
  } else {
    while (world.time < options.max_time) {
      const double path_end = path.waypoints.back().time;
      double t_next = world.time + options.tick;
      if (t_next >= path_end - 1e-9) t_next = path_end;
      const double dt = t_next - world.time;

      WorldState next = world;
      next.time = t_next;
      for (auto& t : next.targets) t.position += t.velocity() * dt;
      const auto [pos, heading] = pose_on_path(path, t_next, world.ownship.heading_deg);
      next.ownship.position = pos;
      next.ownship.heading_deg = heading;
      world = std::move(next);

      for (std::size_t i = 0; i < options.course_changes.size(); ++i) {
        const CourseChange& cc = options.course_changes[i];
        if (applied[i] || cc.time > world.time) continue;
        for (auto& t : world.targets) {
          if (t.id != cc.vessel_id) continue;
          t.heading_deg = normalize_deg(cc.heading_deg);
          if (cc.speed) t.speed = *cc.speed;
        }
        applied[i] = true;
      }

      latch.update(world.ownship, world.targets, params);
      log.ticks.push_back(snapshot(world, latch));

      if (t_next >= path_end) {
        status = EpisodeStatus::GoalReached;
        break;
      }
      if (!validate_path(path, world, config.d_th, options.check_horizon)) {
        PlanResult r = run_plan(world);
        ReplanEvent ev{world.time, r.path.found_goal, r.attempts.empty() ? 0 : r.attempts.back().tree_size};
        log.replans.push_back(ev);
        if (!r.path.found_goal) {
          status = EpisodeStatus::ReplanFailed;
          break;
        }
        path = std::move(r.path);
        log.paths.push_back(path);
      }
    }
  }

  EpisodeSummary& s = log.summary;
  s.status = status;
  s.planning_time_s = planning_time;
  s.replans = static_cast<int>(log.replans.size());
  s.min_separation.assign(initial.targets.size(), std::numeric_limits<double>::infinity());
  for (const auto& tick : log.ticks) {
    for (std::size_t i = 0; i < tick.distances.size(); ++i) {
      s.min_separation[i] = std::min(s.min_separation[i], tick.distances[i]);
    }
  }
  s.min_separation_overall = std::numeric_limits<double>::infinity();
  for (double d : s.min_separation) s.min_separation_overall = std::min(s.min_separation_overall, d);
  return log;
}

std::string episode_csv(const EpisodeLog& log) {
  std::ostringstream out;
  out << "time_s";
  for (const auto& id : log.vessel_ids) {
    out << ',' << id << "_x_m," << id << "_y_m," << id << "_heading_deg," << id << "_speed_mps";
  }
  for (std::size_t i = 1; i < log.vessel_ids.size(); ++i) {
    out << ",dist_" << log.vessel_ids[0] << '_' << log.vessel_ids[i] << "_m";
  }
  out << '\n';
  for (const auto& tick : log.ticks) {
    out << format_number(tick.time);
    for (const auto& v : tick.vessels) {
      out << ',' << format_number(v.position.x()) << ',' << format_number(v.position.y()) << ','
          << format_number(v.heading_deg) << ',' << format_number(v.speed);
    }
    for (double d : tick.distances) out << ',' << format_number(d);
    out << '\n';
  }
  return out.str();
}

namespace {

// The CSV's rounding, so summary minima match the table exactly.
double as_logged(double v) { return std::stod(format_number(v)); }

}  // namespace

std::string episode_summary_json(const EpisodeLog& log) {
  nlohmann::ordered_json j;
  const EpisodeSummary& s = log.summary;
  j["scenario"] = log.scenario;
  j["seed"] = log.seed;
  j["status"] = std::string(to_string(s.status));
  j["goal_reached"] = s.goal_reached();
  j["ticks"] = log.ticks.size();
  j["duration_s"] = log.ticks.empty() ? 0.0 : as_logged(log.ticks.back().time);
  nlohmann::ordered_json per_pair = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < s.min_separation.size(); ++i) {
    per_pair[log.vessel_ids[i + 1]] = as_logged(s.min_separation[i]);
  }
  j["min_separation_m"] = per_pair;
  if (s.min_separation.empty()) {
    j["min_separation_overall_m"] = nullptr;
  } else {
    j["min_separation_overall_m"] = as_logged(s.min_separation_overall);
  }
  j["replans"] = s.replans;
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (const auto& e : log.replans) {
    events.push_back({{"time_s", as_logged(e.time)}, {"found_goal", e.found_goal}, {"tree_size", e.tree_size}});
  }
  j["replan_events"] = events;

  // Encounter onsets and clearances, derived from the tick records.
  nlohmann::ordered_json enc = nlohmann::ordered_json::array();
  std::vector<Encounter> prev;
  for (const auto& tick : log.ticks) {
    for (const auto& e : tick.encounters) {
      if (std::find(prev.begin(), prev.end(), e) == prev.end()) {
        enc.push_back({{"time_s", as_logged(tick.time)}, {"target", e.target_id},
                       {"kind", std::string(to_string(e.kind))}, {"event", "latched"}});
      }
    }
    for (const auto& e : prev) {
      if (std::find(tick.encounters.begin(), tick.encounters.end(), e) == tick.encounters.end()) {
        enc.push_back({{"time_s", as_logged(tick.time)}, {"target", e.target_id},
                       {"kind", std::string(to_string(e.kind))}, {"event", "cleared"}});
      }
    }
    prev = tick.encounters;
  }
  j["encounters"] = enc;
  j["tree_sizes"] = s.tree_sizes;
  j["planning_time_s"] = s.planning_time_s;
  return j.dump(2) + "\n";
}

std::string path_csv(const Path& path) {
  std::ostringstream out;
  out << "index,x_m,y_m,time_s\n";
  for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
    const auto& w = path.waypoints[i];
    out << i << ',' << format_number(w.position.x()) << ',' << format_number(w.position.y()) << ','
        << format_number(w.time) << '\n';
  }
  return out.str();
}

double BatchReport::success_rate() const {
  if (runs.empty()) return 0.0;
  const auto ok = std::count_if(runs.begin(), runs.end(),
                                [](const BatchRun& r) { return r.status == EpisodeStatus::GoalReached; });
  return static_cast<double>(ok) / static_cast<double>(runs.size());
}

namespace {

BatchReport run_batch_with(const std::string& name, const std::function<ScenarioSpec(std::uint64_t)>& make,
                           const std::vector<std::uint64_t>& seeds, int parallelism,
                           const PlannerOverrides& overrides, const EpisodeOptions& options) {
  if (seeds.empty()) throw std::invalid_argument("batch needs at least one seed");
  BatchReport report;
  report.scenario = name;
  report.runs.resize(seeds.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      const ScenarioSpec spec = make(seeds[i]);
      PlannerConfig config = to_config(spec);
      overrides.apply_to(config);
      config.rng_seed = seeds[i];
      const EpisodeLog log = run_episode(to_world(spec), config, options);
      BatchRun& r = report.runs[i];
      r.seed = seeds[i];
      r.status = log.summary.status;
      r.min_separation = log.summary.min_separation_overall;
      r.planning_time_s = log.summary.planning_time_s;
      r.replans = log.summary.replans;
    }
  };
  const int n = std::clamp(parallelism, 1, static_cast<int>(seeds.size()));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

}  // namespace

BatchReport run_batch(const std::string& builtin, const std::vector<std::uint64_t>& seeds, int parallelism,
                      const PlannerOverrides& overrides, const EpisodeOptions& options) {
  return run_batch_with(
      builtin, [&](std::uint64_t seed) { return builtin_scenario(builtin, seed); }, seeds, parallelism, overrides,
      options);
}

BatchReport run_batch(const ScenarioSpec& spec, const std::vector<std::uint64_t>& seeds, int parallelism,
                      const PlannerOverrides& overrides, const EpisodeOptions& options) {
  return run_batch_with(
      spec.name, [&](std::uint64_t) { return spec; }, seeds, parallelism, overrides, options);
}

std::string batch_report_json(const BatchReport& report) {
  nlohmann::ordered_json j;
  j["scenario"] = report.scenario;
  j["runs"] = report.runs.size();
  const auto successes = std::count_if(report.runs.begin(), report.runs.end(), [](const BatchRun& r) {
    return r.status == EpisodeStatus::GoalReached;
  });
  j["successes"] = successes;
  j["success_rate"] = report.success_rate();

  std::vector<double> seps;
  double plan_time = 0.0;
  for (const auto& r : report.runs) {
    if (r.status == EpisodeStatus::GoalReached && std::isfinite(r.min_separation)) seps.push_back(r.min_separation);
    plan_time += r.planning_time_s;
  }
  std::sort(seps.begin(), seps.end());
  nlohmann::ordered_json dist = nlohmann::ordered_json::object();
  if (!seps.empty()) {
    auto quantile = [&](double q) { return seps[static_cast<std::size_t>(q * static_cast<double>(seps.size() - 1))]; };
    dist["min"] = seps.front();
    dist["p10"] = quantile(0.1);
    dist["median"] = quantile(0.5);
    dist["max"] = seps.back();
    dist["mean"] = std::accumulate(seps.begin(), seps.end(), 0.0) / static_cast<double>(seps.size());
  }
  j["min_separation_m"] = dist;
  j["mean_planning_time_s"] = plan_time / static_cast<double>(report.runs.size());
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& r : report.runs) {
    runs.push_back({{"seed", r.seed},
                    {"status", std::string(to_string(r.status))},
                    {"min_separation_m", std::isfinite(r.min_separation) ? nlohmann::ordered_json(r.min_separation)
                                                                         : nlohmann::ordered_json(nullptr)},
                    {"replans", r.replans},
                    {"planning_time_s", r.planning_time_s}});
  }
  j["per_seed"] = runs;
  return j.dump(2) + "\n";
}

}  // namespace vorrt
