#include "vorrt/world.hpp"

#include <set>

#include "vorrt/errors.hpp"

namespace vorrt {

const VesselState* WorldState::find_target(const std::string& id) const {
  for (const auto& t : targets) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

namespace {

void check_vessel(const VesselState& v) {
  if (!(v.speed >= 0.0)) throw ValidationError("vessel '" + v.id + "' has negative speed");
  if (!(v.radius > 0.0)) throw ValidationError("vessel '" + v.id + "' must have positive radius");
  if (!std::isfinite(v.heading_deg)) throw ValidationError("vessel '" + v.id + "' heading is not finite");
}

}  // namespace

void validate_world(const WorldState& world) {
  if (!(world.time >= 0.0)) throw ValidationError("world time must be non-negative");
  std::set<std::string> ids;
  check_vessel(world.ownship);
  ids.insert(world.ownship.id);
  for (const auto& t : world.targets) {
    check_vessel(t);
    if (!ids.insert(t.id).second) throw ValidationError("duplicate vessel id '" + t.id + "'");
  }
}

}  // namespace vorrt
