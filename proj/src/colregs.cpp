#include "vorrt/colregs.hpp"

#include <algorithm>
#include <cmath>

#include "vorrt/errors.hpp"

namespace vorrt {

std::string_view to_string(EncounterKind kind) {
  switch (kind) {
    case EncounterKind::HeadOn: return "HeadOn";
    case EncounterKind::CrossingGiveWay: return "CrossingGiveWay";
    case EncounterKind::CrossingStandOn: return "CrossingStandOn";
    case EncounterKind::Overtaking: return "Overtaking";
    case EncounterKind::BeingOvertaken: return "BeingOvertaken";
    case EncounterKind::NoRisk: return "NoRisk";
  }
  return "?";
}

std::string_view to_string(RequiredAction action) {
  switch (action) {
    case RequiredAction::TurnStarboard: return "TurnStarboard";
    case RequiredAction::StandOn: return "StandOn";
    case RequiredAction::OvertakeEitherSide: return "OvertakeEitherSide";
    case RequiredAction::Unconstrained: return "Unconstrained";
  }
  return "?";
}

bool risk_of_collision(const VesselState& ownship, const VesselState& target, double mtd) {
  if (distance(ownship.position, target.position) >= mtd) return false;
  const Vec2 v_own = ownship.velocity();
  const Vec2 v_tgt = target.velocity();
  // Past closest approach the pair is opening and no longer at risk.
  if (time_to_cpa(ownship.position, target.position, v_own, v_tgt) <= 0.0) return false;
  return distance_at_cpa(ownship.position, target.position, v_own, v_tgt) < mtd;
}

namespace {

bool in_stern_sector(double rel_bearing) {
  return rel_bearing > kSternSectorStart && rel_bearing < kSternSectorEnd;
}

// Head-on wedge: [0, tol) on the starboard bow, (360 - tol, 360) on the port bow.
bool in_bow_wedge(double rel_bearing, double tol) {
  return rel_bearing < tol || rel_bearing > 360.0 - tol;
}

}  // namespace

Encounter classify_encounter(const VesselState& ownship, const VesselState& target,
                             const ColregsParams& params) {
  if (ownship.position == target.position) {
    throw DegenerateGeometry("cannot classify encounter between coincident vessels");
  }
  Encounter e{EncounterKind::NoRisk, target.id};
  if (!risk_of_collision(ownship, target, params.mtd)) return e;

  const double tol = params.head_on_tolerance_deg;
  const double target_seen_from_own = relative_bearing(ownship, target.position);
  const double own_seen_from_target = relative_bearing(target, ownship.position);

  if (in_stern_sector(own_seen_from_target) && ownship.speed > target.speed) {
    e.kind = EncounterKind::Overtaking;
  } else if (in_stern_sector(target_seen_from_own) && target.speed > ownship.speed) {
    e.kind = EncounterKind::BeingOvertaken;
  } else if (std::abs(heading_change_deg(ownship.heading_deg, target.heading_deg)) >= 180.0 - tol &&
             in_bow_wedge(target_seen_from_own, tol) && in_bow_wedge(own_seen_from_target, tol)) {
    e.kind = EncounterKind::HeadOn;
  } else if (target_seen_from_own >= tol && target_seen_from_own <= kSternSectorStart) {
    e.kind = EncounterKind::CrossingGiveWay;
  } else if (target_seen_from_own >= kSternSectorEnd && target_seen_from_own <= 360.0 - tol) {
    e.kind = EncounterKind::CrossingStandOn;
  } else if (target_seen_from_own < tol) {
    // dead ahead to starboard on a non-reciprocal course
    e.kind = EncounterKind::CrossingGiveWay;
  } else {
    // dead ahead to port, or astern without closing speed
    e.kind = EncounterKind::CrossingStandOn;
  }
  return e;
}

Encounter classify_encounter(const VesselState& ownship, const VesselState& target, double mtd) {
  ColregsParams p;
  p.mtd = mtd;
  return classify_encounter(ownship, target, p);
}

RequiredAction required_action(EncounterKind kind) {
  switch (kind) {
    case EncounterKind::HeadOn:
    case EncounterKind::CrossingGiveWay: return RequiredAction::TurnStarboard;
    case EncounterKind::CrossingStandOn:
    case EncounterKind::BeingOvertaken: return RequiredAction::StandOn;
    case EncounterKind::Overtaking: return RequiredAction::OvertakeEitherSide;
    case EncounterKind::NoRisk: return RequiredAction::Unconstrained;
  }
  return RequiredAction::Unconstrained;
}

bool crosses_ahead(const VesselState& ownship, const VesselState& target, double corridor) {
  // Target-fixed frame: does the ownship's relative track cut the target's
  // heading line in front of its bow?
  const Vec2 bow = heading_unit(target.heading_deg);
  const Vec2 rel = ownship.position - target.position;
  const Vec2 rel_v = ownship.velocity() - target.velocity();
  const double closing = bow.cross(rel_v);
  if (closing == 0.0) return false;
  const double t = -bow.cross(rel) / closing;
  if (t <= 0.0) return false;
  const double ahead = bow.dot(rel + rel_v * t);
  return ahead > 0.0 && ahead < corridor;
}

bool is_compliant_motion(const VesselState& before, const VesselState& after, const VesselState& target,
                         const Encounter& encounter, const ColregsParams& params) {
  switch (required_action(encounter)) {
    case RequiredAction::TurnStarboard: {
      if (heading_change_deg(before.heading_deg, after.heading_deg) < 0.0) return false;
      if (encounter.kind == EncounterKind::CrossingGiveWay && crosses_ahead(after, target, params.mtd)) {
        return false;
      }
      return true;
    }
    case RequiredAction::StandOn:
      return std::abs(heading_change_deg(before.heading_deg, after.heading_deg)) <=
                 params.stand_on_heading_tol_deg &&
             std::abs(after.speed - before.speed) <= params.stand_on_speed_tol;
    case RequiredAction::OvertakeEitherSide:
    case RequiredAction::Unconstrained: return true;
  }
  return true;
}

const Encounter* EncounterLatch::find(const std::string& target_id) const {
  auto it = std::find_if(active_.begin(), active_.end(),
                         [&](const Encounter& e) { return e.target_id == target_id; });
  return it == active_.end() ? nullptr : &*it;
}

void EncounterLatch::update(const VesselState& ownship, const std::vector<VesselState>& targets,
                            const ColregsParams& params) {
  std::vector<Encounter> next;
  for (const auto& t : targets) {
    if (!risk_of_collision(ownship, t, params.mtd)) continue;
    if (const Encounter* held = find(t.id)) {
      next.push_back(*held);
    } else if (ownship.position != t.position) {
      next.push_back(classify_encounter(ownship, t, params));
    }
  }
  active_ = std::move(next);
}

}  // namespace vorrt
