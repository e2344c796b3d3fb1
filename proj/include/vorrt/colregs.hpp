#pragma once

// Rules 13-17 for power-driven vessels: risk of collision, encounter
// classification, and the motion filter the planner applies while an
// encounter is active.

#include <string>
#include <string_view>
#include <vector>

#include "vorrt/world.hpp"

namespace vorrt {

enum class EncounterKind { HeadOn, CrossingGiveWay, CrossingStandOn, Overtaking, BeingOvertaken, NoRisk };

enum class RequiredAction { TurnStarboard, StandOn, OvertakeEitherSide, Unconstrained };

std::string_view to_string(EncounterKind kind);
std::string_view to_string(RequiredAction action);

struct Encounter {
  EncounterKind kind = EncounterKind::NoRisk;
  std::string target_id;

  bool operator==(const Encounter&) const = default;
};

struct ColregsParams {
  double mtd = 5000.0;                    // m, risk gate
  double head_on_tolerance_deg = 6.0;     // each side of the bow
  double stand_on_heading_tol_deg = 1.0;  // "keep her course"
  double stand_on_speed_tol = 0.1;        // m/s, "and speed"
};

// Relative-bearing sectors. The stern sector starts 22.5 degrees abaft the beam.
inline constexpr double kSternSectorStart = 112.5;
inline constexpr double kSternSectorEnd = 247.5;

/// Current separation below mtd, the pair still closing (closest approach in
/// the future), and closest approach below mtd.
bool risk_of_collision(const VesselState& ownship, const VesselState& target, double mtd);

/// Classifies the pair from the ownship's point of view. Priority order is
/// overtaking, being overtaken, head-on, then crossing by the side the target
/// bears on. Throws DegenerateGeometry for coincident positions.
Encounter classify_encounter(const VesselState& ownship, const VesselState& target,
                             const ColregsParams& params);
Encounter classify_encounter(const VesselState& ownship, const VesselState& target, double mtd);

RequiredAction required_action(EncounterKind kind);
inline RequiredAction required_action(const Encounter& e) { return required_action(e.kind); }

/// Whether the ownship's move from `before` to `after` honours the action the
/// encounter demands. `target` is the target's state at the same instant as
/// `after`.
///
/// TurnStarboard: the heading change is zero or clockwise. For a crossing
/// give-way encounter the ownship must also not cross ahead of the target
/// (see crosses_ahead, with mtd as the corridor).
/// StandOn: heading and speed unchanged within the stand-on tolerances.
/// OvertakeEitherSide and Unconstrained: always true.
bool is_compliant_motion(const VesselState& before, const VesselState& after, const VesselState& target,
                         const Encounter& encounter, const ColregsParams& params);

/// True iff, holding both velocities, the ownship's track relative to the
/// target will cut the target's heading line ahead of its bow and less than
/// `corridor` meters in front of it.
bool crosses_ahead(const VesselState& ownship, const VesselState& target, double corridor);

/// Encounters currently in force, one per target at risk.
///
/// An encounter is classified when risk first registers and then kept
/// unchanged until risk clears, so the rule does not flip while relative
/// bearing rotates during a manoeuvre.
class EncounterLatch {
 public:
  EncounterLatch() = default;
  explicit EncounterLatch(std::vector<Encounter> active) : active_(std::move(active)) {}

  /// Drops cleared encounters and classifies newly risky targets.
  void update(const VesselState& ownship, const std::vector<VesselState>& targets,
              const ColregsParams& params);

  const std::vector<Encounter>& active() const { return active_; }
  const Encounter* find(const std::string& target_id) const;
  bool empty() const { return active_.empty(); }

  bool operator==(const EncounterLatch&) const = default;

 private:
  std::vector<Encounter> active_;
};

}  // namespace vorrt
