#pragma once

// Static SVG plots of an episode, drawn from its tick CSV.

#include <string>
#include <string_view>
#include <vector>

namespace vorrt {

/// Tick CSV read back into columns.
struct TickTable {
  std::vector<std::string> vessel_ids;  // ownship first
  std::vector<double> time;
  std::vector<std::vector<double>> x, y;  // [vessel][tick]
  std::vector<std::vector<double>> dist;  // [pair][tick], ownship to vessel_ids[pair + 1]
};

/// Throws ParseError when the header or a row does not follow the tick CSV
/// layout.
TickTable parse_tick_csv(std::string_view csv);

/// Fixed 960 x 720 canvas. Top panel: one polyline per vessel (class
/// "track"), a square at each start and a circle at each end, and a scale
/// bar. Bottom panel, only when there are targets: distance to each target
/// over time with its minimum marked.
std::string render_svg(const TickTable& table);
inline std::string render_svg(std::string_view csv) { return render_svg(parse_tick_csv(csv)); }

}  // namespace vorrt
