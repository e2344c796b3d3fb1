#include "vorrt/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "vorrt/errors.hpp"

namespace vorrt {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(sep, start);
    out.push_back(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

double parse_double(std::string_view field, std::size_t line) {
  const std::string text(field);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* colour(std::size_t i) {
  static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[i % (sizeof palette / sizeof palette[0])];
}

// 1, 2 or 5 times a power of ten, no larger than `limit`.
double nice_length(double limit) {
  const double p = std::pow(10.0, std::floor(std::log10(limit)));
  for (double m : {5.0, 2.0, 1.0}) {
    if (m * p <= limit) return m * p;
  }
  return p;
}

std::string length_label(double m) {
  char buf[32];
  if (m >= 1000.0) {
    std::snprintf(buf, sizeof buf, "%g km", m / 1000.0);
  } else {
    std::snprintf(buf, sizeof buf, "%g m", m);
  }
  return buf;
}

struct Frame {
  double left, top, width, height;
};

}  // namespace

TickTable parse_tick_csv(std::string_view csv) {
  TickTable t;
  std::vector<std::string_view> lines;
  for (auto l : split(csv, '\n')) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    if (!l.empty()) lines.push_back(l);
  }
  if (lines.empty()) throw ParseError("tick table is empty");
  const auto header = split(lines[0], ',');
  if (header.empty() || header[0] != "time_s") throw ParseError("line 1: first column must be time_s");

  std::size_t col = 1;
  while (col + 3 < header.size() && ends_with(header[col], "_x_m")) {
    const std::string_view xh = header[col];
    const std::string id(xh.substr(0, xh.size() - 4));
    if (header[col + 1] != id + "_y_m" || header[col + 2] != id + "_heading_deg" ||
        header[col + 3] != id + "_speed_mps") {
      throw ParseError("line 1: incomplete column group for vessel '" + id + "'");
    }
    t.vessel_ids.push_back(id);
    col += 4;
  }
  if (t.vessel_ids.empty()) throw ParseError("line 1: no vessel columns");
  const std::size_t pairs = header.size() - col;
  if (pairs != t.vessel_ids.size() - 1) throw ParseError("line 1: expected one distance column per target");
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::string want = "dist_" + t.vessel_ids[0] + "_" + t.vessel_ids[i + 1] + "_m";
    if (header[col + i] != want) throw ParseError("line 1: expected column " + want);
  }

  t.x.assign(t.vessel_ids.size(), {});
  t.y.assign(t.vessel_ids.size(), {});
  t.dist.assign(pairs, {});
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto f = split(lines[r], ',');
    if (f.size() != header.size()) {
      throw ParseError("line " + std::to_string(r + 1) + ": expected " + std::to_string(header.size()) + " fields");
    }
    t.time.push_back(parse_double(f[0], r + 1));
    for (std::size_t v = 0; v < t.vessel_ids.size(); ++v) {
      t.x[v].push_back(parse_double(f[1 + 4 * v], r + 1));
      t.y[v].push_back(parse_double(f[2 + 4 * v], r + 1));
      parse_double(f[3 + 4 * v], r + 1);
      parse_double(f[4 + 4 * v], r + 1);
    }
    for (std::size_t p = 0; p < pairs; ++p) t.dist[p].push_back(parse_double(f[col + p], r + 1));
  }
  if (t.time.empty()) throw ParseError("tick table has no rows");
  return t;
}

std::string render_svg(const TickTable& t) {
  constexpr double kWidth = 960.0;
  constexpr double kHeight = 720.0;
  const bool pairs = !t.dist.empty();
  const Frame map{60.0, 40.0, 860.0, pairs ? 400.0 : 620.0};
  const Frame plot{60.0, 500.0, 860.0, 180.0};

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
    << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight) << "\" fill=\"white\"/>\n";

  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x, min_y = min_x, max_y = -min_x;
  for (std::size_t v = 0; v < t.vessel_ids.size(); ++v) {
    for (std::size_t k = 0; k < t.time.size(); ++k) {
      min_x = std::min(min_x, t.x[v][k]);
      max_x = std::max(max_x, t.x[v][k]);
      min_y = std::min(min_y, t.y[v][k]);
      max_y = std::max(max_y, t.y[v][k]);
    }
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
  const double scale = std::min(map.width / std::max(max_x - min_x, span * 1e-3),
                                map.height / std::max(max_y - min_y, span * 1e-3)) * 0.92;
  const double cx = 0.5 * (min_x + max_x);
  const double cy = 0.5 * (min_y + max_y);
  auto sx = [&](double x) { return map.left + 0.5 * map.width + (x - cx) * scale; };
  auto sy = [&](double y) { return map.top + 0.5 * map.height - (y - cy) * scale; };

  o << "<rect class=\"frame\" x=\"" << num(map.left) << "\" y=\"" << num(map.top) << "\" width=\"" << num(map.width)
    << "\" height=\"" << num(map.height) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (std::size_t v = 0; v < t.vessel_ids.size(); ++v) {
    const char* c = colour(v);
    o << "<polyline class=\"track\" data-id=\"" << t.vessel_ids[v] << "\" fill=\"none\" stroke=\"" << c
      << "\" stroke-width=\"" << (v == 0 ? "2" : "1.5") << "\" points=\"";
    for (std::size_t k = 0; k < t.time.size(); ++k) {
      if (k) o << ' ';
      o << num(sx(t.x[v][k])) << ',' << num(sy(t.y[v][k]));
    }
    o << "\"/>\n";
    const double x0 = sx(t.x[v].front()), y0 = sy(t.y[v].front());
    const double x1 = sx(t.x[v].back()), y1 = sy(t.y[v].back());
    o << "<rect class=\"start\" data-id=\"" << t.vessel_ids[v] << "\" x=\"" << num(x0 - 4) << "\" y=\"" << num(y0 - 4)
      << "\" width=\"8\" height=\"8\" fill=\"black\"/>\n";
    o << "<circle class=\"end\" data-id=\"" << t.vessel_ids[v] << "\" cx=\"" << num(x1) << "\" cy=\"" << num(y1)
      << "\" r=\"4\" fill=\"" << c << "\"/>\n";
    o << "<text x=\"" << num(x0 + 6) << "\" y=\"" << num(y0 - 6) << "\" fill=\"" << c << "\">" << t.vessel_ids[v]
      << "</text>\n";
  }

  const double bar_m = nice_length(0.25 * map.width / scale);
  const double bar_px = bar_m * scale;
  const double bx = map.left + 12.0, by = map.top + map.height - 14.0;
  o << "<g class=\"scale\"><line x1=\"" << num(bx) << "\" y1=\"" << num(by) << "\" x2=\"" << num(bx + bar_px)
    << "\" y2=\"" << num(by) << "\" stroke=\"black\" stroke-width=\"2\"/><text x=\"" << num(bx) << "\" y=\""
    << num(by - 5) << "\">" << length_label(bar_m) << "</text></g>\n";
  o << "<text x=\"" << num(map.left + map.width - 12) << "\" y=\"" << num(map.top + 16)
    << "\" text-anchor=\"end\">N &#8593;</text>\n";

  if (pairs) {
    double d_max = 0.0;
    for (const auto& d : t.dist) d_max = std::max(d_max, *std::max_element(d.begin(), d.end()));
    d_max = std::max(d_max, 1.0);
    const double t0 = t.time.front();
    const double t_span = std::max(t.time.back() - t0, 1.0);
    auto px = [&](double time) { return plot.left + (time - t0) / t_span * plot.width; };
    auto py = [&](double d) { return plot.top + plot.height - d / d_max * plot.height; };
    o << "<rect class=\"frame\" x=\"" << num(plot.left) << "\" y=\"" << num(plot.top) << "\" width=\""
      << num(plot.width) << "\" height=\"" << num(plot.height) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    o << "<text x=\"" << num(plot.left) << "\" y=\"" << num(plot.top - 8) << "\">distance to ownship (m), max "
      << num(d_max) << "</text>\n";
    o << "<text x=\"" << num(plot.left + plot.width) << "\" y=\"" << num(plot.top + plot.height + 16)
      << "\" text-anchor=\"end\">time (s), " << num(t0) << " to " << num(t.time.back()) << "</text>\n";
    for (std::size_t p = 0; p < t.dist.size(); ++p) {
      const char* c = colour(p + 1);
      o << "<polyline class=\"distance\" data-id=\"" << t.vessel_ids[p + 1] << "\" fill=\"none\" stroke=\"" << c
        << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < t.time.size(); ++k) {
        if (k) o << ' ';
        o << num(px(t.time[k])) << ',' << num(py(t.dist[p][k]));
      }
      o << "\"/>\n";
      const auto it = std::min_element(t.dist[p].begin(), t.dist[p].end());
      const std::size_t k = static_cast<std::size_t>(it - t.dist[p].begin());
      o << "<circle class=\"cpa\" data-id=\"" << t.vessel_ids[p + 1] << "\" cx=\"" << num(px(t.time[k])) << "\" cy=\""
        << num(py(*it)) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
      o << "<text class=\"cpa\" x=\"" << num(px(t.time[k]) + 5) << "\" y=\"" << num(py(*it) - 5) << "\" fill=\"" << c
        << "\">" << t.vessel_ids[p + 1] << " CPA " << num(*it) << " m at " << num(t.time[k]) << " s</text>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace vorrt
