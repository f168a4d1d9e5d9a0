#include "revigis/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace revigis::svg {

namespace {

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(double width, double height) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  return s.str();
}

std::string gray(double t) {
  const int v = static_cast<int>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
  std::ostringstream s;
  s << "rgb(" << v << ',' << v << ',' << v << ')';
  return s.str();
}

}  // namespace

std::string render_flood(const flood::FloodScene& scene) {
  constexpr double cell = 120.0, box = 80.0, margin = 20.0;
  const std::size_t n = scene.parcels.size();
  const auto cols = static_cast<std::size_t>(std::max(1.0, std::ceil(std::sqrt(static_cast<double>(n)))));
  const std::size_t rows = n == 0 ? 1 : (n + cols - 1) / cols;
  const double span = scene.global_bounds.width() ? static_cast<double>(*scene.global_bounds.width()) : 0.0;

  std::map<std::string, std::pair<double, double>> centre;
  std::ostringstream s;
  s << header(2 * margin + cols * cell, 2 * margin + rows * cell);
  s << "<defs><marker id=\"arrow\" markerWidth=\"10\" markerHeight=\"10\" refX=\"9\" refY=\"5\" "
       "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#1f4e79\"/></marker></defs>\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = scene.parcels[i];
    const double x = margin + static_cast<double>(i % cols) * cell;
    const double y = margin + static_cast<double>(i / cols) * cell;
    centre[p.id] = {x + box / 2, y + box / 2};
    const double w = p.current.width() ? static_cast<double>(*p.current.width()) : span;
    const double shade = span > 0 ? 0.25 + 0.7 * (w / span) : 0.95;
    s << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << box << "\" height=\"" << box << "\" fill=\""
      << gray(shade) << "\" stroke=\"black\"" << (p.retracted ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    s << "<text x=\"" << x + 4 << "\" y=\"" << y + 16 << "\" font-size=\"12\">" << escape(p.id) << "</text>\n";
    if (p.current.bounded())
      s << "<text x=\"" << x + 4 << "\" y=\"" << y + box - 6 << "\" font-size=\"11\">[" << *p.current.lo << ", "
        << *p.current.hi << "]</text>\n";
  }
  for (const auto& f : scene.flows) {
    auto [x1, y1] = centre.at(f.from);
    auto [x2, y2] = centre.at(f.to);
    const double len = std::hypot(x2 - x1, y2 - y1);
    if (len == 0) continue;
    const double ux = (x2 - x1) / len, uy = (y2 - y1) / len;
    const double off = box / 2;
    s << "<line x1=\"" << x1 + ux * off << "\" y1=\"" << y1 + uy * off << "\" x2=\"" << x2 - ux * off << "\" y2=\""
      << y2 - uy * off << "\" stroke=\"#1f4e79\" stroke-width=\"2\" marker-end=\"url(#arrow)\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string render_fusion(const fusion::FusionResult& result) {
  const auto& scene = result.fused;
  double minx = std::numeric_limits<double>::infinity(), miny = minx;
  double maxx = -minx, maxy = -minx;
  auto extend = [&](const fusion::Point& p) {
    minx = std::min(minx, p.x);
    miny = std::min(miny, p.y);
    maxx = std::max(maxx, p.x);
    maxy = std::max(maxy, p.y);
  };
  for (const auto* layer : {&scene.roads, &scene.streams})
    for (const auto& f : *layer)
      for (const auto& p : f.polyline) extend(p);
  for (const auto& b : scene.bridges) extend(b.location);
  for (const auto& a : result.log) extend(a.location);
  if (!std::isfinite(minx)) minx = miny = 0, maxx = maxy = 1;

  constexpr double size = 600.0, margin = 20.0;
  const double extent = std::max({maxx - minx, maxy - miny, 1e-9});
  const double k = (size - 2 * margin) / extent;
  auto X = [&](double x) { return margin + (x - minx) * k; };
  auto Y = [&](double y) { return size - margin - (y - miny) * k; };  // y up

  std::ostringstream s;
  s << header(size, size);
  auto polyline = [&](const fusion::LineFeature& f, const char* style) {
    s << "<polyline fill=\"none\" " << style << " points=\"";
    for (const auto& p : f.polyline) s << X(p.x) << ',' << Y(p.y) << ' ';
    s << "\"><title>" << escape(f.id) << "</title></polyline>\n";
  };
  for (const auto& r : scene.roads) polyline(r, "stroke=\"#555\" stroke-width=\"3\"");
  for (const auto& st : scene.streams) polyline(st, "stroke=\"#2a7fd4\" stroke-width=\"2\" stroke-dasharray=\"8,3,2,3\"");
  for (const auto& b : scene.bridges)
    s << "<circle cx=\"" << X(b.location.x) << "\" cy=\"" << Y(b.location.y) << "\" r=\"5\" "
      << (b.inferred ? "fill=\"white\" stroke=\"#c06000\" stroke-width=\"2\"" : "fill=\"#c06000\"") << "><title>"
      << escape(b.id) << "</title></circle>\n";
  for (const auto& a : result.log)
    if (a.kind == fusion::FusionAction::Kind::dropped_bridge) {
      const double x = X(a.location.x), y = Y(a.location.y);
      s << "<path d=\"M" << x - 5 << ',' << y - 5 << " L" << x + 5 << ',' << y + 5 << " M" << x - 5 << ',' << y + 5
        << " L" << x + 5 << ',' << y - 5 << "\" stroke=\"red\" stroke-width=\"2\"/>\n";
    }
  for (const auto& r : result.unresolved)
    if (r.location)
      s << "<circle cx=\"" << X(r.location->x) << "\" cy=\"" << Y(r.location->y)
        << "\" r=\"10\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
  s << "</svg>\n";
  return s.str();
}

std::string render_change(const translation::ChangeMap& map) {
  constexpr double cell = 24.0;
  std::ostringstream s;
  s << header(map.width * cell, map.height * cell);
  s << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
       "patternTransform=\"rotate(45)\"><rect width=\"6\" height=\"6\" fill=\"white\"/>"
       "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#b00\" stroke-width=\"2\"/></pattern></defs>\n";
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    const auto& c = map.cells[i];
    const char* fill = c.conflict() ? "url(#hatch)" : c.changed ? "#e08a1e" : "#e8f0e0";
    s << "<rect x=\"" << static_cast<double>(i % map.width) * cell << "\" y=\""
      << static_cast<double>(i / map.width) * cell << "\" width=\"" << cell << "\" height=\"" << cell
      << "\" fill=\"" << fill << "\" stroke=\"#999\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string render_numeric(const translation::NumericGrid& grid) {
  constexpr double cell = 24.0;
  double top = 0.0;
  for (double v : grid.values) top = std::max(top, std::abs(v));
  std::ostringstream s;
  s << header(grid.width * cell, grid.height * cell);
  for (std::size_t i = 0; i < grid.values.size(); ++i)
    s << "<rect x=\"" << static_cast<double>(i % grid.width) * cell << "\" y=\""
      << static_cast<double>(i / grid.width) * cell << "\" width=\"" << cell << "\" height=\"" << cell
      << "\" fill=\"" << gray(top > 0 ? 1.0 - std::abs(grid.values[i]) / top : 1.0) << "\"/>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace revigis::svg
