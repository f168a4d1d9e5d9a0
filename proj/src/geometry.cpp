#include "revigis/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace revigis::geometry {

namespace {

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

constexpr double kParamEps = 1e-12;

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double point_segment_distance(Point p, Point s0, Point s1) {
  const double dx = s1.x - s0.x;
  const double dy = s1.y - s0.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return distance(p, s0);
  double t = ((p.x - s0.x) * dx + (p.y - s0.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, {s0.x + t * dx, s0.y + t * dy});
}

SegmentHit intersect_segments(Point a0, Point a1, Point b0, Point b1) {
  const double d1x = a1.x - a0.x, d1y = a1.y - a0.y;
  const double d2x = b1.x - b0.x, d2y = b1.y - b0.y;
  const double ex = b0.x - a0.x, ey = b0.y - a0.y;
  const double len1 = std::hypot(d1x, d1y);
  const double len2 = std::hypot(d2x, d2y);
  const double denom = cross(d1x, d1y, d2x, d2y);

  SegmentHit hit;
  if (std::abs(denom) > kParamEps * len1 * len2) {
    const double t = cross(ex, ey, d2x, d2y) / denom;
    const double u = cross(ex, ey, d1x, d1y) / denom;
    if (t < -kParamEps || t > 1 + kParamEps || u < -kParamEps || u > 1 + kParamEps) return hit;
    hit.kind = SegmentHit::Kind::point;
    // Exact endpoints when the crossing sits on a vertex.
    if (t <= 0) hit.at = a0;
    else if (t >= 1) hit.at = a1;
    else if (u <= 0) hit.at = b0;
    else if (u >= 1) hit.at = b1;
    else hit.at = {a0.x + t * d1x, a0.y + t * d1y};
    return hit;
  }

  // Parallel: only collinear segments can meet.
  if (std::abs(cross(ex, ey, d1x, d1y)) > kParamEps * len1 * std::max(1.0, std::hypot(ex, ey)))
    return hit;
  const double len1sq = d1x * d1x + d1y * d1y;
  auto param = [&](Point p) { return ((p.x - a0.x) * d1x + (p.y - a0.y) * d1y) / len1sq; };
  double s0 = param(b0), s1 = param(b1);
  if (s0 > s1) std::swap(s0, s1);
  const double lo = std::max(0.0, s0);
  const double hi = std::min(1.0, s1);
  if (lo > hi + kParamEps) return hit;
  const Point from{a0.x + lo * d1x, a0.y + lo * d1y};
  const Point to{a0.x + hi * d1x, a0.y + hi * d1y};
  if ((hi - lo) * len1 > kParamEps * std::max(1.0, len1)) {
    hit.kind = SegmentHit::Kind::overlap;
    hit.at = from;
    hit.until = to;
  } else {
    hit.kind = SegmentHit::Kind::point;
    hit.at = from;
  }
  return hit;
}

double polyline_length(std::span<const Point> line) {
  double total = 0.0;
  for (std::size_t i = 1; i < line.size(); ++i) total += distance(line[i - 1], line[i]);
  return total;
}

std::vector<Point> resample(std::span<const Point> line, std::size_t samples) {
  if (line.empty()) throw std::invalid_argument("cannot resample an empty polyline");
  if (samples < 2 || line.size() < 2) return std::vector<Point>(std::max<std::size_t>(samples, 1), line.front());
  const double total = polyline_length(line);
  std::vector<Point> out;
  out.reserve(samples);
  out.push_back(line.front());
  std::size_t seg = 0;
  double walked = 0.0;  // arc length at the start of `seg`
  for (std::size_t k = 1; k + 1 < samples; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(samples - 1);
    while (seg + 1 < line.size() - 1 && walked + distance(line[seg], line[seg + 1]) < target) {
      walked += distance(line[seg], line[seg + 1]);
      ++seg;
    }
    const double len = distance(line[seg], line[seg + 1]);
    const double t = len > 0 ? std::clamp((target - walked) / len, 0.0, 1.0) : 0.0;
    out.push_back({line[seg].x + t * (line[seg + 1].x - line[seg].x),
                   line[seg].y + t * (line[seg + 1].y - line[seg].y)});
  }
  out.push_back(line.back());
  return out;
}

double discrete_frechet(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("discrete Frechet of an empty sequence");
  const std::size_t m = b.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = distance(a[i], b[j]);
      if (i == 0 && j == 0) cur[j] = d;
      else if (i == 0) cur[j] = std::max(cur[j - 1], d);
      else if (j == 0) cur[j] = std::max(prev[j], d);
      else cur[j] = std::max(std::min({prev[j], prev[j - 1], cur[j - 1]}), d);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

}  // namespace revigis::geometry
