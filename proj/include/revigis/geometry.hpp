#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace revigis::geometry {

/// Planar coordinates in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);
double point_segment_distance(Point p, Point s0, Point s1);

struct SegmentHit {
  enum class Kind { none, point, overlap };
  Kind kind = Kind::none;
  Point at;       // crossing point, or start of the shared piece
  Point until;    // end of the shared piece for overlaps
};

/// Closed-segment intersection. Collinear segments sharing a piece of positive
/// length are reported as an overlap, not as a point.
SegmentHit intersect_segments(Point a0, Point a1, Point b0, Point b1);

double polyline_length(std::span<const Point> line);

/// `samples` points evenly spaced by arc length, endpoints included.
std::vector<Point> resample(std::span<const Point> line, std::size_t samples);

/// Discrete Frechet distance between two vertex sequences.
double discrete_frechet(std::span<const Point> a, std::span<const Point> b);

}  // namespace revigis::geometry
