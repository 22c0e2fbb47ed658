#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "confopt/graph.hpp"

namespace confopt {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
  Point a;
  Point b;
};

/// A plane straight-line graph: segment t joins points[segments[t].first]
/// and points[segments[t].second].
struct Instance {
  std::string id;
  std::vector<Point> points;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> segments;

  std::size_t segment_count() const { return segments.size(); }
  Segment segment(std::size_t t) const {
    return {points[segments[t].first], points[segments[t].second]};
  }

  /// Throws std::invalid_argument on out-of-range indices or zero-length segments.
  void check() const;
};

/// Sign of (q - p) x (r - p), exact for any 64-bit coordinates whose
/// differences fit in 63 bits (in particular |coordinate| <= 2^62).
int orientation(Point p, Point q, Point r);

/// True iff the segments share a point other than a single common endpoint.
/// Interior crossings, T-touches and collinear overlaps of positive length
/// all count; identical segments cross.
bool segments_cross(const Segment& s1, const Segment& s2);

/// Angle of the supporting line folded into [-pi/2, pi/2). Only used as a
/// sort key.
double segment_angle(const Segment& s);

enum class ConflictGraphMethod { grid, naive };

/// Intersection conflict graph: one vertex per segment, one edge per crossing
/// pair. `threads` = 0 picks the default worker count.
Graph build_conflict_graph(const Instance& inst,
                           ConflictGraphMethod method = ConflictGraphMethod::grid,
                           unsigned threads = 0);

/// Worker count from CONFOPT_THREADS, falling back to 1.
unsigned default_thread_count();

}  // namespace confopt
