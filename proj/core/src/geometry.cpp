#include "confopt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace confopt {

namespace {
__extension__ typedef __int128 int128;
}

void Instance::check() const {
  for (std::size_t t = 0; t < segments.size(); ++t) {
    const auto [i, j] = segments[t];
    if (i >= points.size() || j >= points.size()) {
      throw std::invalid_argument("segment " + std::to_string(t) +
                                  " references a point index out of range");
    }
    if (points[i] == points[j]) {
      throw std::invalid_argument("segment " + std::to_string(t) + " has zero length");
    }
  }
}

int orientation(Point p, Point q, Point r) {
  using wide = int128;
  const wide lhs = static_cast<wide>(q.x - p.x) * static_cast<wide>(r.y - p.y);
  const wide rhs = static_cast<wide>(q.y - p.y) * static_cast<wide>(r.x - p.x);
  return (lhs > rhs) - (lhs < rhs);
}

bool segments_cross(const Segment& s1, const Segment& s2) {
  const int o1 = orientation(s1.a, s1.b, s2.a);
  const int o2 = orientation(s1.a, s1.b, s2.b);
  const int o3 = orientation(s2.a, s2.b, s1.a);
  const int o4 = orientation(s2.a, s2.b, s1.b);

  if (o1 == 0 && o2 == 0) {
    // Same supporting line. Compare along the axis where s1 is not constant.
    const bool use_x = s1.a.x != s1.b.x;
    auto coord = [use_x](Point p) { return use_x ? p.x : p.y; };
    const auto lo1 = std::min(coord(s1.a), coord(s1.b));
    const auto hi1 = std::max(coord(s1.a), coord(s1.b));
    const auto lo2 = std::min(coord(s2.a), coord(s2.b));
    const auto hi2 = std::max(coord(s2.a), coord(s2.b));
    // a single-point overlap is necessarily an endpoint of both
    return std::max(lo1, lo2) < std::min(hi1, hi2);
  }

  if (o1 * o2 > 0 || o3 * o4 > 0) return false;

  // The lines are distinct, so the intersection is one point. It is a shared
  // endpoint exactly when the segments share an endpoint.
  const bool shared = s1.a == s2.a || s1.a == s2.b || s1.b == s2.a || s1.b == s2.b;
  return !shared;
}

double segment_angle(const Segment& s) {
  const double dx = static_cast<double>(s.b.x - s.a.x);
  const double dy = static_cast<double>(s.b.y - s.a.y);
  double angle = std::atan2(dy, dx);
  constexpr double half_pi = std::numbers::pi / 2;
  if (angle >= half_pi) angle -= std::numbers::pi;
  if (angle < -half_pi) angle += std::numbers::pi;
  // atan2 rounding can land exactly on pi/2 after the fold
  if (angle >= half_pi) angle = -half_pi;
  return angle;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("CONFOPT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

namespace {

struct Box {
  std::int64_t x0, y0, x1, y1;
};

Box bounding_box(const Segment& s) {
  return {std::min(s.a.x, s.b.x), std::min(s.a.y, s.b.y), std::max(s.a.x, s.b.x),
          std::max(s.a.y, s.b.y)};
}

bool boxes_overlap(const Box& a, const Box& b) {
  return a.x0 <= b.x1 && b.x0 <= a.x1 && a.y0 <= b.y1 && b.y0 <= a.y1;
}

std::vector<Edge> naive_pairs(const std::vector<Segment>& segs, std::size_t begin,
                              std::size_t end) {
  std::vector<Edge> out;
  for (std::size_t i = begin; i < end; ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (segments_cross(segs[i], segs[j])) {
        out.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return out;
}

class UniformGrid {
 public:
  UniformGrid(const std::vector<Box>& boxes) : boxes_(boxes) {
    lo_x_ = hi_x_ = boxes.front().x0;
    lo_y_ = hi_y_ = boxes.front().y0;
    for (const auto& b : boxes) {
      lo_x_ = std::min(lo_x_, b.x0);
      lo_y_ = std::min(lo_y_, b.y0);
      hi_x_ = std::max(hi_x_, b.x1);
      hi_y_ = std::max(hi_y_, b.y1);
    }
    const std::size_t n = boxes.size();
    cells_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(double(n)))));
    // Long segments cover many cells; coarsen until the bucket storage stays linear.
    while (cells_ > 1 && total_coverage() > 64 * n) cells_ /= 2;

    offsets_.assign(cells_ * cells_ + 1, 0);
    for (const auto& b : boxes) for_each_cell(b, [&](std::size_t c) { ++offsets_[c + 1]; });
    for (std::size_t c = 0; c < cells_ * cells_; ++c) offsets_[c + 1] += offsets_[c];
    members_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      for_each_cell(boxes[i], [&](std::size_t c) { members_[fill[c]++] = static_cast<Vertex>(i); });
    }
  }

  std::size_t cell_count() const { return cells_ * cells_; }

  /// Crossing pairs whose box intersection has its lower-left corner in one
  /// of the cells [begin, end); each pair is reported by exactly one cell.
  std::vector<Edge> pairs(const std::vector<Segment>& segs, std::size_t begin,
                          std::size_t end) const {
    std::vector<Edge> out;
    for (std::size_t c = begin; c < end; ++c) {
      const Vertex* first = members_.data() + offsets_[c];
      const Vertex* last = members_.data() + offsets_[c + 1];
      for (const Vertex* p = first; p != last; ++p) {
        const Box& bi = boxes_[*p];
        for (const Vertex* r = p + 1; r != last; ++r) {
          const Box& bj = boxes_[*r];
          if (!boxes_overlap(bi, bj)) continue;
          const std::size_t owner =
              cell_y(std::max(bi.y0, bj.y0)) * cells_ + cell_x(std::max(bi.x0, bj.x0));
          if (owner != c) continue;
          if (segments_cross(segs[*p], segs[*r])) out.emplace_back(*p, *r);
        }
      }
    }
    return out;
  }

 private:
  std::size_t cell_x(std::int64_t x) const { return scale(x - lo_x_, hi_x_ - lo_x_); }
  std::size_t cell_y(std::int64_t y) const { return scale(y - lo_y_, hi_y_ - lo_y_); }

  std::size_t scale(std::int64_t offset, std::int64_t extent) const {
    const auto num = static_cast<int128>(offset) * static_cast<int128>(cells_);
    return static_cast<std::size_t>(num / (static_cast<int128>(extent) + 1));
  }

  template <class F>
  void for_each_cell(const Box& b, F&& f) const {
    const std::size_t x0 = cell_x(b.x0), x1 = cell_x(b.x1);
    const std::size_t y0 = cell_y(b.y0), y1 = cell_y(b.y1);
    for (std::size_t y = y0; y <= y1; ++y) {
      for (std::size_t x = x0; x <= x1; ++x) f(y * cells_ + x);
    }
  }

  std::size_t total_coverage() const {
    std::size_t total = 0;
    for (const auto& b : boxes_) {
      total += (cell_x(b.x1) - cell_x(b.x0) + 1) * (cell_y(b.y1) - cell_y(b.y0) + 1);
    }
    return total;
  }

  const std::vector<Box>& boxes_;
  std::int64_t lo_x_, lo_y_, hi_x_, hi_y_;
  std::size_t cells_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> members_;
};

template <class Work>
std::vector<Edge> run_partitioned(std::size_t items, unsigned threads, Work work) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(items, 1))));
  std::vector<std::vector<Edge>> parts(threads);
  if (threads == 1) {
    parts[0] = work(0, items);
  } else {
    std::vector<std::jthread> pool;
    // interleaved strides balance the triangular naive scan
    const std::size_t chunk = std::max<std::size_t>(1, items / (threads * 8));
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t b = t * chunk; b < items; b += threads * chunk) {
          auto e = work(b, std::min(items, b + chunk));
          parts[t].insert(parts[t].end(), e.begin(), e.end());
        }
      });
    }
  }
  std::vector<Edge> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

}  // namespace

Graph build_conflict_graph(const Instance& inst, ConflictGraphMethod method, unsigned threads) {
  inst.check();
  const std::size_t n = inst.segment_count();
  if (threads == 0) threads = default_thread_count();
  std::vector<Segment> segs(n);
  for (std::size_t t = 0; t < n; ++t) segs[t] = inst.segment(t);
  if (n == 0) return build_graph(0, std::vector<Edge>{});

  std::vector<Edge> edges;
  if (method == ConflictGraphMethod::naive) {
    edges = run_partitioned(n, threads, [&](std::size_t b, std::size_t e) {
      return naive_pairs(segs, b, e);
    });
  } else {
    std::vector<Box> boxes(n);
    for (std::size_t t = 0; t < n; ++t) boxes[t] = bounding_box(segs[t]);
    const UniformGrid grid(boxes);
    edges = run_partitioned(grid.cell_count(), threads, [&](std::size_t b, std::size_t e) {
      return grid.pairs(segs, b, e);
    });
  }
  // build_graph sorts, so the result is independent of worker interleaving
  return build_graph(n, edges);
}

}  // namespace confopt
