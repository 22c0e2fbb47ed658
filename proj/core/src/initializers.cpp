#include "confopt/initializers.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace confopt {

Coloring greedy_sequential(const Graph& g, std::span<const Vertex> order) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) throw std::invalid_argument("greedy order is not a permutation");
  std::vector<bool> seen(n, false);
  for (Vertex v : order) {
    if (v >= n || seen[v]) throw std::invalid_argument("greedy order is not a permutation");
    seen[v] = true;
  }

  std::vector<Color> colors(n, kUncolored);
  std::vector<std::size_t> mark(g.max_degree() + 2, 0);
  std::size_t stamp = 0;
  Color used = 0;
  for (Vertex v : order) {
    ++stamp;
    for (Vertex w : g.neighbors(v)) {
      const Color c = colors[w];
      if (c != kUncolored && static_cast<std::size_t>(c) < mark.size()) mark[c] = stamp;
    }
    Color c = 0;
    while (mark[static_cast<std::size_t>(c)] == stamp) ++c;
    colors[v] = c;
    used = std::max(used, c + 1);
  }
  return {std::move(colors), used};
}

std::vector<Vertex> welsh_powell_order(const Graph& g) {
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  return order;
}

Coloring welsh_powell(const Graph& g) { return greedy_sequential(g, welsh_powell_order(g)); }

Coloring dsatur(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Color> colors(n, kUncolored);
  std::vector<std::vector<bool>> neighbor_colors(n);
  std::vector<std::size_t> saturation(n, 0);

  // (-saturation, -degree, id): begin() is the next vertex to color
  using Key = std::tuple<std::ptrdiff_t, std::ptrdiff_t, Vertex>;
  auto key = [&](Vertex v) {
    return Key{-static_cast<std::ptrdiff_t>(saturation[v]),
               -static_cast<std::ptrdiff_t>(g.degree(v)), v};
  };
  std::set<Key> queue;
  for (Vertex v = 0; v < n; ++v) queue.insert(key(v));

  Color used = 0;
  while (!queue.empty()) {
    const Vertex v = std::get<2>(*queue.begin());
    queue.erase(queue.begin());
    const auto& forbidden = neighbor_colors[v];
    Color c = 0;
    while (static_cast<std::size_t>(c) < forbidden.size() && forbidden[c]) ++c;
    colors[v] = c;
    used = std::max(used, c + 1);

    for (Vertex w : g.neighbors(v)) {
      if (colors[w] != kUncolored) continue;
      auto& seen = neighbor_colors[w];
      if (seen.size() <= static_cast<std::size_t>(c)) seen.resize(c + 1, false);
      if (seen[c]) continue;
      queue.erase(key(w));
      seen[c] = true;
      ++saturation[w];
      queue.insert(key(w));
    }
  }
  return {std::move(colors), used};
}

Coloring rlf(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Color> colors(n, kUncolored);
  std::vector<std::size_t> residual_degree(n);
  for (Vertex v = 0; v < n; ++v) residual_degree[v] = g.degree(v);

  enum class Slot : unsigned char { candidate, forbidden, taken };
  std::vector<Slot> slot(n);
  std::vector<std::size_t> forbidden_neighbors(n);
  std::vector<Vertex> uncolored(n);
  std::iota(uncolored.begin(), uncolored.end(), Vertex{0});

  Color color = 0;
  while (!uncolored.empty()) {
    for (Vertex v : uncolored) {
      slot[v] = Slot::candidate;
      forbidden_neighbors[v] = 0;
    }
    std::size_t candidates = uncolored.size();

    auto take = [&](Vertex v) {
      colors[v] = color;
      slot[v] = Slot::taken;
      --candidates;
      for (Vertex w : g.neighbors(v)) {
        if (colors[w] == kUncolored && slot[w] == Slot::candidate) {
          slot[w] = Slot::forbidden;
          --candidates;
          for (Vertex x : g.neighbors(w)) {
            if (colors[x] == kUncolored && slot[x] == Slot::candidate) ++forbidden_neighbors[x];
          }
        }
      }
    };

    // uncolored stays sorted by id, so strict comparisons keep the smallest id
    Vertex seed = uncolored.front();
    for (Vertex v : uncolored) {
      if (residual_degree[v] > residual_degree[seed]) seed = v;
    }
    take(seed);

    while (candidates > 0) {
      Vertex best = 0;
      bool found = false;
      for (Vertex v : uncolored) {
        if (slot[v] != Slot::candidate) continue;
        if (!found || forbidden_neighbors[v] > forbidden_neighbors[best]) {
          best = v;
          found = true;
        }
      }
      take(best);
    }

    std::vector<Vertex> rest;
    rest.reserve(uncolored.size());
    for (Vertex v : uncolored) {
      if (colors[v] == kUncolored) {
        rest.push_back(v);
      } else {
        for (Vertex w : g.neighbors(v)) --residual_degree[w];
      }
    }
    uncolored = std::move(rest);
    ++color;
  }
  return {std::move(colors), color};
}

Coloring orientation_greedy(const Instance& inst, const Graph& g) {
  if (inst.segment_count() != g.vertex_count()) {
    throw std::invalid_argument("graph has " + std::to_string(g.vertex_count()) +
                                " vertices but the instance has " +
                                std::to_string(inst.segment_count()) + " segments");
  }
  std::vector<double> angle(inst.segment_count());
  for (std::size_t t = 0; t < angle.size(); ++t) angle[t] = segment_angle(inst.segment(t));
  std::vector<Vertex> order(angle.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return angle[a] < angle[b]; });
  return greedy_sequential(g, order);
}

InitialColoring parse_initial_coloring(std::string_view name) {
  if (name == "greedy") return InitialColoring::greedy;
  if (name == "welsh-powell") return InitialColoring::welsh_powell;
  if (name == "dsatur") return InitialColoring::dsatur;
  if (name == "rlf") return InitialColoring::rlf;
  if (name == "orientation") return InitialColoring::orientation;
  throw std::invalid_argument("unknown initializer '" + std::string(name) + "'");
}

std::string_view to_string(InitialColoring kind) {
  switch (kind) {
    case InitialColoring::greedy: return "greedy";
    case InitialColoring::welsh_powell: return "welsh-powell";
    case InitialColoring::dsatur: return "dsatur";
    case InitialColoring::rlf: return "rlf";
    case InitialColoring::orientation: return "orientation";
  }
  return "?";
}

Coloring initial_coloring(InitialColoring kind, const Graph& g, const Instance* inst) {
  switch (kind) {
    case InitialColoring::greedy: {
      std::vector<Vertex> order(g.vertex_count());
      std::iota(order.begin(), order.end(), Vertex{0});
      return greedy_sequential(g, order);
    }
    case InitialColoring::welsh_powell: return welsh_powell(g);
    case InitialColoring::dsatur: return dsatur(g);
    case InitialColoring::rlf: return rlf(g);
    case InitialColoring::orientation:
      if (inst == nullptr) {
        throw std::invalid_argument("orientation initializer needs a geometric instance");
      }
      return orientation_greedy(*inst, g);
  }
  throw std::invalid_argument("unknown initializer");
}

}  // namespace confopt
