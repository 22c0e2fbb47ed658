#include "confopt/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

namespace confopt {

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced_subgraph(std::span<const Vertex> keep) const {
  constexpr Vertex kDropped = static_cast<Vertex>(-1);
  std::vector<Vertex> new_id(vertex_count(), kDropped);
  for (std::size_t i = 0; i < keep.size(); ++i) new_id[keep[i]] = static_cast<Vertex>(i);

  Graph sub;
  sub.offsets_.assign(keep.size() + 1, 0);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    std::size_t d = 0;
    for (Vertex w : neighbors(keep[i])) d += new_id[w] != kDropped;
    sub.offsets_[i + 1] = sub.offsets_[i] + d;
  }
  sub.adjacency_.resize(sub.offsets_.back());
  std::size_t pos = 0;
  for (Vertex old : keep) {
    // keep is increasing, so mapped neighbor ids stay sorted
    for (Vertex w : neighbors(old)) {
      if (new_id[w] != kDropped) sub.adjacency_[pos++] = new_id[w];
    }
  }
  return sub;
}

Graph build_graph(std::size_t vertex_count, std::span<const Edge> edges) {
  std::vector<Edge> norm;
  norm.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw std::out_of_range("edge (" + std::to_string(u) + "," + std::to_string(v) +
                              ") references a vertex outside [0," +
                              std::to_string(vertex_count) + ")");
    }
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    norm.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(norm.begin(), norm.end());
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());

  Graph g;
  g.offsets_.assign(vertex_count + 1, 0);
  for (auto [u, v] : norm) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Lexicographic order of (u, v) with u < v fills every list in sorted
  // order: smaller neighbors arrive through the v side first.
  for (auto [u, v] : norm) g.adjacency_[fill[v]++] = u;
  for (auto [u, v] : norm) g.adjacency_[fill[u]++] = v;
  return g;
}

Coloring Coloring::from_colors(std::vector<Color> colors) {
  Coloring c;
  c.num_colors = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  c.colors = std::move(colors);
  return c;
}

bool Coloring::is_compact() const {
  std::vector<bool> used(static_cast<std::size_t>(std::max<Color>(num_colors, 0)), false);
  for (Color x : colors) {
    if (x < 0 || x >= num_colors) return false;
    used[static_cast<std::size_t>(x)] = true;
  }
  return std::all_of(used.begin(), used.end(), [](bool b) { return b; });
}

void Coloring::compact() {
  Color top = num_colors;
  for (Color x : colors) top = std::max(top, x + 1);
  std::vector<Color> relabel(static_cast<std::size_t>(top), kUncolored);
  for (Color x : colors) relabel[static_cast<std::size_t>(x)] = 0;
  Color next = 0;
  for (auto& r : relabel) {
    if (r == 0) r = next++;
  }
  for (Color& x : colors) x = relabel[static_cast<std::size_t>(x)];
  num_colors = next;
}

ValidityReport validate_coloring(const Graph& g, const Coloring& c) {
  if (c.colors.size() != g.vertex_count()) {
    throw std::invalid_argument("coloring has " + std::to_string(c.colors.size()) +
                                " entries for a graph of " +
                                std::to_string(g.vertex_count()) + " vertices");
  }
  for (Vertex v = 0; v < c.colors.size(); ++v) {
    if (c.colors[v] < 0 || c.colors[v] >= c.num_colors) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has color " +
                                  std::to_string(c.colors[v]) + " outside [0," +
                                  std::to_string(c.num_colors) + ")");
    }
  }
  ValidityReport report;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v && c.colors[u] == c.colors[v]) report.conflict_edges.emplace_back(u, v);
    }
  }
  report.valid = report.conflict_edges.empty();
  return report;
}

Reduction degeneracy_easy_vertices(const Graph& g, Color k) {
  if (k < 1) throw std::invalid_argument("degeneracy target k must be >= 1");
  const std::size_t n = g.vertex_count();
  const std::size_t limit = static_cast<std::size_t>(k) - 1;

  // Degrees only decrease, so once a vertex qualifies it stays qualified; a
  // single min-id heap of qualifying vertices is the whole bucket structure.
  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] <= limit) ready.push(v);
  }

  Reduction red;
  red.easy.target = k;
  while (!ready.empty()) {
    const Vertex v = ready.top();
    ready.pop();
    removed[v] = true;
    red.easy.order.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (removed[w]) continue;
      // push exactly when crossing the threshold
      if (degree[w]-- == limit + 1) ready.push(w);
    }
  }

  red.kept.reserve(n - red.easy.order.size());
  for (Vertex v = 0; v < n; ++v) {
    if (!removed[v]) red.kept.push_back(v);
  }
  red.reduced = g.induced_subgraph(red.kept);
  return red;
}

Coloring extend_coloring_to_easy(const Graph& g, const Coloring& partial,
                                 const Reduction& reduction) {
  const auto report = validate_coloring(reduction.reduced, partial);
  if (!report.valid) {
    throw std::invalid_argument("partial coloring of the reduced graph is not valid");
  }

  std::vector<Color> colors(g.vertex_count(), kUncolored);
  for (std::size_t i = 0; i < reduction.kept.size(); ++i) {
    colors[reduction.kept[i]] = partial.colors[i];
  }
  std::vector<std::uint32_t> seen_at;
  std::uint32_t stamp = 0;
  for (auto it = reduction.easy.order.rbegin(); it != reduction.easy.order.rend(); ++it) {
    const Vertex v = *it;
    ++stamp;
    if (seen_at.size() < g.degree(v) + 1) seen_at.resize(g.degree(v) + 1, 0);
    for (Vertex w : g.neighbors(v)) {
      const Color c = colors[w];
      if (c != kUncolored && static_cast<std::size_t>(c) < seen_at.size()) {
        seen_at[static_cast<std::size_t>(c)] = stamp;
      }
    }
    Color c = 0;
    while (seen_at[static_cast<std::size_t>(c)] == stamp) ++c;
    colors[v] = c;
  }

  Coloring out;
  out.colors = std::move(colors);
  out.num_colors = partial.num_colors;
  for (Color c : out.colors) out.num_colors = std::max(out.num_colors, c + 1);
  return out;
}

namespace {

class ColorabilitySearch {
 public:
  ColorabilitySearch(const Graph& g, Color k) : g_(g), k_(k), colors_(g.vertex_count(), kUncolored) {
    order_.resize(g.vertex_count());
    std::iota(order_.begin(), order_.end(), Vertex{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  }

  bool run() { return assign(0, 0); }

 private:
  bool assign(std::size_t pos, Color used) {
    if (pos == order_.size()) return true;
    const Vertex v = order_[pos];
    // colors are interchangeable, so only one fresh color needs trying
    const Color upper = std::min<Color>(k_, used + 1);
    for (Color c = 0; c < upper; ++c) {
      bool ok = true;
      for (Vertex w : g_.neighbors(v)) {
        if (colors_[w] == c) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      colors_[v] = c;
      if (assign(pos + 1, std::max(used, c + 1))) return true;
      colors_[v] = kUncolored;
    }
    return false;
  }

  const Graph& g_;
  Color k_;
  std::vector<Color> colors_;
  std::vector<Vertex> order_;
};

Color greedy_clique_bound(const Graph& g) {
  std::size_t best = g.vertex_count() > 0 ? 1 : 0;
  for (Vertex seed = 0; seed < g.vertex_count(); ++seed) {
    std::vector<Vertex> clique{seed};
    for (Vertex w : g.neighbors(seed)) {
      if (std::all_of(clique.begin(), clique.end(), [&](Vertex c) { return g.has_edge(c, w); })) {
        clique.push_back(w);
      }
    }
    best = std::max(best, clique.size());
  }
  return static_cast<Color>(best);
}

}  // namespace

Color exact_chromatic_number(const Graph& g) {
  if (g.vertex_count() > kExactChromaticLimit) {
    throw GraphTooLarge("exact_chromatic_number is limited to " +
                        std::to_string(kExactChromaticLimit) + " vertices, got " +
                        std::to_string(g.vertex_count()));
  }
  if (g.vertex_count() == 0) return 0;
  for (Color k = greedy_clique_bound(g);; ++k) {
    if (ColorabilitySearch(g, k).run()) return k;
  }
}

}  // namespace confopt
