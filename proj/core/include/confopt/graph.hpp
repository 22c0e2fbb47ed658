#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace confopt {

using Vertex = std::uint32_t;
using Color = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr Color kUncolored = -1;

/// Immutable undirected simple graph in compressed sparse row form.
///
/// Neighbor lists are sorted and duplicate-free; adjacency is symmetric.
/// Vertex ids are dense and 0-based.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;

  /// O(log deg(u)).
  bool has_edge(Vertex u, Vertex v) const;

  /// Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  /// Subgraph induced by `keep` (must be sorted, duplicate-free). Vertex i of
  /// the result corresponds to keep[i].
  Graph induced_subgraph(std::span<const Vertex> keep) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(std::size_t, std::span<const Edge>);

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

/// Collapses duplicate edges. Throws std::invalid_argument on a self-loop and
/// std::out_of_range on an id >= vertex_count.
Graph build_graph(std::size_t vertex_count, std::span<const Edge> edges);

inline Graph build_graph(std::size_t vertex_count, const std::vector<Edge>& edges) {
  return build_graph(vertex_count, std::span<const Edge>(edges));
}

inline Graph build_graph(std::size_t vertex_count, std::initializer_list<Edge> edges) {
  return build_graph(vertex_count, std::span<const Edge>(edges.begin(), edges.size()));
}

/// Assignment of color-class indices in [0, num_colors) to vertices.
struct Coloring {
  std::vector<Color> colors;
  Color num_colors = 0;

  /// num_colors is taken as max entry + 1.
  static Coloring from_colors(std::vector<Color> colors);

  std::size_t size() const { return colors.size(); }

  /// True when every class in [0, num_colors) holds at least one vertex.
  bool is_compact() const;

  /// Relabels classes so that no class is empty, preserving relative order.
  void compact();

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

struct ValidityReport {
  bool valid = true;
  std::vector<Edge> conflict_edges;
};

/// Reports every monochromatic edge. Throws std::invalid_argument when the
/// coloring length differs from the vertex count or an entry lies outside
/// [0, num_colors).
ValidityReport validate_coloring(const Graph& g, const Coloring& c);

/// Vertices removed by degeneracy peeling for a target color count.
struct EasyOrder {
  std::vector<Vertex> order;  // removal order
  Color target = 0;
};

struct Reduction {
  Graph reduced;
  std::vector<Vertex> kept;  // reduced id -> original id, increasing
  EasyOrder easy;
};

/// Repeatedly removes the smallest-id vertex whose remaining degree is at
/// most k - 1. Throws std::invalid_argument when k < 1.
Reduction degeneracy_easy_vertices(const Graph& g, Color k);

/// Colors the easy vertices greedily in reverse removal order on top of a
/// valid coloring of the reduced graph. Uses at most max(k, partial.num_colors)
/// colors. Throws std::invalid_argument if `partial` is not a valid coloring
/// of `reduction.reduced`.
Coloring extend_coloring_to_easy(const Graph& g, const Coloring& partial,
                                 const Reduction& reduction);

class GraphTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kExactChromaticLimit = 20;

/// Exact chromatic number by iterative deepening on k with a clique lower
/// bound. Meant as a test oracle; throws GraphTooLarge above 20 vertices.
Color exact_chromatic_number(const Graph& g);

}  // namespace confopt
