#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "confopt/geometry.hpp"
#include "confopt/graph.hpp"

namespace confopt {

/// Colors vertices in `order` with the smallest color absent from their
/// already-colored neighbors. Throws std::invalid_argument unless `order` is a
/// permutation of the vertices.
Coloring greedy_sequential(const Graph& g, std::span<const Vertex> order);

/// Decreasing degree, ties by increasing id.
std::vector<Vertex> welsh_powell_order(const Graph& g);

Coloring welsh_powell(const Graph& g);

/// DSATUR: highest saturation first, then highest degree, then smallest id.
Coloring dsatur(const Graph& g);

/// Recursive Largest First. Each class starts from the max residual-degree
/// vertex and grows by the candidate with most neighbors in the forbidden set
/// (ties by smallest id).
Coloring rlf(const Graph& g);

/// Segments sorted by supporting-line angle (ties by index), then greedy.
/// Throws std::invalid_argument if `g` does not have one vertex per segment.
Coloring orientation_greedy(const Instance& inst, const Graph& g);

enum class InitialColoring { greedy, welsh_powell, dsatur, rlf, orientation };

InitialColoring parse_initial_coloring(std::string_view name);
std::string_view to_string(InitialColoring kind);

/// Dispatch helper; `inst` is required for the orientation strategy.
Coloring initial_coloring(InitialColoring kind, const Graph& g, const Instance* inst = nullptr);

}  // namespace confopt
