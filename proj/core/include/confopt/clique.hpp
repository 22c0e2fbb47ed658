#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "confopt/graph.hpp"

namespace confopt {

/// Vertex ids, sorted ascending.
struct CliqueSet {
  std::vector<Vertex> vertices;
  std::size_t size() const { return vertices.size(); }
};

bool verify_clique(const Graph& g, const CliqueSet& c);

/// Maximal clique grown from a random vertex, repeatedly adding the common
/// neighbor adjacent to most other common neighbors (ties broken at random).
CliqueSet greedy_clique(const Graph& g, std::mt19937_64& rng);

/// Swap-based local search: (1,2)-swaps that grow the clique, with random
/// (1,1)-plateau moves in between. Never returns a smaller clique.
/// Throws std::invalid_argument when `start` is not a clique.
CliqueSet improve_clique(const Graph& g, const CliqueSet& start, std::uint64_t max_moves,
                         std::mt19937_64& rng);

struct CliqueSearchOptions {
  std::uint64_t seed = 1;
  unsigned restarts = 32;
  std::uint64_t moves_per_restart = 2000;
  double time_limit_seconds = 10.0;
};

/// Best clique over several greedy restarts, each followed by improve_clique.
CliqueSet best_clique(const Graph& g, const CliqueSearchOptions& opts = {});

/// One vertex id per line; blank lines and '#' comments are skipped.
CliqueSet read_clique(std::istream& in);
void write_clique(std::ostream& out, const CliqueSet& c);

}  // namespace confopt
