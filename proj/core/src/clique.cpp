#include "confopt/clique.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace confopt {

bool verify_clique(const Graph& g, const CliqueSet& c) {
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    if (c.vertices[i] >= g.vertex_count()) return false;
    for (std::size_t j = i + 1; j < c.vertices.size(); ++j) {
      if (!g.has_edge(c.vertices[i], c.vertices[j])) return false;
    }
  }
  return true;
}

CliqueSet greedy_clique(const Graph& g, std::mt19937_64& rng) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return {};
  const Vertex seed = static_cast<Vertex>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));

  // grow by the candidate keeping the most other candidates, ties at random;
  // large candidate sets use plain degree instead
  constexpr std::size_t kExactLinks = 256;
  CliqueSet c{{seed}};
  std::vector<Vertex> candidates(g.neighbors(seed).begin(), g.neighbors(seed).end());
  std::vector<Vertex> best;
  while (!candidates.empty()) {
    std::size_t best_links = 0;
    best.clear();
    for (Vertex a : candidates) {
      std::size_t links = g.degree(a);
      if (candidates.size() <= kExactLinks) {
        links = 0;
        for (Vertex b : candidates) links += a != b && g.has_edge(a, b);
      }
      if (best.empty() || links > best_links) {
        best.assign(1, a);
        best_links = links;
      } else if (links == best_links) {
        best.push_back(a);
      }
    }
    const Vertex pick = best[std::uniform_int_distribution<std::size_t>(0, best.size() - 1)(rng)];
    c.vertices.push_back(pick);
    std::erase_if(candidates, [&](Vertex w) { return w == pick || !g.has_edge(pick, w); });
  }
  std::sort(c.vertices.begin(), c.vertices.end());
  return c;
}

namespace {

class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, const CliqueSet& start)
      : g_(g), in_(g.vertex_count(), false), adj_(g.vertex_count(), 0),
        miss_sum_(g.vertex_count(), 0), mark_(g.vertex_count(), false) {
    for (Vertex v : start.vertices) add(v);
  }

  std::size_t size() const { return members_.size(); }
  CliqueSet snapshot() const {
    CliqueSet c{members_};
    std::sort(c.vertices.begin(), c.vertices.end());
    return c;
  }

  /// One move: an addition, a growing (1,2)-swap, or a plateau (1,1)-swap.
  /// Returns false when stuck.
  bool step(std::mt19937_64& rng) {
    const std::size_t k = members_.size();
    std::vector<Vertex> free;
    std::vector<std::vector<Vertex>> one_missing(g_.vertex_count());
    std::vector<Vertex> swap_targets;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (in_[v]) continue;
      if (adj_[v] == k) {
        free.push_back(v);
      } else if (adj_[v] + 1 == k) {
        const auto missing = static_cast<Vertex>(miss_sum_[v]);
        if (one_missing[missing].empty()) swap_targets.push_back(missing);
        one_missing[missing].push_back(v);
      }
    }
    if (!free.empty()) {
      add(*std::max_element(free.begin(), free.end(), [&](Vertex a, Vertex b) {
        return g_.degree(a) < g_.degree(b);
      }));
      return true;
    }
    for (Vertex out : swap_targets) {
      const auto& pool = one_missing[out];
      for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
          if (g_.has_edge(pool[i], pool[j])) {
            remove(out);
            add(pool[i]);
            add(pool[j]);
            return true;
          }
        }
      }
    }
    // plateau move, avoiding an immediate reversal
    std::vector<std::pair<Vertex, Vertex>> swaps;
    for (Vertex out : swap_targets) {
      for (Vertex in : one_missing[out]) {
        if (in != last_removed_) swaps.emplace_back(out, in);
      }
    }
    if (swaps.empty()) return false;
    const auto [out, in] = swaps[std::uniform_int_distribution<std::size_t>(0, swaps.size() - 1)(rng)];
    remove(out);
    add(in);
    last_removed_ = out;
    return true;
  }

 private:
  void add(Vertex c) {
    in_[c] = true;
    members_.push_back(c);
    update(c, +1);
  }

  void remove(Vertex c) {
    in_[c] = false;
    members_.erase(std::find(members_.begin(), members_.end(), c));
    update(c, -1);
  }

  void update(Vertex c, int sign) {
    for (Vertex w : g_.neighbors(c)) {
      adj_[w] += sign;
      mark_[w] = true;
    }
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (!mark_[v] && v != c) miss_sum_[v] += sign * static_cast<std::int64_t>(c);
    }
    for (Vertex w : g_.neighbors(c)) mark_[w] = false;
  }

  const Graph& g_;
  std::vector<bool> in_;
  std::vector<std::size_t> adj_;
  // sum of the ids of clique members not adjacent to v; names the single
  // missing member when exactly one is missing
  std::vector<std::int64_t> miss_sum_;
  std::vector<bool> mark_;
  std::vector<Vertex> members_;
  Vertex last_removed_ = static_cast<Vertex>(-1);
};

}  // namespace

CliqueSet improve_clique(const Graph& g, const CliqueSet& start, std::uint64_t max_moves,
                         std::mt19937_64& rng) {
  if (!verify_clique(g, start)) throw std::invalid_argument("improve_clique: input is not a clique");
  CliqueSearch search(g, start);
  CliqueSet best = search.snapshot();
  for (std::uint64_t move = 0; move < max_moves; ++move) {
    if (!search.step(rng)) break;
    if (search.size() > best.size()) best = search.snapshot();
  }
  return best;
}

CliqueSet best_clique(const Graph& g, const CliqueSearchOptions& opts) {
  using clock = std::chrono::steady_clock;
  const auto deadline = clock::now() + std::chrono::duration<double>(opts.time_limit_seconds);
  std::mt19937_64 rng(opts.seed);
  CliqueSet best;
  for (unsigned r = 0; r < std::max(1u, opts.restarts); ++r) {
    auto c = improve_clique(g, greedy_clique(g, rng), opts.moves_per_restart, rng);
    if (c.size() > best.size()) best = std::move(c);
    if (clock::now() >= deadline) break;
  }
  return best;
}

CliqueSet read_clique(std::istream& in) {
  CliqueSet c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line[first] == '-' || line[first] == '+') {
      throw std::invalid_argument("clique file line " + std::to_string(lineno) +
                                  ": expected a vertex id");
    }
    std::size_t used = 0;
    unsigned long long id = 0;
    try {
      id = std::stoull(line.substr(first), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("clique file line " + std::to_string(lineno) +
                                  ": expected a vertex id");
    }
    if (line.find_first_not_of(" \t\r", first + used) != std::string::npos) {
      throw std::invalid_argument("clique file line " + std::to_string(lineno) +
                                  ": trailing characters");
    }
    if (id > 0xffffffffULL) {
      throw std::invalid_argument("clique file line " + std::to_string(lineno) + ": id too large");
    }
    c.vertices.push_back(static_cast<Vertex>(id));
  }
  std::sort(c.vertices.begin(), c.vertices.end());
  c.vertices.erase(std::unique(c.vertices.begin(), c.vertices.end()), c.vertices.end());
  return c;
}

void write_clique(std::ostream& out, const CliqueSet& c) {
  for (Vertex v : c.vertices) out << v << '\n';
}

}  // namespace confopt
