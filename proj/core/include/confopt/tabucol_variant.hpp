#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "confopt/config.hpp"
#include "confopt/conflict_optimizer.hpp"
#include "confopt/detail/weights.hpp"
#include "confopt/graph.hpp"

namespace confopt {

/// TABUCOL-style neighborhood driven by conflict weights instead of a tabu
/// list: every vertex stays colored, monochromatic edges are allowed, and a
/// step moves one conflicting vertex to the class with the lowest weighted
/// conflict sum.
class TabucolVariant {
 public:
  TabucolVariant(const Graph& g, const OptimizerConfig& cfg, const Coloring& start,
                 std::mt19937_64& rng, std::span<const std::uint8_t> pinned = {},
                 std::span<const std::uint64_t> q = {});
  TabucolVariant(const TabucolVariant&) = delete;
  TabucolVariant& operator=(const TabucolVariant&) = delete;

  /// Drops a class and reassigns its vertices to the cheapest remaining
  /// classes. Same victim rules and errors as ConflictOptimizer.
  Color remove_color_class(std::optional<VictimStrategy> override_strategy = std::nullopt);

  /// One move. Returns false when no conflicting vertex can move (every other
  /// class holds a pinned neighbor) or q_max was crossed in abort mode.
  bool step();

  EliminationStatus run(RunClock& clock);

  std::size_t conflict_edge_count() const { return conflict_edges_; }
  std::size_t conflicting_vertex_count() const { return conflicting_.size(); }
  const std::vector<Color>& assignment() const { return class_of_; }
  const std::vector<std::uint64_t>& q() const { return q_; }
  Color num_classes() const { return static_cast<Color>(class_size_.size()); }
  const std::vector<std::uint8_t>& pinned() const { return pinned_; }

  void restore(const Coloring& c);
  void shuffle(double fraction);
  void reset_q() { weights_.reset(); }
  void set_conflict_phase(bool on) { conflict_phase_ = on; }

  /// Requires zero conflicts. Empty classes are dropped.
  Coloring coloring() const;

  void set_step_hook(std::function<void(const TabucolVariant&)> hook) { hook_ = std::move(hook); }

 private:
  double effective_weight(Vertex u) const;
  void rebuild_conflicts();
  void move(Vertex v, Color to);
  void refresh(Vertex v);
  Vertex select();
  Color best_class(Vertex v, bool with_noise, bool exclude_own);

  const Graph& g_;
  OptimizerConfig cfg_;
  std::mt19937_64& rng_;
  std::optional<std::uint64_t> q_max_;
  std::vector<Color> class_of_;
  std::vector<std::uint32_t> class_size_;
  std::vector<std::uint8_t> pinned_;
  std::vector<std::uint64_t> q_;
  detail::WeightTable weights_;
  bool conflict_phase_ = false;
  bool abort_triggered_ = false;

  std::vector<std::uint32_t> clash_;  // same-class neighbors
  std::size_t conflict_edges_ = 0;
  std::vector<Vertex> conflicting_;   // unpinned vertices with clash > 0
  std::vector<std::size_t> position_;
  std::deque<Vertex> fifo_;
  std::vector<std::uint8_t> in_fifo_;

  std::vector<double> acc_;

  std::function<void(const TabucolVariant&)> hook_;
};

}  // namespace confopt
