#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "confopt/config.hpp"
#include "confopt/detail/weights.hpp"
#include "confopt/graph.hpp"

namespace confopt {

/// A valid coloring of every vertex outside the conflict set S.
struct PartialState {
  std::vector<Color> class_of;            // kUncolored for vertices in S
  std::vector<std::uint32_t> class_size;  // one entry per class
  std::deque<Vertex> conflict_set;        // S, oldest first
  std::vector<std::uint8_t> in_conflict_set;
  std::vector<std::uint64_t> q;
  std::vector<std::uint8_t> pinned;

  Color num_classes() const { return static_cast<Color>(class_size.size()); }
  std::size_t vertex_count() const { return class_of.size(); }
  std::size_t colored_count() const;
};

struct PlaceOutcome {
  Color chosen = kUncolored;
  std::size_t uncolored = 0;  // neighbors pushed into S
  std::size_t recolored = 0;  // neighbors moved by BDFS
  bool restart = false;       // every class forbidden, or q_max crossed in abort mode
};

enum class EliminationStatus { solved, restart, abort };

/// Conflict optimizer over partial colorings. Steps:
///   1. remove_color_class() empties a class into S;
///   2. pop_conflict_vertex() picks v from S;
///   3. place_vertex(v) puts v into the cheapest class and uncolors (or
///      BDFS-recolors) its neighbors there;
///   4. run_elimination() repeats 2-3 until S is empty.
///
/// The engine borrows the graph and the random generator; both must outlive it.
class ConflictOptimizer {
 public:
  /// `start` must be a valid coloring of `g`. `pinned` may be empty or hold
  /// one flag per vertex. `q` may be empty or hold initial counters.
  ConflictOptimizer(const Graph& g, const OptimizerConfig& cfg, const Coloring& start,
                    std::mt19937_64& rng, std::span<const std::uint8_t> pinned = {},
                    std::span<const std::uint64_t> q = {});
  ConflictOptimizer(const ConflictOptimizer&) = delete;
  ConflictOptimizer& operator=(const ConflictOptimizer&) = delete;

  const PartialState& state() const { return state_; }
  const Graph& graph() const { return g_; }
  const OptimizerConfig& config() const { return cfg_; }
  std::optional<std::uint64_t> q_max() const { return q_max_; }

  /// Step 1. Returns the emptied class index (the former last class takes its
  /// index). Throws InfeasibleTarget when every class holds a pinned vertex
  /// and std::logic_error with fewer than two classes.
  Color remove_color_class(std::optional<VictimStrategy> override_strategy = std::nullopt);

  /// Step 2. Throws std::logic_error when S is empty.
  Vertex pop_conflict_vertex();

  /// Step 3 for a vertex that is uncolored and not in S. On a restart signal
  /// v is returned to S.
  PlaceOutcome place_vertex(Vertex v, std::optional<int> bdfs_depth = std::nullopt);

  /// Tries to move u (colored, or uncolored but not in S) into another class
  /// without uncoloring anything, recursing at most `depth` levels. The state
  /// is unchanged on failure.
  bool bdfs_recolor(Vertex u, int depth);

  /// Score for putting v into class j: f * sum of w(u) over neighbors u in
  /// class j. Draws f from the generator when noise is active.
  double score_class(Vertex v, Color j);

  /// Weight currently in force for u, including pinning and phase.
  double effective_weight(Vertex u) const;

  /// Steps 2-3 until S empties, the attempt must restart, or `clock` expires.
  EliminationStatus run_elimination(RunClock& clock);

  /// Uncolors v; with `enqueue` it joins S (and q may grow per policy).
  void uncolor(Vertex v, bool enqueue);

  /// Replaces the state with a valid coloring; S becomes empty, q is kept.
  void restore(const Coloring& c);

  /// Moves a random `fraction` of the unpinned vertices to random classes
  /// where they have no neighbor. Validity and class count are preserved.
  void shuffle(double fraction);

  void reset_q();

  /// Requires S empty. Empty classes are dropped.
  Coloring coloring() const;

  void set_conflict_phase(bool on) { conflict_phase_ = on; }
  bool conflict_phase() const { return conflict_phase_; }

  /// Called after every step-2/3 iteration inside run_elimination.
  void set_step_hook(std::function<void(const ConflictOptimizer&)> hook) { hook_ = std::move(hook); }

 private:
  void assign(Vertex v, Color c);
  void bump_q(Vertex u);
  double noise();
  double best_score_without_noise(Vertex v);
  void accumulate(Vertex v);
  bool try_move(Vertex x, int depth);
  void rollback(std::size_t mark);
  int depth_for(std::size_t queue_size) const;

  const Graph& g_;
  OptimizerConfig cfg_;
  std::mt19937_64& rng_;
  std::optional<std::uint64_t> q_max_;
  PartialState state_;
  detail::WeightTable weights_;
  bool conflict_phase_ = false;
  bool abort_triggered_ = false;

  // per-class scratch for accumulate()
  std::vector<double> acc_weight_;
  std::vector<std::uint32_t> acc_count_;
  std::vector<Color> touched_;

  // BDFS
  std::vector<std::pair<Vertex, Color>> move_log_;
  std::vector<std::uint8_t> locked_;
  std::uint64_t bdfs_nodes_ = 0;

  std::function<void(const ConflictOptimizer&)> hook_;
};

}  // namespace confopt
